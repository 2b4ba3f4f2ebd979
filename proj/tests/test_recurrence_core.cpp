#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "recwidth/oracle.hpp"
#include "recwidth/recurrence.hpp"
#include "recwidth/rng.hpp"
#include "recwidth/testgen.hpp"

using namespace recwidth;

namespace {

// Chebyshev coefficient rows over the plain shift: a_0 = 1, a_1 = X a_0,
// a_i = 2X a_{i-1} - a_{i-2}
RecurrenceSpec cheb_spec(size_t n) {
    RecurrenceSpec s;
    s.rows = s.cols = n;
    s.t = 2;
    s.r = 1;
    s.d = 1;
    s.dbar = 0;
    s.R = RDescriptor::shift(n);
    s.C = DenseMatrix(n, 1);
    s.C.at(0, 0) = FieldElement(1);
    s.D = DenseMatrix(1, n);
    s.D.at(0, 0) = FieldElement(1);
    s.g.resize(n);
    s.g[0] = {Poly::one()};
    if (n > 1) s.g[1] = {Poly::one(), Poly::monomial(1)};
    for (size_t i = 2; i < n; ++i)
        s.g[i] = {Poly::one(), Poly::monomial(1, FieldElement(2)), Poly{-1}};
    return s;
}

} // namespace

TEST_CASE("band and descriptor dense forms") {
    BandMatrix b;
    b.n = 3;
    b.delta = 1;
    b.lower = true;
    b.diags = {{FieldElement(1), FieldElement(2), FieldElement(3)},
               {FieldElement(4), FieldElement(5)}};
    DenseMatrix d = band_to_dense(b);
    CHECK(d.at(0, 0).value == 1u);
    CHECK(d.at(1, 0).value == 4u);
    CHECK(d.at(2, 1).value == 5u);
    CHECK(d.at(0, 1).is_zero());
    DenseMatrix dt = band_to_dense(band_transpose(b));
    CHECK(dt == mat_transpose(d));

    RDescriptor shift = RDescriptor::shift(3);
    DenseMatrix sd = r_to_dense(shift);
    // multiplication by X: entry (i+1, i) = 1
    CHECK(sd.at(1, 0).value == 1u);
    CHECK(sd.at(0, 0).is_zero());
    Vec e0 = {FieldElement(1), FieldElement(0), FieldElement(0)};
    Vec r = r_apply(shift, e0);
    CHECK(r[1].value == 1u);

    RDescriptor comp = RDescriptor::companion(Poly{2, 3, 1}); // X^2+3X+2
    CHECK(r_has_modulus(comp));
    CHECK(r_modulus(comp) == Poly{2, 3, 1});
    CHECK(r_has_modulus(shift));
    CHECK(r_modulus(shift) == Poly::monomial(3));
    RDescriptor diag = RDescriptor::diagonal({FieldElement(5), FieldElement(6)});
    CHECK(!r_has_modulus(diag));
}

TEST_CASE("transpose of each descriptor kind") {
    SplitMix64 rng(5);
    for (RKind k : {RKind::Shift, RKind::Companion, RKind::Diagonal,
                    RKind::Band, RKind::Quasi}) {
        RDescriptor R = gen_descriptor(k, 8, rng);
        CHECK(r_to_dense(r_transpose(R)) == mat_transpose(r_to_dense(R)));
        // r_apply agrees with the dense action
        Vec x = gen_vec(8, rng);
        CHECK(r_apply(R, x) == mat_vec(r_to_dense(R), x));
    }
}

TEST_CASE("spec validation rejects malformed input") {
    RecurrenceSpec s = cheb_spec(8);
    validate_spec(s); // well-formed
    RecurrenceSpec bad = s;
    bad.g[3][1] = Poly{0, 0, 7}; // degree 2 > d*1 + dbar
    CHECK_THROWS_AS(validate_spec(bad), std::invalid_argument);
    RecurrenceSpec bad2 = s;
    bad2.g[3][0] = Poly(); // zero leading coefficient
    CHECK_THROWS_AS(validate_spec(bad2), std::exception);
    RecurrenceSpec bad3 = s;
    bad3.C = DenseMatrix(3, 1); // wrong shape
    CHECK_THROWS_AS(validate_spec(bad3), std::invalid_argument);
    // leading coefficient sharing a root with the modulus: g_{i,0} = X over X^n
    RecurrenceSpec bad4 = s;
    bad4.dbar = 1;
    bad4.g[3][0] = Poly::monomial(1);
    CHECK_THROWS_WITH(validate_spec(bad4),
                      "leading coefficients share roots with modulus");
}

TEST_CASE("phantom rows pad the recurrence") {
    RecurrenceSpec s = cheb_spec(4);
    CHECK(s.lead_coeff(9) == Poly::one());
    CHECK(s.coeff(9, 1).is_zero());
    CHECK(s.c_entry(9, 0).is_zero());
    TransitionMatrix tp = transition(s, 9);
    CHECK(tp.at(0, 1) == Poly::one());
    CHECK(tp.at(1, 0).is_zero());
    CHECK(tp.at(1, 1).is_zero());
}

TEST_CASE("chebyshev transitions and dyadic tree") {
    RecurrenceSpec s = cheb_spec(8);
    // single-step transition: shift row + (g_{i,2}, g_{i,1})
    TransitionMatrix t2 = transition(s, 2);
    CHECK(t2.at(0, 0).is_zero());
    CHECK(t2.at(0, 1) == Poly::one());
    CHECK(t2.at(1, 0) == Poly{-1});
    CHECK(t2.at(1, 1) == Poly::monomial(1, FieldElement(2)));

    DyadicTree tree = build_dyadic_tree(s);
    CHECK(tree.m == 8);
    CHECK(tree.t == 2);
    CHECK(tree.levels() == 4);
    // node [2:4) = T_3 T_2
    PolyMat p = tree.T[1][1];
    CHECK(p.at(0, 0) == Poly{-1});
    CHECK(p.at(0, 1) == Poly{0, 2});
    CHECK(p.at(1, 0) == Poly{0, -2});
    CHECK(p.at(1, 1) == Poly{-1, 0, 4});
    // every node equals the product of its children
    for (size_t lvl = 1; lvl < tree.levels(); ++lvl)
        for (size_t b = 0; b < tree.T[lvl].size(); ++b) {
            PolyMat prod =
                pm_mul(tree.T[lvl - 1][2 * b + 1], tree.T[lvl - 1][2 * b]);
            for (size_t i = 0; i < tree.t; ++i)
                for (size_t j = 0; j < tree.t; ++j)
                    CHECK(prod.at(i, j) == tree.T[lvl][b].at(i, j));
        }
    // unit leading coefficients make all scale products 1
    CHECK(ranged_scale(tree, 0, 8) == Poly::one());
}

TEST_CASE("ranged transitions against direct products") {
    SplitMix64 rng(77);
    RecurrenceSpec s = gen_spec(RKind::Companion, 16, 3, 2, true, rng);
    DyadicTree tree = build_dyadic_tree(s);
    for (auto [lo, hi] : {std::pair<size_t, size_t>{0, 16},
                          {3, 11},
                          {5, 6},
                          {7, 7},
                          {1, 16}}) {
        PolyMat direct = PolyMat::identity(tree.t);
        for (size_t p = lo; p < hi; ++p)
            direct = pm_mul(transition(s, p + 1), direct);
        PolyMat ranged = ranged_transition(tree, lo, hi);
        for (size_t i = 0; i < tree.t; ++i)
            for (size_t j = 0; j < tree.t; ++j)
                CHECK(ranged.at(i, j) == direct.at(i, j));
        Poly sc = Poly::one();
        for (size_t p = lo; p < hi; ++p) sc = poly_mul(sc, s.lead_coeff(p));
        CHECK(ranged_scale(tree, lo, hi) == sc);
    }
    CHECK_THROWS_WITH((void)ranged_transition(tree, 2, 17),
                      "transition range out of bounds");
}

TEST_CASE("structure entries invert the recurrence") {
    RecurrenceSpec s = cheb_spec(4);
    DyadicTree tree = build_dyadic_tree(s);
    // a_2 = (2X^2 - 1) a_0 and f_0 = 1, so h_{2,0} = -1 + 2X^2
    CHECK(structure_entry(s, tree, 2, 0) == Poly{-1, 0, 2});
    CHECK(structure_entry(s, tree, 1, 1) == Poly::one());
    CHECK(structure_entry(s, tree, 3, 3) == Poly::one());
    CHECK(structure_entry(s, tree, 0, 3).is_zero());

    // rows of the dense matrix are sums h_{i,j}(R) f_j
    DenseMatrix a = dense_from_spec(s);
    CHECK(a.at(0, 0).value == 1u);
    CHECK(a.at(2, 0) == FieldElement(-1));
    CHECK(a.at(2, 2).value == 2u);
    CHECK(a.at(3, 1) == FieldElement(-3));
    CHECK(a.at(3, 3).value == 4u);
}

TEST_CASE("polymat algebra") {
    PolyMat a(2, 2), b(2, 2);
    a.at(0, 0) = Poly{1};
    a.at(0, 1) = Poly{0, 1};
    a.at(1, 1) = Poly{2};
    b.at(0, 0) = Poly{0, 3};
    b.at(1, 0) = Poly{1};
    PolyMat ab = pm_mul(a, b);
    CHECK(ab.at(0, 0) == Poly{0, 4}); // 3X + X
    CHECK(ab.at(1, 0) == Poly{2});
    PolyMat sum = pm_add(a, b);
    CHECK(sum.at(0, 0) == Poly{1, 3});
    PolyMat sc = pm_scale(a, Poly{0, 0, 5});
    CHECK(sc.at(1, 1) == Poly{0, 0, 10});
    PolyMat id = PolyMat::identity(3);
    CHECK(id.at(2, 2) == Poly::one());
    CHECK(id.at(0, 1).is_zero());
}
