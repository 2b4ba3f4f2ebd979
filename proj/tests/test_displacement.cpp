#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "recwidth/displacement.hpp"
#include "recwidth/krylov.hpp"
#include "recwidth/oracle.hpp"
#include "recwidth/rng.hpp"
#include "recwidth/testgen.hpp"

using namespace recwidth;

namespace {

Vec fe(std::initializer_list<i64> v) {
    Vec r;
    for (i64 x : v) r.push_back(FieldElement(x));
    return r;
}

DisplacementRep cauchy_rep(const Vec& s, const Vec& u) {
    DisplacementRep rep;
    rep.op = DispOp::Sylvester;
    rep.L = RDescriptor::diagonal(s);
    rep.R = RDescriptor::diagonal(u);
    rep.C = DenseMatrix(s.size(), 1);
    rep.D = DenseMatrix(1, u.size());
    for (size_t i = 0; i < s.size(); ++i) rep.C.at(i, 0) = FieldElement(1);
    for (size_t j = 0; j < u.size(); ++j) rep.D.at(0, j) = FieldElement(1);
    return rep;
}

DenseMatrix disp_residual(const DisplacementRep& rep, const DenseMatrix& a) {
    DenseMatrix l = r_to_dense(rep.L), r = r_to_dense(rep.R);
    DenseMatrix lhs = rep.op == DispOp::Sylvester
                          ? mat_sub(mat_mul(l, a), mat_mul(a, r))
                          : mat_sub(a, mat_mul(l, mat_mul(a, r)));
    return mat_sub(lhs, mat_mul(rep.C, rep.D));
}

bool is_zero_matrix(const DenseMatrix& m) {
    for (auto v : m.a)
        if (!v.is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("cauchy matrix from its sylvester generators") {
    Vec s = fe({3, 4}), u = fe({1, 2});
    DisplacementRep rep = cauchy_rep(s, u);
    check_displacement_unique(rep);
    DenseMatrix a = dense_from_displacement(rep);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            CHECK(a.at(i, j) == (s[i] - u[j]).inv());
    CHECK(is_zero_matrix(disp_residual(rep, a)));
    Vec b = fe({1, 5});
    CHECK(disp_mult(rep, b, false) == mat_vec(a, b));
    CHECK(disp_mult(rep, b, true) == mat_transpose_vec(a, b));
}

TEST_CASE("uniqueness check rejects shared spectra") {
    DisplacementRep rep = cauchy_rep(fe({1, 4}), fe({1, 2}));
    CHECK_THROWS_WITH(check_displacement_unique(rep),
                      "displacement operator not invertible");
    // Stein: reciprocal eigenvalue pair 2 * inv(2) = 1
    DisplacementRep st = cauchy_rep(fe({2, 3}), fe({(i64)((998244353ull + 1) / 2), 5}));
    st.op = DispOp::Stein;
    CHECK_THROWS_WITH(check_displacement_unique(st),
                      "displacement operator not invertible");
}

TEST_CASE("displacement to recurrence round trips through the oracle") {
    SplitMix64 rng(88);
    for (RKind lk : {RKind::Band, RKind::Diagonal}) {
        DisplacementRep rep =
            gen_displacement(DispOp::Sylvester, lk, RKind::Shift, 12, 2, rng);
        RecurrenceSpec spec = displacement_to_recurrence(rep);
        validate_spec(spec);
        DenseMatrix a = dense_from_displacement(rep);
        DenseMatrix g = dense_from_spec(spec);
        // an upper band L generates the row-reversed matrix
        bool flipped = rep.L.kind == RKind::Band && !rep.L.band.lower;
        for (size_t i = 0; i < 12; ++i)
            for (size_t j = 0; j < 12; ++j)
                CHECK(g.at(flipped ? 11 - i : i, j) == a.at(i, j));
    }
    DisplacementRep bad = cauchy_rep(fe({1, 2}), fe({3, 4}));
    bad.L = RDescriptor::shift(2);
    CHECK_THROWS_AS((void)displacement_to_recurrence(bad),
                    std::invalid_argument);
}

TEST_CASE("products match the dense matrix for all operator pairs") {
    SplitMix64 seeder(4040);
    for (DispOp op : {DispOp::Sylvester, DispOp::Stein})
        for (RKind lk : {RKind::Band, RKind::Diagonal, RKind::Quasi})
            for (RKind rk : {RKind::Shift, RKind::Companion, RKind::Diagonal,
                             RKind::Band, RKind::Quasi}) {
                SplitMix64 rng(seeder.next());
                size_t n = 6 + rng.below(11);
                DisplacementRep rep = gen_displacement(op, lk, rk, n, 2, rng);
                DenseMatrix a = dense_from_displacement(rep);
                CHECK(is_zero_matrix(disp_residual(rep, a)));
                Vec b = gen_vec(n, rng), c = gen_vec(n, rng);
                CHECK(disp_mult(rep, b, false) == mat_vec(a, b));
                CHECK(disp_mult(rep, c, true) == mat_transpose_vec(a, c));
            }
}

TEST_CASE("transposed representation") {
    SplitMix64 rng(11);
    DisplacementRep rep =
        gen_displacement(DispOp::Sylvester, RKind::Quasi, RKind::Band, 9, 2, rng);
    DisplacementRep tr = transpose_rep(rep);
    DenseMatrix a = dense_from_displacement(rep);
    DenseMatrix at = dense_from_displacement(tr);
    CHECK(at == mat_transpose(a));
}

TEST_CASE("resolvent of a diagonal embedded as quasiseparable") {
    // sum 1/(X - 1) + 1/(X - 2) = (2X - 3) / ((X-1)(X-2))
    DenseMatrix d(2, 2);
    d.at(0, 0) = FieldElement(1);
    d.at(1, 1) = FieldElement(2);
    QuasiPtr q = quasisep_from_dense(d, 1);
    DenseMatrix b(2, 1), c(2, 1);
    b.at(0, 0) = b.at(1, 0) = FieldElement(1);
    c.at(0, 0) = c.at(1, 0) = FieldElement(1);
    Resolvent res = resolvent(b, *q, c);
    CHECK(res.den == Poly{2, -3, 1});
    REQUIRE(res.num.rows == 1);
    REQUIRE(res.num.cols == 1);
    CHECK(res.num.at(0, 0) == Poly{-3, 2});
}

TEST_CASE("resolvent against dense solves at random points") {
    SplitMix64 rng(909);
    for (size_t ord : {1, 2}) {
        const size_t n = 17;
        QuasiPtr q = gen_quasisep(n, ord, rng);
        DenseMatrix rd = quasisep_to_dense(*q);
        DenseMatrix b(n, 2), c(n, 1);
        for (size_t i = 0; i < n; ++i) {
            b.at(i, 0) = rng.field_element();
            b.at(i, 1) = rng.field_element();
            c.at(i, 0) = rng.field_element();
        }
        Resolvent res = resolvent(b, *q, c);
        CHECK(res.den == char_poly(RDescriptor::quasisep(q)));
        for (int trial = 0; trial < 8; ++trial) {
            FieldElement xi = rng.field_element();
            if (res.den.eval(xi).is_zero()) continue;
            // (xi I - R) w = c, value = b^T w
            DenseMatrix m(n, n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    m.at(i, j) = (i == j ? xi : FieldElement(0)) - rd.at(i, j);
            Vec rhs(n);
            for (size_t i = 0; i < n; ++i) rhs[i] = c.at(i, 0);
            Vec w = gauss_solve(m, rhs);
            for (size_t row = 0; row < 2; ++row) {
                Vec bb(n);
                for (size_t i = 0; i < n; ++i) bb[i] = b.at(i, row);
                FieldElement want = dot(bb, w) * res.den.eval(xi);
                CHECK(res.num.at(row, 0).eval(xi) == want);
            }
        }
    }
}
