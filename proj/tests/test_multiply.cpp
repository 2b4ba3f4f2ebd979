#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "recwidth/multiply.hpp"
#include "recwidth/oracle.hpp"
#include "recwidth/rng.hpp"
#include "recwidth/testgen.hpp"

using namespace recwidth;

namespace {

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

Vec fe(std::initializer_list<i64> v) {
    Vec r;
    for (i64 x : v) r.push_back(FieldElement(x));
    return r;
}

} // namespace

TEST_CASE("chebyshev frozen products") {
    RecurrenceSpec s = cheb_spec(4);
    DyadicTree tree = build_dyadic_tree(s);
    // column sums of the coefficient matrix
    Vec ones = fe({1, 1, 1, 1});
    CHECK(transpose_mult(s, tree, ones) == fe({0, -2, 2, 4}));
    // first column
    Vec e0 = fe({1, 0, 0, 0});
    CHECK(forward_mult(s, tree, e0) == fe({1, 0, -1, 0}));
    // the bilinear core against b = e_2 reads off h_{2,0}
    Vec e2 = fe({0, 0, 1, 0});
    std::vector<Poly> core = bilinear_core(s, tree, e2);
    REQUIRE(core.size() == 1);
    CHECK(core[0] == Poly{-1, 0, 2});
}

TEST_CASE("identity spec multiplies trivially") {
    // t = 1, g_{i,1} = 0, C = I via r = n: every row is its own seed
    const size_t n = 6;
    RecurrenceSpec s;
    s.rows = s.cols = n;
    s.t = 1;
    s.r = n;
    s.d = 1;
    s.dbar = 0;
    s.R = RDescriptor::shift(n);
    s.C = DenseMatrix::identity(n);
    s.D = DenseMatrix::identity(n);
    s.g.assign(n, {Poly::one(), Poly()});
    s.g[0] = {Poly::one()};
    validate_spec(s);
    DyadicTree tree = build_dyadic_tree(s);
    SplitMix64 rng(3);
    Vec b = gen_vec(n, rng);
    CHECK(transpose_mult(s, tree, b) == b);
    CHECK(forward_mult(s, tree, b) == b);
}

TEST_CASE("batched transpose products share the sweep") {
    RecurrenceSpec s = cheb_spec(8);
    DyadicTree tree = build_dyadic_tree(s);
    DenseMatrix B = DenseMatrix::identity(8);
    DenseMatrix got = transpose_mult_batched(s, tree, B);
    DenseMatrix a = dense_from_spec(s);
    // columns of the batch are A^T e_j, i.e. the result is A^T
    CHECK(got == mat_transpose(a));
    // non-square batch
    SplitMix64 rng(9);
    DenseMatrix B2(8, 3);
    for (size_t i = 0; i < 8; ++i)
        for (size_t j = 0; j < 3; ++j) B2.at(i, j) = rng.field_element();
    DenseMatrix got2 = transpose_mult_batched(s, tree, B2);
    REQUIRE(got2.rows == 8);
    REQUIRE(got2.cols == 3);
    for (size_t j = 0; j < 3; ++j) {
        Vec col(8);
        for (size_t i = 0; i < 8; ++i) col[i] = B2.at(i, j);
        Vec want = transpose_mult(s, tree, col);
        for (size_t i = 0; i < 8; ++i) CHECK(got2.at(i, j) == want[i]);
    }
}

TEST_CASE("products match the dense oracle across kinds and scales") {
    SplitMix64 seeder(2024);
    for (RKind k : {RKind::Shift, RKind::Companion, RKind::Diagonal,
                    RKind::Band, RKind::Quasi}) {
        for (size_t n : {5, 16, 33}) {
            for (bool hard : {false, true}) {
                SplitMix64 rng(seeder.next());
                RecurrenceSpec s = gen_spec(k, n, 2, 2, hard, rng);
                validate_spec(s);
                DenseMatrix a = dense_from_spec(s);
                DyadicTree tree = build_dyadic_tree(s);
                Vec b = gen_vec(n, rng);
                CHECK(transpose_mult(s, tree, b) == mat_transpose_vec(a, b));
                CHECK(forward_mult(s, tree, b) == mat_vec(a, b));
            }
        }
    }
}

TEST_CASE("rectangular specs: more rows than columns") {
    SplitMix64 rng(15);
    RecurrenceSpec s = gen_spec(RKind::Shift, 12, 2, 1, false, rng);
    s.rows = 20; // generate extra rows past the column count
    s.g.resize(20);
    for (size_t i = 12; i < 20; ++i)
        s.g[i] = {Poly::one(), Poly{1, 1}, Poly{3}};
    DenseMatrix c2(20, 1);
    for (size_t i = 0; i < 12; ++i) c2.at(i, 0) = s.C.at(i, 0);
    s.C = c2;
    validate_spec(s);
    DenseMatrix a = dense_from_spec(s);
    DyadicTree tree = build_dyadic_tree(s);
    Vec b = gen_vec(20, rng);
    CHECK(transpose_mult(s, tree, b) == mat_transpose_vec(a, b));
    Vec bf = gen_vec(12, rng);
    CHECK(forward_mult(s, tree, bf) == mat_vec(a, bf));
}

TEST_CASE("scaled leading coefficients sharing modulus roots are rejected") {
    RecurrenceSpec s = cheb_spec(8);
    s.dbar = 1;
    for (size_t i = 0; i < 8; ++i) s.g[i][0] = Poly::monomial(1); // g_{i,0} = X
    CHECK_THROWS_WITH(validate_spec(s),
                      "leading coefficients share roots with modulus");
    DyadicTree tree = build_dyadic_tree(s);
    Vec b(8, FieldElement(1));
    CHECK_THROWS_WITH((void)transpose_mult(s, tree, b),
                      "leading coefficients share roots with modulus");
}
