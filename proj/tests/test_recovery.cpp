#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "recwidth/oracle.hpp"
#include "recwidth/recovery.hpp"
#include "recwidth/rng.hpp"
#include "recwidth/testgen.hpp"

using namespace recwidth;

TEST_CASE("round trip on recurrent matrices") {
    SplitMix64 seeder(812);
    for (size_t n : {8, 21, 48}) {
        for (size_t t : {1, 2, 3}) {
            if (n <= t * (t + 3) / 2) continue;
            SplitMix64 rng(seeder.next());
            RecurrenceSpec src = gen_solve_spec(n, t, rng);
            DenseMatrix a = dense_from_spec(src);
            FitReport rep = recover_recurrence(a, t);
            REQUIRE(rep.success);
            for (auto ok : rep.row_ok) CHECK(ok == 1);
            CHECK(dense_from_spec(rep.spec) == a);
            CHECK(rep.spec.t == t);
            CHECK(rep.spec.R.kind == RKind::Shift);
        }
    }
}

TEST_CASE("chebyshev rows are recovered with width two") {
    const size_t n = 12;
    DenseMatrix a(n, n);
    // T_0 = 1, T_1 = X, T_i = 2X T_{i-1} - T_{i-2}
    a.at(0, 0) = FieldElement(1);
    a.at(1, 1) = FieldElement(1);
    for (size_t i = 2; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            FieldElement v = j > 0 ? FieldElement(2) * a.at(i - 1, j - 1)
                                   : FieldElement(0);
            a.at(i, j) = v - a.at(i - 2, j);
        }
    FitReport rep = recover_recurrence(a, 2);
    REQUIRE(rep.success);
    CHECK(dense_from_spec(rep.spec) == a);
}

TEST_CASE("non-recurrent rows are flagged") {
    SplitMix64 rng(99);
    RecurrenceSpec src = gen_solve_spec(16, 1, rng);
    DenseMatrix a = dense_from_spec(src);
    // scramble one interior row beyond any width-1 fit: a width-1 relation
    // a_i = g(X) a_{i-1} with deg g <= 1 has 2 unknowns and 16 equations
    for (size_t j = 0; j < 16; ++j) a.at(9, j) = rng.field_element();
    FitReport rep = recover_recurrence(a, 1);
    CHECK(!rep.success);
    CHECK(rep.row_ok[9] == 0);
    // the break also dooms the following row's fit against the scrambled one
    size_t bad = 0;
    for (auto ok : rep.row_ok) bad += ok == 0;
    CHECK(bad >= 1);
    for (size_t i = 1; i < 9; ++i) CHECK(rep.row_ok[i] == 1);
}

TEST_CASE("input validation") {
    DenseMatrix tiny(4, 4);
    CHECK_THROWS_WITH((void)recover_recurrence(tiny, 2),
                      "insufficient constraints");
    DenseMatrix a(8, 8);
    for (size_t i = 0; i < 8; ++i)
        for (size_t j = 0; j < 8; ++j) a.at(i, j) = FieldElement(i64(i + j + 1));
    // seed row 0 has entries beyond column 0
    CHECK_THROWS_WITH((void)recover_recurrence(a, 2),
                      "recovery requires triangular seed rows");
}

TEST_CASE("recovered spec reuses the leading rows as seeds") {
    SplitMix64 rng(3);
    RecurrenceSpec src = gen_solve_spec(10, 2, rng);
    DenseMatrix a = dense_from_spec(src);
    FitReport rep = recover_recurrence(a, 2);
    REQUIRE(rep.success);
    // D carries the first t rows verbatim
    for (size_t u = 0; u < 2; ++u)
        for (size_t j = 0; j < 10; ++j)
            CHECK(rep.spec.D.at(u, j) == a.at(u, j));
}
