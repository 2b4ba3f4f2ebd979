#pragma once
#include <climits>
#include <string>

#include "recwidth/field.hpp"

namespace recwidth {

// Dense univariate polynomial over the field. coeffs[i] is the X^i
// coefficient; canonical form has no trailing zeros and the zero polynomial
// is the empty vector with degree sentinel kNegInfDeg (never used in
// arithmetic).
struct Poly {
    static constexpr int kNegInfDeg = INT_MIN / 2;

    Vec c;

    Poly() = default;
    explicit Poly(Vec coeffs) : c(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<i64> v) {
        c.reserve(v.size());
        for (i64 x : v) c.push_back(FieldElement(x));
        trim();
    }

    static Poly one() { return constant(1); }
    static Poly constant(FieldElement v) {
        Poly p;
        if (!v.is_zero()) p.c.assign(1, v);
        return p;
    }
    // X^k
    static Poly monomial(size_t k, FieldElement v = FieldElement(1));

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return c.empty() ? kNegInfDeg : (int)c.size() - 1; }
    FieldElement at(size_t i) const {
        return i < c.size() ? c[i] : FieldElement(0);
    }
    FieldElement lead() const {
        if (c.empty()) throw std::runtime_error("leading coefficient of zero polynomial");
        return c.back();
    }
    bool operator==(const Poly& o) const { return c == o.c; }

    FieldElement eval(FieldElement x) const; // Horner
};

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_sub(const Poly& p, const Poly& q);
Poly poly_scale(const Poly& p, FieldElement s);
Poly poly_mul(const Poly& p, const Poly& q);
// p mod X^k
Poly poly_trunc(const Poly& p, size_t k);
// floor(p / X^k)
Poly poly_shift_down(const Poly& p, size_t k);
// p * X^k
Poly poly_shift_up(const Poly& p, size_t k);
// reversal with window n: sum_i p[i] X^(n-1-i); requires deg(p) < n
Poly poly_rev(const Poly& p, size_t n);

// quotient + remainder by a nonzero divisor (normalized internally if not monic)
struct DivRem {
    Poly quot, rem;
};
DivRem poly_divrem(const Poly& p, const Poly& m);
Poly poly_rem(const Poly& p, const Poly& m);

// inverse power series: q with p*q = 1 mod X^k (requires p(0) != 0)
Poly poly_series_inv(const Poly& p, size_t k);
// q with p*q = 1 mod m; Newton when m = X^k, extended Euclid otherwise
Poly poly_inv_mod(const Poly& p, const Poly& m);
Poly poly_gcd(Poly a, Poly b); // monic gcd, internal helper

// Subproduct tree over evaluation points; level 0 holds the linear factors
// (X - z_i), each parent is the product of its two children, padded with
// constant-1 nodes to a power of two.
struct EvalTree {
    Vec points;
    size_t size = 0;   // number of real points
    size_t width = 0;  // padded leaf count (power of two)
    // nodes[level][j]; level 0 = leaves, top level has one node
    std::vector<std::vector<Poly>> nodes;

    const Poly& root() const { return nodes.back()[0]; }
};

EvalTree build_eval_tree(const Vec& points);
Vec multipoint_eval(const Poly& p, const EvalTree& tree);
// K(diag z, y)^T x truncated to length n: coefficients of
// sum_i x_i y_i / (1 - z_i X) mod X^n, via fraction summation up the tree.
Poly transposed_eval(const Vec& x, const Vec& y, const EvalTree& tree, size_t n);
// interpolation through (points[i], values[i]); O(n^2) helper for small n
Poly lagrange_interpolate(const Vec& points, const Vec& values);

} // namespace recwidth
