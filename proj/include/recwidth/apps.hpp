#pragma once
#include "recwidth/recurrence.hpp"

namespace recwidth {

// Three-term family p_0 = 1, p_1 = (alpha[1] X + beta[1]) p_0,
// p_i = (alpha[i] X + beta[i]) p_{i-1} + gamma[i] p_{i-2}, sampled at the
// given points (alpha/beta/gamma are indexed by row; index 0 is unused).
struct OrthoFamily {
    Vec alpha;
    Vec beta;
    Vec gamma;
    Vec points;
};

OrthoFamily chebyshev_family(Vec points);

// width-(2) recurrence spec over the diagonal of the sample points whose
// rows are (p_i(z_0), ..., p_i(z_{n-1}))
RecurrenceSpec ortho_spec(const OrthoFamily& family);

// forward = true: synthesis A b (values of sum_i b_i p_i at the points);
// forward = false: projection A^T b. Repeated points are rejected.
Vec orthogonal_transform(const OrthoFamily& family, const Vec& b,
                         bool forward);

// W x (transposed = false) or W^T x for the n x n matrix of Stirling
// numbers of the second kind W[i, j] = {i brace j}
Vec stirling_apply(size_t n, const Vec& x, bool transposed);

// first n Bernoulli numbers B_0..B_{n-1} as field residues
Vec bernoulli_numbers(size_t n);

// Spec over X^{d^2} whose row i lists the d x d monomial values
// (1, x_i, ..., x_i^{d-1}, y_i, y_i x_i, ...) of the i-th sample point;
// needs d^2 points with nonzero coordinates ("zero coordinate").
RecurrenceSpec bivariate_eval_spec(const Vec& xs, const Vec& ys, size_t d);

} // namespace recwidth
