#pragma once
#include "recwidth/poly.hpp"
#include "recwidth/recurrence.hpp"

namespace recwidth {

// Krylov matrix K(R, y): column j equals R^j y, for j = 0..n-1. The struct
// caches the per-kind preprocessing (recurrence spec + dyadic tree for a
// banded R, evaluation tree for a diagonal R) so repeated applications share
// the setup work.
struct KrylovOperator {
    RDescriptor R;
    Vec y;
    // banded R: rows of K satisfy a width-(delta) modular recurrence
    RecurrenceSpec band_spec;
    DyadicTree band_tree;
    bool band_flip = false; // upper band handled through index reversal
    // diagonal R: subproduct tree over the points
    EvalTree eval_tree;
};

KrylovOperator make_krylov(const RDescriptor& R, Vec y);

Vec krylov_op_apply(const KrylovOperator& op, const Vec& x);
Vec krylov_op_apply_transpose(const KrylovOperator& op, const Vec& x);

// one-shot conveniences
Vec krylov_apply(const RDescriptor& R, const Vec& y, const Vec& x);
Vec krylov_apply_transpose(const RDescriptor& R, const Vec& y, const Vec& x);

// Rows of K(M, y) for a lower triangular band M satisfy
//   (1 - M[i,i] X) F_i = sum_j M[i,i-j] X F_{i-j} + y_i
// over the modulus X^n; the returned spec generates exactly K(M, y).
RecurrenceSpec banded_krylov_spec(const BandMatrix& M, const Vec& y);

// monic characteristic polynomial of the operator described by R
Poly char_poly(const RDescriptor& R);

// v[j] = x^T C^j p for the companion matrix C of the monic modulus m,
// computed through one middle product against the recurrence extension of x
Vec transposed_mod_mul(const Poly& p, const Vec& x, const Poly& m);

// first `len` terms of the sequence that starts with `head` and then follows
// the linear recurrence whose characteristic polynomial is the monic m
Vec extend_by_modulus(const Vec& head, const Poly& m, size_t len);

} // namespace recwidth
