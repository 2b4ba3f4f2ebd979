#pragma once
#include "recwidth/recurrence.hpp"

namespace recwidth {

// Per-interval state of the bilinear sweep. For the interval [l:r) (window
// size t, batch size P, error rank k):
//   P_blk (P x t): sum_i b[i] * S_(i:r) * e_{t-1}^T T_[l:i]
//   Q_blk (t x k): sum_j T_[j:r] e_{t-1} * S_[l:j] * C[j,.]
//   H_blk (P x k): sum_{l<=j<=i<r} b[i] * S_(i:r) * (T_[j:i])[t-1,t-1] *
//                  S_[l:j] * C[j,.]
// with S_(i:r) = S_[i+1:r]. No modular reduction happens inside the sweep;
// the single denominator S_[0:M] is inverted once at the root.
struct BilinearState {
    PolyMat P;
    PolyMat Q;
    PolyMat H;
};

// b^T H C mod c_R: one polynomial per error column (the f_k driving the
// Krylov combination). Requires a descriptor with an explicit modulus.
std::vector<Poly> bilinear_core(const RecurrenceSpec& spec,
                                const DyadicTree& tree, const Vec& b);

// y = A^T b for the rows-by-cols matrix A generated by the spec
Vec transpose_mult(const RecurrenceSpec& spec, const DyadicTree& tree,
                   const Vec& b);

// y = A b
Vec forward_mult(const RecurrenceSpec& spec, const DyadicTree& tree,
                 const Vec& b);

// columns are transpose_mult of the columns of B (rows x P), sharing the
// polynomial-matrix products across the batch; result is cols x P
DenseMatrix transpose_mult_batched(const RecurrenceSpec& spec,
                                   const DyadicTree& tree,
                                   const DenseMatrix& B);

} // namespace recwidth
