#pragma once
#include <memory>

#include "recwidth/linalg.hpp"

namespace recwidth {

// Order-t quasiseparable matrix: every submatrix strictly below (above) the
// diagonal has rank <= t. Stored as a binary block tree; off-diagonal blocks
// are kept in factored form R21 = U_L V_L^T, R12 = U_U V_U^T with factor
// width <= t. Blocks of size <= 2t are dense leaves.
struct QuasiSep {
    size_t n = 0;
    size_t order = 0;
    DenseMatrix dense; // leaf payload
    std::shared_ptr<const QuasiSep> r11, r22;
    DenseMatrix ul, vl; // R21 = ul * vl^T; ul: (n-h) x w, vl: h x w
    DenseMatrix uu, vu; // R12 = uu * vu^T; uu: h x w, vu: (n-h) x w

    bool leaf() const { return !r11; }
    size_t head() const { return leaf() ? n : r11->n; }
};

using QuasiPtr = std::shared_ptr<const QuasiSep>;

// exact rank factorization B = U * V^T with factor width rank(B)
void rank_factor(const DenseMatrix& B, DenseMatrix& U, DenseMatrix& V);

QuasiPtr quasisep_from_dense(const DenseMatrix& A, size_t order);
DenseMatrix quasisep_to_dense(const QuasiSep& q);
Vec quasi_matvec(const QuasiSep& q, const Vec& x);
Vec quasi_matvec_transpose(const QuasiSep& q, const Vec& x);
QuasiPtr quasi_transpose(const QuasiSep& q);

} // namespace recwidth
