#pragma once
#include "recwidth/field.hpp"

namespace recwidth {

// Dense row-major matrix over the field; the shared container behind the
// oracle module, quasiseparable leaf blocks, and small elimination kernels.
struct DenseMatrix {
    size_t rows = 0, cols = 0;
    Vec a;

    DenseMatrix() = default;
    DenseMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, FieldElement(0)) {}

    FieldElement& at(size_t i, size_t j) { return a[i * cols + j]; }
    FieldElement at(size_t i, size_t j) const { return a[i * cols + j]; }

    static DenseMatrix identity(size_t n) {
        DenseMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const DenseMatrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

DenseMatrix mat_mul(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix mat_add(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix mat_sub(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix mat_transpose(const DenseMatrix& A);
DenseMatrix mat_neg(const DenseMatrix& A);
Vec mat_vec(const DenseMatrix& A, const Vec& x);
Vec mat_transpose_vec(const DenseMatrix& A, const Vec& x);
size_t mat_rank(DenseMatrix A);
// solves A x = y by Gaussian elimination; throws "matrix singular" if singular
Vec gauss_solve(DenseMatrix A, Vec y);
// throws "matrix singular" if not invertible
DenseMatrix mat_inverse(const DenseMatrix& A);

} // namespace recwidth
