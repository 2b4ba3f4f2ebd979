#include "recwidth/linalg.hpp"

namespace recwidth {

DenseMatrix mat_mul(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.cols != B.rows) throw std::runtime_error("matrix shape mismatch");
    DenseMatrix C(A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t k = 0; k < A.cols; ++k) {
            FieldElement v = A.at(i, k);
            if (v.is_zero()) continue;
            for (size_t j = 0; j < B.cols; ++j) C.at(i, j) += v * B.at(k, j);
        }
    return C;
}

DenseMatrix mat_add(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::runtime_error("matrix shape mismatch");
    DenseMatrix C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
    return C;
}

DenseMatrix mat_sub(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::runtime_error("matrix shape mismatch");
    DenseMatrix C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
    return C;
}

DenseMatrix mat_transpose(const DenseMatrix& A) {
    DenseMatrix T(A.cols, A.rows);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

DenseMatrix mat_neg(const DenseMatrix& A) {
    DenseMatrix C = A;
    for (auto& v : C.a) v = -v;
    return C;
}

Vec mat_vec(const DenseMatrix& A, const Vec& x) {
    if (A.cols != x.size()) throw std::runtime_error("matrix shape mismatch");
    Vec y(A.rows, FieldElement(0));
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j) y[i] += A.at(i, j) * x[j];
    return y;
}

Vec mat_transpose_vec(const DenseMatrix& A, const Vec& x) {
    if (A.rows != x.size()) throw std::runtime_error("matrix shape mismatch");
    Vec y(A.cols, FieldElement(0));
    for (size_t i = 0; i < A.rows; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < A.cols; ++j) y[j] += A.at(i, j) * x[i];
    }
    return y;
}

size_t mat_rank(DenseMatrix A) {
    size_t rank = 0;
    for (size_t col = 0; col < A.cols && rank < A.rows; ++col) {
        size_t piv = rank;
        while (piv < A.rows && A.at(piv, col).is_zero()) ++piv;
        if (piv == A.rows) continue;
        for (size_t j = 0; j < A.cols; ++j) std::swap(A.at(rank, j), A.at(piv, j));
        FieldElement inv = A.at(rank, col).inv();
        for (size_t i = rank + 1; i < A.rows; ++i) {
            FieldElement f = A.at(i, col) * inv;
            if (f.is_zero()) continue;
            for (size_t j = col; j < A.cols; ++j) A.at(i, j) -= f * A.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

Vec gauss_solve(DenseMatrix A, Vec y) {
    if (A.rows != A.cols || y.size() != A.rows) throw std::runtime_error("matrix shape mismatch");
    size_t n = A.rows;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && A.at(piv, col).is_zero()) ++piv;
        if (piv == n) throw std::runtime_error("matrix singular");
        if (piv != col) {
            for (size_t j = 0; j < n; ++j) std::swap(A.at(col, j), A.at(piv, j));
            std::swap(y[col], y[piv]);
        }
        FieldElement inv = A.at(col, col).inv();
        for (size_t i = 0; i < n; ++i) {
            if (i == col || A.at(i, col).is_zero()) continue;
            FieldElement f = A.at(i, col) * inv;
            for (size_t j = col; j < n; ++j) A.at(i, j) -= f * A.at(col, j);
            y[i] -= f * y[col];
        }
    }
    Vec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = y[i] * A.at(i, i).inv();
    return x;
}

DenseMatrix mat_inverse(const DenseMatrix& A) {
    if (A.rows != A.cols) throw std::runtime_error("matrix shape mismatch");
    size_t n = A.rows;
    DenseMatrix W = A, I = DenseMatrix::identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && W.at(piv, col).is_zero()) ++piv;
        if (piv == n) throw std::runtime_error("matrix singular");
        if (piv != col)
            for (size_t j = 0; j < n; ++j) {
                std::swap(W.at(col, j), W.at(piv, j));
                std::swap(I.at(col, j), I.at(piv, j));
            }
        FieldElement inv = W.at(col, col).inv();
        for (size_t j = 0; j < n; ++j) {
            W.at(col, j) *= inv;
            I.at(col, j) *= inv;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            FieldElement f = W.at(i, col);
            if (f.is_zero()) continue;
            for (size_t j = 0; j < n; ++j) {
                W.at(i, j) -= f * W.at(col, j);
                I.at(i, j) -= f * I.at(col, j);
            }
        }
    }
    return I;
}

} // namespace recwidth
