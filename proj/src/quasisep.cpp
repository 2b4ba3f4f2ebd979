#include "recwidth/quasisep.hpp"

#include <stdexcept>

namespace recwidth {

void rank_factor(const DenseMatrix& B, DenseMatrix& U, DenseMatrix& V) {
    // reduced row echelon form E of B with pivot column list; then
    // B = (pivot columns of B) * E, so U = pivot columns, V^T = E.
    size_t rows = B.rows, cols = B.cols;
    DenseMatrix E = B;
    std::vector<size_t> pivots;
    size_t lead = 0;
    for (size_t col = 0; col < cols && lead < rows; ++col) {
        size_t piv = lead;
        while (piv < rows && E.at(piv, col).is_zero()) ++piv;
        if (piv == rows) continue;
        for (size_t j = 0; j < cols; ++j) std::swap(E.at(piv, j), E.at(lead, j));
        FieldElement inv = E.at(lead, col).inv();
        for (size_t j = col; j < cols; ++j) E.at(lead, j) *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == lead || E.at(i, col).is_zero()) continue;
            FieldElement f = E.at(i, col);
            for (size_t j = col; j < cols; ++j) E.at(i, j) -= f * E.at(lead, j);
        }
        pivots.push_back(col);
        ++lead;
    }
    size_t rank = pivots.size();
    U = DenseMatrix(rows, rank);
    V = DenseMatrix(cols, rank);
    for (size_t k = 0; k < rank; ++k) {
        for (size_t i = 0; i < rows; ++i) U.at(i, k) = B.at(i, pivots[k]);
        for (size_t j = 0; j < cols; ++j) V.at(j, k) = E.at(k, j);
    }
}

QuasiPtr quasisep_from_dense(const DenseMatrix& A, size_t order) {
    if (A.rows != A.cols) throw std::invalid_argument("matrix shape mismatch");
    auto q = std::make_shared<QuasiSep>();
    q->n = A.rows;
    q->order = order;
    size_t threshold = std::max<size_t>(2 * order, 1);
    if (q->n <= threshold) {
        q->dense = A;
        return q;
    }
    size_t h = q->n / 2, m = q->n - h;
    DenseMatrix a11(h, h), a22(m, m), a21(m, h), a12(h, m);
    for (size_t i = 0; i < h; ++i)
        for (size_t j = 0; j < h; ++j) a11.at(i, j) = A.at(i, j);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) a22.at(i, j) = A.at(h + i, h + j);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < h; ++j) a21.at(i, j) = A.at(h + i, j);
    for (size_t i = 0; i < h; ++i)
        for (size_t j = 0; j < m; ++j) a12.at(i, j) = A.at(i, h + j);
    rank_factor(a21, q->ul, q->vl);
    rank_factor(a12, q->uu, q->vu);
    if (q->ul.cols > order || q->uu.cols > order)
        throw std::invalid_argument("off-diagonal rank exceeds quasiseparable order");
    q->r11 = quasisep_from_dense(a11, order);
    q->r22 = quasisep_from_dense(a22, order);
    return q;
}

DenseMatrix quasisep_to_dense(const QuasiSep& q) {
    if (q.leaf()) return q.dense;
    DenseMatrix a11 = quasisep_to_dense(*q.r11);
    DenseMatrix a22 = quasisep_to_dense(*q.r22);
    DenseMatrix a21 = mat_mul(q.ul, mat_transpose(q.vl));
    DenseMatrix a12 = mat_mul(q.uu, mat_transpose(q.vu));
    size_t h = q.r11->n;
    DenseMatrix out(q.n, q.n);
    for (size_t i = 0; i < h; ++i)
        for (size_t j = 0; j < h; ++j) out.at(i, j) = a11.at(i, j);
    for (size_t i = 0; i < q.n - h; ++i)
        for (size_t j = 0; j < q.n - h; ++j) out.at(h + i, h + j) = a22.at(i, j);
    for (size_t i = 0; i < q.n - h; ++i)
        for (size_t j = 0; j < h; ++j) out.at(h + i, j) = a21.at(i, j);
    for (size_t i = 0; i < h; ++i)
        for (size_t j = 0; j < q.n - h; ++j) out.at(i, h + j) = a12.at(i, j);
    return out;
}

Vec quasi_matvec(const QuasiSep& q, const Vec& x) {
    if (x.size() != q.n) throw std::invalid_argument("matrix shape mismatch");
    if (q.leaf()) return mat_vec(q.dense, x);
    size_t h = q.r11->n;
    Vec x1(x.begin(), x.begin() + (long)h), x2(x.begin() + (long)h, x.end());
    Vec y1 = quasi_matvec(*q.r11, x1);
    Vec y2 = quasi_matvec(*q.r22, x2);
    Vec s12 = mat_vec(q.uu, mat_transpose_vec(q.vu, x2));
    Vec s21 = mat_vec(q.ul, mat_transpose_vec(q.vl, x1));
    for (size_t i = 0; i < h; ++i) y1[i] += s12[i];
    for (size_t i = 0; i < q.n - h; ++i) y2[i] += s21[i];
    y1.insert(y1.end(), y2.begin(), y2.end());
    return y1;
}

Vec quasi_matvec_transpose(const QuasiSep& q, const Vec& x) {
    if (x.size() != q.n) throw std::invalid_argument("matrix shape mismatch");
    if (q.leaf()) return mat_transpose_vec(q.dense, x);
    size_t h = q.r11->n;
    Vec x1(x.begin(), x.begin() + (long)h), x2(x.begin() + (long)h, x.end());
    Vec y1 = quasi_matvec_transpose(*q.r11, x1);
    Vec y2 = quasi_matvec_transpose(*q.r22, x2);
    // (R^T x)_1 = R11^T x1 + R21^T x2 = R11^T x1 + vl (ul^T x2)
    Vec s1 = mat_vec(q.vl, mat_transpose_vec(q.ul, x2));
    Vec s2 = mat_vec(q.vu, mat_transpose_vec(q.uu, x1));
    for (size_t i = 0; i < h; ++i) y1[i] += s1[i];
    for (size_t i = 0; i < q.n - h; ++i) y2[i] += s2[i];
    y1.insert(y1.end(), y2.begin(), y2.end());
    return y1;
}

QuasiPtr quasi_transpose(const QuasiSep& q) {
    auto out = std::make_shared<QuasiSep>();
    out->n = q.n;
    out->order = q.order;
    if (q.leaf()) {
        out->dense = mat_transpose(q.dense);
        return out;
    }
    out->r11 = quasi_transpose(*q.r11);
    out->r22 = quasi_transpose(*q.r22);
    // (R21)^T = vl ul^T becomes the upper block; (R12)^T the lower one
    out->uu = q.vl;
    out->vu = q.ul;
    out->ul = q.vu;
    out->vl = q.uu;
    return out;
}

} // namespace recwidth
