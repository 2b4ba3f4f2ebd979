#include "recwidth/recovery.hpp"

#include <stdexcept>

namespace recwidth {

namespace {

// reduced row echelon form of [sys | rhs]; returns false when inconsistent,
// otherwise fills `out` with the particular solution (free variables zero)
bool solve_consistent(DenseMatrix sys, Vec rhs, Vec& out) {
    const size_t m = sys.rows, k = sys.cols;
    std::vector<std::pair<size_t, size_t>> pivots;
    size_t r = 0;
    for (size_t c = 0; c < k && r < m; ++c) {
        size_t p = r;
        while (p < m && sys.at(p, c).is_zero()) ++p;
        if (p == m) continue;
        if (p != r) {
            for (size_t j = c; j < k; ++j) std::swap(sys.at(p, j), sys.at(r, j));
            std::swap(rhs[p], rhs[r]);
        }
        FieldElement inv = sys.at(r, c).inv();
        for (size_t j = c; j < k; ++j) sys.at(r, j) = sys.at(r, j) * inv;
        rhs[r] = rhs[r] * inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == r || sys.at(i, c).is_zero()) continue;
            FieldElement f = sys.at(i, c);
            for (size_t j = c; j < k; ++j)
                sys.at(i, j) = sys.at(i, j) - f * sys.at(r, j);
            rhs[i] = rhs[i] - f * rhs[r];
        }
        pivots.emplace_back(r, c);
        ++r;
    }
    for (size_t i = r; i < m; ++i)
        if (!rhs[i].is_zero()) return false;
    out.assign(k, FieldElement(0));
    for (auto [pr, pc] : pivots) out[pc] = rhs[pr];
    return true;
}

Vec dense_row(const DenseMatrix& a, size_t i) {
    Vec v(a.cols);
    for (size_t j = 0; j < a.cols; ++j) v[j] = a.at(i, j);
    return v;
}

} // namespace

FitReport recover_recurrence(const DenseMatrix& A, size_t t) {
    const size_t n = A.rows, m = A.cols;
    if (m <= t * (t + 3) / 2) throw std::invalid_argument("insufficient constraints");
    for (size_t i = 0; i < std::min(t, n); ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (!A.at(i, j).is_zero())
                throw std::invalid_argument("recovery requires triangular seed rows");

    FitReport rep;
    rep.row_ok.assign(n, 1);

    RecurrenceSpec spec;
    spec.rows = n;
    spec.cols = m;
    spec.t = t;
    spec.r = t;
    spec.d = 1;
    spec.dbar = 0;
    spec.R = RDescriptor::shift(m);
    spec.C = DenseMatrix(n, t);
    spec.D = DenseMatrix(t, m);
    for (size_t u = 0; u < t && u < n; ++u) {
        spec.C.at(u, u) = FieldElement(1);
        for (size_t j = 0; j < m; ++j) spec.D.at(u, j) = A.at(u, j);
    }
    spec.g.resize(n);
    for (size_t i = 0; i < n; ++i) {
        spec.g[i].assign(std::min(t, i) + 1, Poly());
        spec.g[i][0] = Poly::one();
    }

    bool all_ok = true;
    for (size_t i = t; i < n; ++i) {
        const size_t jn = std::min(t, i);
        // unknowns: coefficients e = 0..j of g_{i,j}, stacked over j = 1..jn
        size_t k = 0;
        for (size_t j = 1; j <= jn; ++j) k += j + 1;
        DenseMatrix sys(m, k);
        Vec rhs = dense_row(A, i);
        size_t col = 0;
        for (size_t j = 1; j <= jn; ++j)
            for (size_t e = 0; e <= j; ++e, ++col)
                for (size_t q = e; q < m; ++q) sys.at(q, col) = A.at(i - j, q - e);
        Vec sol;
        bool ok = solve_consistent(sys, rhs, sol);
        if (ok) {
            col = 0;
            for (size_t j = 1; j <= jn; ++j) {
                Vec coeffs(j + 1);
                for (size_t e = 0; e <= j; ++e, ++col) coeffs[e] = sol[col];
                spec.g[i][j] = Poly(coeffs);
            }
            // confirm exact regeneration of the row
            for (size_t q = 0; q < m && ok; ++q) {
                FieldElement acc(0);
                for (size_t j = 1; j <= jn; ++j)
                    for (size_t e = 0; e <= j && e <= q; ++e)
                        acc = acc + spec.g[i][j].at(e) * A.at(i - j, q - e);
                ok = (acc == A.at(i, q));
            }
        }
        if (!ok) {
            rep.row_ok[i] = 0;
            all_ok = false;
            for (size_t j = 1; j <= jn; ++j) spec.g[i][j] = Poly();
        }
    }

    rep.success = all_ok;
    rep.spec = std::move(spec);
    return rep;
}

} // namespace recwidth
