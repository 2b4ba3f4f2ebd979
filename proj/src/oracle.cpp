#include "recwidth/oracle.hpp"

#include <stdexcept>

#include "recwidth/poly.hpp"

namespace recwidth {

namespace {

constexpr size_t kOracleCap = 256;

// g(R) v by Horner over the descriptor's matrix action
Vec apply_poly_of_r(const RDescriptor& R, const Poly& g, const Vec& v) {
    Vec w(v.size(), FieldElement(0));
    if (g.is_zero()) return w;
    for (size_t k = g.c.size(); k-- > 0;) {
        w = r_apply(R, w);
        for (size_t i = 0; i < v.size(); ++i) w[i] += g.c[k] * v[i];
    }
    return w;
}

DenseMatrix dense_poly_of_r(const DenseMatrix& Rd, const Poly& g) {
    const size_t n = Rd.rows;
    DenseMatrix acc(n, n);
    for (size_t k = g.c.size(); k-- > 0;) {
        acc = mat_mul(Rd, acc);
        for (size_t i = 0; i < n; ++i) acc.at(i, i) += g.c[k];
    }
    return acc;
}

// a with g0(R) a = rhs
Vec solve_leading(const RDescriptor& R, const Poly& g0, const Vec& rhs) {
    if (g0.is_zero()) throw std::invalid_argument("zero leading coefficient");
    if (g0.deg() == 0) {
        FieldElement s = g0.c[0].inv();
        Vec a(rhs);
        for (auto& v : a) v = v * s;
        return a;
    }
    if (R.kind == RKind::Diagonal) {
        Vec a(rhs.size());
        for (size_t v = 0; v < rhs.size(); ++v)
            a[v] = rhs[v] * g0.eval(R.points[v]).inv();
        return a;
    }
    if (r_has_modulus(R) && !R.transposed) {
        // operator polynomials multiply modulo the modulus
        Poly m = r_modulus(R);
        Poly gi = poly_inv_mod(g0, m);
        Poly prod = poly_rem(poly_mul(gi, Poly(rhs)), m);
        Vec a(rhs.size(), FieldElement(0));
        for (size_t v = 0; v < rhs.size() && v < prod.c.size(); ++v)
            a[v] = prod.c[v];
        return a;
    }
    DenseMatrix G0 = dense_poly_of_r(r_to_dense(R), g0);
    return gauss_solve(G0, rhs);
}

bool is_lower_dense(const DenseMatrix& M) {
    for (size_t i = 0; i < M.rows; ++i)
        for (size_t j = i + 1; j < M.cols; ++j)
            if (!M.at(i, j).is_zero()) return false;
    return true;
}

bool is_upper_dense(const DenseMatrix& M) {
    for (size_t i = 0; i < M.rows; ++i)
        for (size_t j = 0; j < i && j < M.cols; ++j)
            if (!M.at(i, j).is_zero()) return false;
    return true;
}

Vec mat_col(const DenseMatrix& M, size_t j) {
    Vec v(M.rows);
    for (size_t i = 0; i < M.rows; ++i) v[i] = M.at(i, j);
    return v;
}

} // namespace

DenseMatrix dense_from_spec(const RecurrenceSpec& spec) {
    if (spec.rows > kOracleCap || spec.cols > kOracleCap)
        throw std::invalid_argument("dense oracle capped at 256");
    validate_spec(spec);
    const size_t n = spec.cols;
    DenseMatrix A(spec.rows, spec.cols);
    std::vector<Vec> rows;
    rows.reserve(spec.rows);
    for (size_t i = 0; i < spec.rows; ++i) {
        Vec rhs(n, FieldElement(0));
        for (size_t k = 0; k < spec.r; ++k) {
            FieldElement c = spec.c_entry(i, k);
            if (c.is_zero()) continue;
            for (size_t j = 0; j < n; ++j) rhs[j] += c * spec.D.at(k, j);
        }
        const size_t lim = std::min(spec.width(), i);
        for (size_t j = 1; j <= lim; ++j) {
            const Poly& g = spec.coeff(i, j);
            if (g.is_zero()) continue;
            Vec term = apply_poly_of_r(spec.R, g, rows[i - j]);
            for (size_t v = 0; v < n; ++v) rhs[v] += term[v];
        }
        Vec ai = solve_leading(spec.R, spec.lead_coeff(i), rhs);
        for (size_t v = 0; v < n; ++v) A.at(i, v) = ai[v];
        rows.push_back(std::move(ai));
    }
    return A;
}

DenseMatrix dense_from_displacement(const DisplacementRep& rep) {
    const size_t m = rep.rows();
    const size_t n = rep.cols();
    if (m > kOracleCap || n > kOracleCap)
        throw std::invalid_argument("dense oracle capped at 256");
    DenseMatrix Ld = r_to_dense(rep.L);
    DenseMatrix Rd = r_to_dense(rep.R);
    DenseMatrix E = mat_mul(rep.C, rep.D);
    DenseMatrix RdT = mat_transpose(Rd);
    const bool stein = rep.op == DispOp::Stein;
    DenseMatrix A(m, n);

    auto set_row = [&](size_t i, const Vec& v) {
        for (size_t j = 0; j < n; ++j) A.at(i, j) = v[j];
    };
    auto set_col = [&](size_t j, const Vec& v) {
        for (size_t i = 0; i < m; ++i) A.at(i, j) = v[i];
    };

    const bool l_lower = is_lower_dense(Ld);
    const bool l_upper = is_upper_dense(Ld);
    const bool r_lower = is_lower_dense(Rd);
    const bool r_upper = is_upper_dense(Rd);

    if (l_lower || l_upper) {
        // row sweep: rows with known neighbors first
        for (size_t step = 0; step < m; ++step) {
            size_t i = l_lower ? step : m - 1 - step;
            Vec rhs(n);
            for (size_t j = 0; j < n; ++j) rhs[j] = E.at(i, j);
            for (size_t j = 0; j < m; ++j) {
                if (j == i || Ld.at(i, j).is_zero()) continue;
                Vec aj(n);
                for (size_t v = 0; v < n; ++v) aj[v] = A.at(j, v);
                // Stein moves L[i,j] (a_j R) across; Sylvester moves the bare
                // -L[i,j] a_j
                Vec term = stein ? mat_vec(RdT, aj) : aj;
                for (size_t v = 0; v < n; ++v)
                    rhs[v] += (stein ? Ld.at(i, j) : -Ld.at(i, j)) * term[v];
            }
            DenseMatrix M(n, n);
            if (stein) {
                // (I - L[i,i] R^T) a_i = rhs
                for (size_t a = 0; a < n; ++a)
                    for (size_t b = 0; b < n; ++b)
                        M.at(a, b) = (a == b ? FieldElement(1) : FieldElement(0)) -
                                     Ld.at(i, i) * RdT.at(a, b);
            } else {
                // (L[i,i] I - R^T) a_i = rhs
                for (size_t a = 0; a < n; ++a)
                    for (size_t b = 0; b < n; ++b)
                        M.at(a, b) = (a == b ? Ld.at(i, i) : FieldElement(0)) -
                                     RdT.at(a, b);
            }
            set_row(i, gauss_solve(M, rhs));
        }
    } else if (r_lower || r_upper) {
        // column sweep
        for (size_t step = 0; step < n; ++step) {
            size_t j = r_lower ? n - 1 - step : step;
            Vec rhs = mat_col(E, j);
            Vec mix(m, FieldElement(0));
            for (size_t i = 0; i < n; ++i) {
                if (i == j || Rd.at(i, j).is_zero()) continue;
                for (size_t v = 0; v < m; ++v) mix[v] += Rd.at(i, j) * A.at(v, i);
            }
            if (stein) {
                Vec lm = mat_vec(Ld, mix);
                for (size_t v = 0; v < m; ++v) rhs[v] += lm[v];
                DenseMatrix M(m, m);
                for (size_t a = 0; a < m; ++a)
                    for (size_t b = 0; b < m; ++b)
                        M.at(a, b) = (a == b ? FieldElement(1) : FieldElement(0)) -
                                     Rd.at(j, j) * Ld.at(a, b);
                set_col(j, gauss_solve(M, rhs));
            } else {
                for (size_t v = 0; v < m; ++v) rhs[v] += mix[v];
                DenseMatrix M(m, m);
                for (size_t a = 0; a < m; ++a)
                    for (size_t b = 0; b < m; ++b)
                        M.at(a, b) = Ld.at(a, b) -
                                     (a == b ? Rd.at(j, j) : FieldElement(0));
                set_col(j, gauss_solve(M, rhs));
            }
        }
    } else {
        // Kronecker system over vec(A), columns stacked
        if (m * n > 1024)
            throw std::invalid_argument(
                "dense displacement oracle needs a triangular side at this size");
        DenseMatrix K(m * n, m * n);
        for (size_t j = 0; j < n; ++j)
            for (size_t a = 0; a < m; ++a) {
                size_t row = j * m + a;
                if (stein) {
                    // vec(A) - (R^T (x) L) vec(A) = vec(E)
                    K.at(row, row) += FieldElement(1);
                    for (size_t i = 0; i < n; ++i)
                        for (size_t b = 0; b < m; ++b)
                            K.at(row, i * m + b) -= Rd.at(i, j) * Ld.at(a, b);
                } else {
                    // (I (x) L - R^T (x) I) vec(A) = vec(E)
                    for (size_t b = 0; b < m; ++b)
                        K.at(row, j * m + b) += Ld.at(a, b);
                    for (size_t i = 0; i < n; ++i)
                        K.at(row, i * m + a) -= Rd.at(i, j);
                }
            }
        Vec ve(m * n);
        for (size_t j = 0; j < n; ++j)
            for (size_t a = 0; a < m; ++a) ve[j * m + a] = E.at(a, j);
        Vec va = gauss_solve(K, ve);
        for (size_t j = 0; j < n; ++j)
            for (size_t a = 0; a < m; ++a) A.at(a, j) = va[j * m + a];
    }

    // re-check the defining equation before handing the matrix out
    DenseMatrix resid = stein
        ? mat_sub(mat_sub(A, mat_mul(Ld, mat_mul(A, Rd))), E)
        : mat_sub(mat_sub(mat_mul(Ld, A), mat_mul(A, Rd)), E);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j)
            if (!resid.at(i, j).is_zero())
                throw std::logic_error("displacement oracle residual nonzero");
    return A;
}

Vec dense_solve(const DenseMatrix& A, const Vec& y) { return gauss_solve(A, y); }

DenseMatrix stirling_table_oracle(size_t n) {
    DenseMatrix W(n, n);
    if (n == 0) return W;
    W.at(0, 0) = FieldElement(1);
    for (size_t i = 1; i < n; ++i)
        for (size_t j = 1; j <= i; ++j)
            W.at(i, j) = FieldElement(j) * W.at(i - 1, j) + W.at(i - 1, j - 1);
    return W;
}

Vec bernoulli_oracle(size_t n) {
    // sum_{j<=m} binom(m+1, j) B_j = 0 for m >= 1
    Vec B(n);
    if (n == 0) return B;
    B[0] = FieldElement(1);
    std::vector<Vec> binom(n + 2);
    for (size_t i = 0; i <= n + 1; ++i) {
        binom[i] = Vec(i + 1, FieldElement(1));
        for (size_t j = 1; j < i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
    }
    for (size_t m = 1; m < n; ++m) {
        FieldElement acc(0);
        for (size_t j = 0; j < m; ++j) acc += binom[m + 1][j] * B[j];
        B[m] = -acc * FieldElement(m + 1).inv();
    }
    return B;
}

FieldElement ortho_eval_oracle(const Vec& alpha, const Vec& beta,
                               const Vec& gamma, const Vec& coeffs,
                               FieldElement x) {
    FieldElement acc(0), prev(0), cur(1);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i == 1) {
            FieldElement next = (alpha[1] * x + beta[1]) * cur;
            prev = cur;
            cur = next;
        } else if (i >= 2) {
            FieldElement next = (alpha[i] * x + beta[i]) * cur + gamma[i] * prev;
            prev = cur;
            cur = next;
        }
        acc += coeffs[i] * cur;
    }
    return acc;
}

} // namespace recwidth
