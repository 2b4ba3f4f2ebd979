#include "recwidth/krylov.hpp"

#include <stdexcept>

#include "recwidth/multiply.hpp"

namespace recwidth {

namespace {

Vec reversed(const Vec& v) { return Vec(v.rbegin(), v.rend()); }

// lower-band representation of J M J for an upper band M (and vice versa)
BandMatrix band_reverse(const BandMatrix& M) {
    BandMatrix out;
    out.n = M.n;
    out.delta = M.delta;
    out.lower = !M.lower;
    out.diags.resize(M.delta + 1);
    for (size_t j = 0; j <= M.delta; ++j) {
        out.diags[j] = Vec(M.diags[j].rbegin(), M.diags[j].rend());
    }
    return out;
}

Vec poly_to_vec(const Poly& p, size_t n) {
    Vec out(n, FieldElement(0));
    for (size_t i = 0; i < n && i < p.c.size(); ++i) out[i] = p.c[i];
    return out;
}

// det(xI - A) by similarity reduction to upper Hessenberg form followed by
// the leading-principal-minor recurrence; cubic with a small constant
Poly hessenberg_char_poly(DenseMatrix A) {
    const size_t n = A.rows;
    for (size_t c = 0; c + 2 < n; ++c) {
        size_t piv = c + 1;
        while (piv < n && A.at(piv, c).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != c + 1) {
            for (size_t j = 0; j < n; ++j)
                std::swap(A.at(piv, j), A.at(c + 1, j));
            for (size_t i = 0; i < n; ++i)
                std::swap(A.at(i, piv), A.at(i, c + 1));
        }
        FieldElement inv = A.at(c + 1, c).inv();
        for (size_t i = c + 2; i < n; ++i) {
            FieldElement f = A.at(i, c) * inv;
            if (f.is_zero()) continue;
            // similarity pair: row_i -= f row_{c+1}, then col_{c+1} += f col_i
            for (size_t j = c; j < n; ++j) A.at(i, j) -= f * A.at(c + 1, j);
            for (size_t i2 = 0; i2 < n; ++i2)
                A.at(i2, c + 1) += f * A.at(i2, i);
        }
    }
    std::vector<Poly> p(n + 1);
    p[0] = Poly::one();
    for (size_t k = 1; k <= n; ++k) {
        Poly pk = poly_sub(poly_mul(Poly::monomial(1), p[k - 1]),
                           poly_scale(p[k - 1], A.at(k - 1, k - 1)));
        FieldElement prod(1);
        for (size_t m = 2; m <= k; ++m) {
            prod *= A.at(k - m + 1, k - m);
            if (prod.is_zero()) break;
            FieldElement coef = A.at(k - m, k - 1) * prod;
            if (!coef.is_zero())
                pk = poly_sub(pk, poly_scale(p[k - m], coef));
        }
        p[k] = std::move(pk);
    }
    return p[n];
}

} // namespace

Vec extend_by_modulus(const Vec& head, const Poly& m, size_t len) {
    const size_t n = head.size();
    Poly revm = poly_rev(m, n + 1);
    Poly num = poly_trunc(poly_mul(Poly(head), revm), n);
    Poly ext = poly_trunc(poly_mul(num, poly_series_inv(revm, len)), len);
    Vec out(len, FieldElement(0));
    for (size_t i = 0; i < len && i < ext.c.size(); ++i) out[i] = ext.c[i];
    return out;
}

Vec transposed_mod_mul(const Poly& p, const Vec& x, const Poly& m) {
    const size_t n = static_cast<size_t>(m.deg());
    if (x.size() != n || n == 0)
        throw std::invalid_argument("matrix shape mismatch");
    Vec s = extend_by_modulus(x, m, 2 * n - 1);
    Poly conv = poly_mul(poly_rev(p, n), Poly(s));
    Vec v(n);
    for (size_t j = 0; j < n; ++j) v[j] = conv.at(n - 1 + j);
    return v;
}

RecurrenceSpec banded_krylov_spec(const BandMatrix& M, const Vec& y) {
    if (!M.lower)
        throw std::invalid_argument("banded Krylov spec requires a lower band");
    if (y.size() != M.n) throw std::invalid_argument("matrix shape mismatch");
    const size_t n = M.n;
    RecurrenceSpec spec;
    spec.rows = n;
    spec.cols = n;
    spec.t = M.delta;
    spec.r = 1;
    spec.d = 0;
    spec.dbar = 1;
    spec.R = RDescriptor::shift(n);
    spec.g.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const size_t lim = std::min(spec.t, i);
        spec.g[i].resize(lim + 1);
        spec.g[i][0] = Poly({FieldElement(1), -M.diag_entry(0, i)});
        for (size_t j = 1; j <= lim; ++j)
            spec.g[i][j] = Poly({FieldElement(0), M.diag_entry(j, i - j)});
    }
    spec.C = DenseMatrix(n, 1);
    for (size_t i = 0; i < n; ++i) spec.C.at(i, 0) = y[i];
    spec.D = DenseMatrix(1, n);
    spec.D.at(0, 0) = FieldElement(1);
    return spec;
}

Poly char_poly(const RDescriptor& R) {
    switch (R.kind) {
    case RKind::Shift:
        return Poly::monomial(R.n);
    case RKind::Companion:
        return R.modulus;
    case RKind::Diagonal:
        return build_eval_tree(R.points).root();
    case RKind::Band:
        return build_eval_tree(R.band.diags[0]).root();
    case RKind::Quasi:
        return hessenberg_char_poly(quasisep_to_dense(*R.quasi));
    }
    throw std::logic_error("unknown descriptor kind");
}

KrylovOperator make_krylov(const RDescriptor& R, Vec y) {
    if (y.size() != R.n) throw std::invalid_argument("matrix shape mismatch");
    KrylovOperator op;
    op.R = R;
    op.y = std::move(y);
    if (R.kind == RKind::Band) {
        op.band_flip = !R.band.lower;
        const BandMatrix& M = op.band_flip ? band_reverse(R.band) : R.band;
        const Vec seed = op.band_flip ? reversed(op.y) : op.y;
        op.band_spec = banded_krylov_spec(M, seed);
        op.band_tree = build_dyadic_tree(op.band_spec);
    } else if (R.kind == RKind::Diagonal) {
        op.eval_tree = build_eval_tree(R.points);
    }
    return op;
}

Vec krylov_op_apply(const KrylovOperator& op, const Vec& x) {
    const size_t n = op.R.n;
    if (x.size() != n) throw std::invalid_argument("matrix shape mismatch");
    switch (op.R.kind) {
    case RKind::Shift:
    case RKind::Companion: {
        Poly m = r_modulus(op.R);
        if (op.R.transposed) return transposed_mod_mul(Poly(x), op.y, m);
        Poly prod = poly_rem(poly_mul(Poly(op.y), Poly(x)), m);
        return poly_to_vec(prod, n);
    }
    case RKind::Diagonal: {
        Vec vals = multipoint_eval(Poly(x), op.eval_tree);
        Vec out(n);
        for (size_t i = 0; i < n; ++i) out[i] = op.y[i] * vals[i];
        return out;
    }
    case RKind::Band: {
        Vec out = forward_mult(op.band_spec, op.band_tree, x);
        return op.band_flip ? reversed(out) : out;
    }
    case RKind::Quasi: {
        // Horner over the operator: w <- R w + x_j y, j = n-1..0
        Vec w(n, FieldElement(0));
        for (size_t j = n; j-- > 0;) {
            w = quasi_matvec(*op.R.quasi, w);
            for (size_t i = 0; i < n; ++i) w[i] += x[j] * op.y[i];
        }
        return w;
    }
    }
    throw std::logic_error("unknown descriptor kind");
}

Vec krylov_op_apply_transpose(const KrylovOperator& op, const Vec& x) {
    const size_t n = op.R.n;
    if (x.size() != n) throw std::invalid_argument("matrix shape mismatch");
    switch (op.R.kind) {
    case RKind::Shift:
    case RKind::Companion: {
        Poly m = r_modulus(op.R);
        if (op.R.transposed) return transposed_mod_mul(Poly(x), op.y, m);
        return transposed_mod_mul(Poly(op.y), x, m);
    }
    case RKind::Diagonal: {
        Poly acc = transposed_eval(x, op.y, op.eval_tree, n);
        return poly_to_vec(acc, n);
    }
    case RKind::Band: {
        const Vec& in = op.band_flip ? reversed(x) : x;
        return transpose_mult(op.band_spec, op.band_tree, in);
    }
    case RKind::Quasi: {
        // moment sweep: (K^T x)_j = x^T R^j y
        Vec w = x, out(n);
        out[0] = dot(w, op.y);
        for (size_t j = 1; j < n; ++j) {
            w = quasi_matvec_transpose(*op.R.quasi, w);
            out[j] = dot(w, op.y);
        }
        return out;
    }
    }
    throw std::logic_error("unknown descriptor kind");
}

Vec krylov_apply(const RDescriptor& R, const Vec& y, const Vec& x) {
    return krylov_op_apply(make_krylov(R, y), x);
}

Vec krylov_apply_transpose(const RDescriptor& R, const Vec& y, const Vec& x) {
    return krylov_op_apply_transpose(make_krylov(R, y), x);
}

} // namespace recwidth
