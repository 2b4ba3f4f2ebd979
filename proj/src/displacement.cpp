#include "recwidth/displacement.hpp"

#include <stdexcept>

#include "recwidth/krylov.hpp"
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
    for (size_t j = 0; j <= M.delta; ++j)
        out.diags[j] = Vec(M.diags[j].rbegin(), M.diags[j].rend());
    return out;
}

DenseMatrix reverse_rows(const DenseMatrix& A) {
    DenseMatrix out(A.rows, A.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j)
            out.at(i, j) = A.at(A.rows - 1 - i, j);
    return out;
}

DenseMatrix take_rows(const DenseMatrix& A, size_t i0, size_t i1) {
    DenseMatrix out(i1 - i0, A.cols);
    for (size_t i = i0; i < i1; ++i)
        for (size_t j = 0; j < A.cols; ++j) out.at(i - i0, j) = A.at(i, j);
    return out;
}

DenseMatrix hcat(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.rows != B.rows)
        throw std::logic_error("hcat row mismatch");
    DenseMatrix out(A.rows, A.cols + B.cols);
    for (size_t i = 0; i < A.rows; ++i) {
        for (size_t j = 0; j < A.cols; ++j) out.at(i, j) = A.at(i, j);
        for (size_t j = 0; j < B.cols; ++j)
            out.at(i, A.cols + j) = B.at(i, j);
    }
    return out;
}

FieldElement dense_det(DenseMatrix A) {
    if (A.rows != A.cols)
        throw std::logic_error("determinant of non-square matrix");
    const size_t n = A.rows;
    FieldElement det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && A.at(piv, c).is_zero()) ++piv;
        if (piv == n) return FieldElement(0);
        if (piv != c) {
            for (size_t j = c; j < n; ++j)
                std::swap(A.at(piv, j), A.at(c, j));
            det = -det;
        }
        det *= A.at(c, c);
        FieldElement inv = A.at(c, c).inv();
        for (size_t i = c + 1; i < n; ++i) {
            FieldElement f = A.at(i, c) * inv;
            if (f.is_zero()) continue;
            for (size_t j = c; j < n; ++j) A.at(i, j) -= f * A.at(c, j);
        }
    }
    return det;
}

// block of M scaled by a polynomial factor
PolyMat block_scaled(const PolyMat& M, size_t r0, size_t r1, size_t c0,
                     size_t c1, const Poly& s) {
    PolyMat out(r1 - r0, c1 - c0);
    for (size_t i = r0; i < r1; ++i)
        for (size_t j = c0; j < c1; ++j)
            out.at(i - r0, j - c0) = poly_mul(M.at(i, j), s);
    return out;
}

DenseMatrix pm_eval(const PolyMat& M, FieldElement x) {
    DenseMatrix out(M.rows, M.cols);
    for (size_t i = 0; i < M.rows; ++i)
        for (size_t j = 0; j < M.cols; ++j) out.at(i, j) = M.at(i, j).eval(x);
    return out;
}

Poly exact_div(const Poly& p, const Poly& q) {
    DivRem dr = poly_divrem(p, q);
    if (!dr.rem.is_zero())
        throw std::logic_error("resolvent division not exact");
    return dr.quot;
}

// base case: n+1 point evaluations of det(xI - R) and det * B^T (xI-R)^{-1} C
Resolvent resolvent_dense(const DenseMatrix& B, const DenseMatrix& Rd,
                          const DenseMatrix& C) {
    const size_t n = Rd.rows;
    const size_t k = B.cols, k2 = C.cols;
    Vec pts, denvals;
    std::vector<DenseMatrix> numvals;
    for (u64 xi = 0; pts.size() < n + 1; ++xi) {
        FieldElement x((i64)xi);
        DenseMatrix M(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                M.at(i, j) = (i == j ? x : FieldElement(0)) - Rd.at(i, j);
        FieldElement dv = dense_det(M);
        if (dv.is_zero()) continue;
        DenseMatrix nv = mat_mul(mat_mul(mat_transpose(B), mat_inverse(M)), C);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k2; ++j) nv.at(i, j) *= dv;
        pts.push_back(x);
        denvals.push_back(dv);
        numvals.push_back(std::move(nv));
    }
    Resolvent out;
    out.den = lagrange_interpolate(pts, denvals);
    out.num = PolyMat(k, k2);
    Vec vals(pts.size());
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k2; ++j) {
            for (size_t s = 0; s < pts.size(); ++s)
                vals[s] = numvals[s].at(i, j);
            out.num.at(i, j) = lagrange_interpolate(pts, vals);
        }
    return out;
}

} // namespace

Resolvent resolvent(const DenseMatrix& B, const QuasiSep& q,
                    const DenseMatrix& C) {
    if (B.rows != q.n || C.rows != q.n)
        throw std::invalid_argument("matrix shape mismatch");
    if (q.leaf()) return resolvent_dense(B, q.dense, C);

    const size_t h = q.head(), n = q.n;
    const size_t k = B.cols, k2 = C.cols;
    const size_t wl = q.ul.cols, wu = q.uu.cols, w = wl + wu;

    Resolvent s1 = resolvent(hcat(take_rows(B, 0, h), q.vl), *q.r11,
                             hcat(take_rows(C, 0, h), q.uu));
    Resolvent s2 = resolvent(hcat(take_rows(B, h, n), q.vu), *q.r22,
                             hcat(take_rows(C, h, n), q.ul));
    const Poly& d1 = s1.den;
    const Poly& d2 = s2.den;
    Poly qq = poly_mul(d1, d2);

    PolyMat m1 = pm_add(block_scaled(s1.num, 0, k, 0, k2, d2),
                        block_scaled(s2.num, 0, k, 0, k2, d1));
    if (w == 0) return {m1, qq};

    // correction blocks of the block-diagonal splitting
    PolyMat m2(k, w), m4(w, k2), m3(w, w);
    {
        PolyMat a = block_scaled(s2.num, 0, k, k2, k2 + wl, d1);
        PolyMat b = block_scaled(s1.num, 0, k, k2, k2 + wu, d2);
        for (size_t i = 0; i < k; ++i) {
            for (size_t j = 0; j < wl; ++j) m2.at(i, j) = a.at(i, j);
            for (size_t j = 0; j < wu; ++j) m2.at(i, wl + j) = b.at(i, j);
        }
        PolyMat c = block_scaled(s1.num, k, k + wl, 0, k2, d2);
        PolyMat d = block_scaled(s2.num, k, k + wu, 0, k2, d1);
        for (size_t j = 0; j < k2; ++j) {
            for (size_t i = 0; i < wl; ++i)
                m4.at(i, j) = poly_scale(c.at(i, j), FieldElement(-1));
            for (size_t i = 0; i < wu; ++i)
                m4.at(wl + i, j) = poly_scale(d.at(i, j), FieldElement(-1));
        }
        PolyMat e = block_scaled(s1.num, k, k + wl, k2, k2 + wu, d2);
        PolyMat f = block_scaled(s2.num, k, k + wu, k2, k2 + wl, d1);
        for (size_t i = 0; i < wl; ++i)
            for (size_t j = 0; j < wu; ++j)
                m3.at(i, wl + j) = poly_scale(e.at(i, j), FieldElement(-1));
        for (size_t i = 0; i < wu; ++i)
            for (size_t j = 0; j < wl; ++j)
                m3.at(wl + i, j) = poly_scale(f.at(i, j), FieldElement(-1));
    }
    PolyMat W = m3;
    for (size_t i = 0; i < w; ++i) W.at(i, i) = poly_add(W.at(i, i), qq);

    // evaluation-interpolation for det W and P = m2 adj(W) m4
    const size_t npts = (w + 1) * n + 1;
    Vec pts, detvals;
    std::vector<DenseMatrix> pvals;
    for (u64 xi = 0; pts.size() < npts; ++xi) {
        FieldElement x((i64)xi);
        if (qq.eval(x).is_zero()) continue;
        DenseMatrix Wx = pm_eval(W, x);
        FieldElement dw = dense_det(Wx);
        if (dw.is_zero()) continue;
        DenseMatrix pv =
            mat_mul(mat_mul(pm_eval(m2, x), mat_inverse(Wx)), pm_eval(m4, x));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k2; ++j) pv.at(i, j) *= dw;
        pts.push_back(x);
        detvals.push_back(dw);
        pvals.push_back(std::move(pv));
    }
    Poly detw = lagrange_interpolate(pts, detvals);

    Poly qw1 = Poly::one();
    for (size_t i = 0; i + 1 < w; ++i) qw1 = poly_mul(qw1, qq);
    Poly qw = poly_mul(qw1, qq);

    Resolvent out;
    out.den = exact_div(detw, qw1);
    out.num = PolyMat(k, k2);
    Vec vals(pts.size());
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k2; ++j) {
            for (size_t s = 0; s < pts.size(); ++s)
                vals[s] = pvals[s].at(i, j);
            Poly pij = lagrange_interpolate(pts, vals);
            out.num.at(i, j) = exact_div(
                poly_sub(poly_mul(detw, m1.at(i, j)), pij), qw);
        }
    return out;
}

void check_displacement_unique(const DisplacementRep& rep) {
    Poly cl = char_poly(rep.L);
    Poly cr = char_poly(rep.R);
    Poly g = rep.op == DispOp::Sylvester
                 ? poly_gcd(cl, cr)
                 : poly_gcd(cl, poly_rev(cr, rep.cols() + 1));
    if (g.deg() > 0)
        throw std::runtime_error("displacement operator not invertible");
}

RecurrenceSpec displacement_to_recurrence(const DisplacementRep& rep) {
    const size_t m = rep.rows(), n = rep.cols(), r = rep.rank();
    BandMatrix L;
    DenseMatrix C = rep.C;
    if (rep.L.kind == RKind::Band) {
        L = rep.L.band;
        if (!L.lower) {
            L = band_reverse(L);
            C = reverse_rows(C);
        }
    } else if (rep.L.kind == RKind::Diagonal) {
        L.n = m;
        L.delta = 0;
        L.lower = true;
        L.diags = {rep.L.points};
    } else {
        throw std::invalid_argument(
            "displacement recurrence requires a banded row operator");
    }

    RecurrenceSpec spec;
    spec.rows = m;
    spec.cols = n;
    spec.t = L.delta;
    spec.r = r;
    spec.d = 0;
    spec.dbar = 1;
    spec.g.resize(m);
    for (size_t i = 0; i < m; ++i) {
        size_t jmax = std::min(L.delta, i);
        spec.g[i].resize(jmax + 1);
        FieldElement dii = L.diag_entry(0, i);
        if (rep.op == DispOp::Sylvester)
            spec.g[i][0] = Poly({dii, FieldElement(-1)});
        else
            spec.g[i][0] = Poly({FieldElement(1), -dii});
        for (size_t j = 1; j <= jmax; ++j) {
            FieldElement lij = L.diag_entry(j, i - j);
            if (rep.op == DispOp::Sylvester)
                spec.g[i][j] = Poly::constant(-lij);
            else
                spec.g[i][j] = Poly({FieldElement(0), lij});
        }
    }
    spec.C = C;
    spec.D = rep.D;
    spec.R = r_transpose(rep.R);
    return spec;
}

DisplacementRep transpose_rep(const DisplacementRep& rep) {
    DisplacementRep out;
    out.op = rep.op;
    out.L = r_transpose(rep.R);
    out.R = r_transpose(rep.L);
    out.C = rep.op == DispOp::Sylvester ? mat_neg(mat_transpose(rep.D))
                                        : mat_transpose(rep.D);
    out.D = mat_transpose(rep.C);
    return out;
}

namespace {

// matrix(rep)^T b: row recurrence when L is banded or diagonal, resolvent
// of a quasiseparable L otherwise
Vec transposed_product(const DisplacementRep& rep, const Vec& b) {
    const size_t m = rep.rows(), n = rep.cols();
    if (rep.L.kind == RKind::Band || rep.L.kind == RKind::Diagonal) {
        bool flip = rep.L.kind == RKind::Band && !rep.L.band.lower;
        RecurrenceSpec spec = displacement_to_recurrence(rep);
        DyadicTree tree = build_dyadic_tree(spec);
        return transpose_mult(spec, tree, flip ? reversed(b) : b);
    }
    QuasiPtr lq = rep.L.kind == RKind::Quasi
                      ? rep.L.quasi
                      : quasisep_from_dense(r_to_dense(rep.L), 2);
    DenseMatrix B(m, 1);
    for (size_t i = 0; i < m; ++i) B.at(i, 0) = b[i];
    Resolvent res = resolvent(B, *lq, rep.C);
    Poly cr =
        r_has_modulus(rep.R) ? r_modulus(rep.R) : char_poly(rep.R);
    RDescriptor M = r_transpose(rep.R);
    Vec out(n, FieldElement(0));
    Poly dinv;
    if (rep.op == DispOp::Sylvester)
        dinv = poly_inv_mod(poly_rem(res.den, cr), cr);
    else
        dinv = poly_inv_mod(poly_rem(poly_rev(res.den, m + 1), cr), cr);
    for (size_t kk = 0; kk < rep.rank(); ++kk) {
        Poly numk = res.num.at(0, kk);
        Poly f;
        if (rep.op == DispOp::Sylvester)
            f = poly_rem(poly_mul(poly_scale(numk, FieldElement(-1)), dinv),
                         cr);
        else
            f = poly_rem(poly_mul(poly_rev(numk, m), dinv), cr);
        Vec dk(n);
        for (size_t j = 0; j < n; ++j) dk[j] = rep.D.at(kk, j);
        Vec fv(n, FieldElement(0));
        for (size_t j = 0; j < n && j < f.c.size(); ++j) fv[j] = f.c[j];
        Vec term = krylov_apply(M, dk, fv);
        for (size_t j = 0; j < n; ++j) out[j] += term[j];
    }
    return out;
}

} // namespace

Vec disp_mult(const DisplacementRep& rep, const Vec& b, bool transposed) {
    check_displacement_unique(rep);
    if (transposed) {
        if (b.size() != rep.rows())
            throw std::invalid_argument("matrix shape mismatch");
        return transposed_product(rep, b);
    }
    if (b.size() != rep.cols())
        throw std::invalid_argument("matrix shape mismatch");
    if (rep.L.kind == RKind::Band || rep.L.kind == RKind::Diagonal) {
        bool flip = rep.L.kind == RKind::Band && !rep.L.band.lower;
        RecurrenceSpec spec = displacement_to_recurrence(rep);
        DyadicTree tree = build_dyadic_tree(spec);
        Vec out = forward_mult(spec, tree, b);
        return flip ? reversed(out) : out;
    }
    return transposed_product(transpose_rep(rep), b);
}

} // namespace recwidth
