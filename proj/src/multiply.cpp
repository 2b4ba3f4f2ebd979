#include "recwidth/multiply.hpp"

#include <functional>
#include <stdexcept>

#include "recwidth/krylov.hpp"

namespace recwidth {

namespace {

Vec poly_to_vec(const Poly& p, size_t n) {
    Vec out(n, FieldElement(0));
    for (size_t i = 0; i < n && i < p.c.size(); ++i) out[i] = p.c[i];
    return out;
}

// inverse of the full scale product modulo the operator's modulus
Poly root_gamma(const DyadicTree& tree, const Poly& c) {
    Poly s = poly_rem(tree.S[tree.levels() - 1][0], c);
    try {
        return poly_inv_mod(s, c);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("leading coefficients share roots with modulus");
    }
}

BilinearState bilinear_leaf(const RecurrenceSpec& spec, const DyadicTree& tree,
                            const std::vector<Vec>& bs, size_t pos) {
    const size_t tw = spec.width();
    const size_t r = spec.r;
    const size_t P = bs.size();
    BilinearState st;
    st.P = PolyMat(P, tw);
    st.Q = PolyMat(tw, r);
    st.H = PolyMat(P, r);
    const PolyMat& T = tree.T[0][pos];
    for (size_t k = 0; k < r; ++k) {
        FieldElement c = spec.c_entry(pos, k);
        if (c.is_zero()) continue;
        for (size_t a = 0; a < tw; ++a) {
            const Poly& e = T.at(a, tw - 1);
            if (!e.is_zero()) st.Q.at(a, k) = poly_scale(e, c);
        }
    }
    for (size_t p = 0; p < P; ++p) {
        FieldElement bv =
            pos < bs[p].size() ? bs[p][pos] : FieldElement(0);
        if (bv.is_zero()) continue;
        st.P.at(p, tw - 1) = Poly::constant(bv);
        for (size_t k = 0; k < r; ++k) {
            FieldElement c = spec.c_entry(pos, k);
            if (!c.is_zero()) st.H.at(p, k) = Poly::constant(bv * c);
        }
    }
    return st;
}

BilinearState bilinear_node(const RecurrenceSpec& spec, const DyadicTree& tree,
                            const std::vector<Vec>& bs, size_t lv, size_t idx) {
    if (lv == 0) return bilinear_leaf(spec, tree, bs, idx);
    BilinearState lo = bilinear_node(spec, tree, bs, lv - 1, 2 * idx);
    BilinearState hi = bilinear_node(spec, tree, bs, lv - 1, 2 * idx + 1);
    const PolyMat& TL = tree.T[lv - 1][2 * idx];
    const PolyMat& TR = tree.T[lv - 1][2 * idx + 1];
    const Poly& SL = tree.S[lv - 1][2 * idx];
    const Poly& SR = tree.S[lv - 1][2 * idx + 1];
    BilinearState st;
    st.P = pm_add(pm_scale(lo.P, SR), pm_mul(hi.P, TL));
    st.Q = pm_add(pm_mul(TR, lo.Q), pm_scale(hi.Q, SL));
    st.H = pm_add(pm_add(pm_scale(lo.H, SR), pm_scale(hi.H, SL)),
                  pm_mul(hi.P, lo.Q));
    return st;
}

// H entries of the root sweep reduced by the common denominator
std::vector<std::vector<Poly>> reduced_cores(const RecurrenceSpec& spec,
                                             const DyadicTree& tree,
                                             const std::vector<Vec>& bs,
                                             const Poly& c) {
    Poly gamma = root_gamma(tree, c);
    BilinearState st =
        bilinear_node(spec, tree, bs, tree.levels() - 1, 0);
    std::vector<std::vector<Poly>> F(bs.size(),
                                     std::vector<Poly>(spec.r));
    for (size_t p = 0; p < bs.size(); ++p)
        for (size_t k = 0; k < spec.r; ++k)
            F[p][k] = poly_rem(
                poly_mul(gamma, poly_rem(st.H.at(p, k), c)), c);
    return F;
}

} // namespace

std::vector<Poly> bilinear_core(const RecurrenceSpec& spec,
                                const DyadicTree& tree, const Vec& b) {
    if (b.size() != spec.rows)
        throw std::invalid_argument("matrix shape mismatch");
    const Poly& c = tree.cmod;
    return reduced_cores(spec, tree, {b}, c)[0];
}

Vec transpose_mult(const RecurrenceSpec& spec, const DyadicTree& tree,
                   const Vec& b) {
    if (b.size() != spec.rows)
        throw std::invalid_argument("matrix shape mismatch");
    const size_t n = spec.cols;
    const Poly& c = tree.cmod;
    std::vector<Poly> F = reduced_cores(spec, tree, {b}, c)[0];
    Vec out(n, FieldElement(0));
    for (size_t k = 0; k < spec.r; ++k) {
        Vec dk(n);
        for (size_t j = 0; j < n; ++j) dk[j] = spec.D.at(k, j);
        Vec term = krylov_apply(spec.R, dk, poly_to_vec(F[k], n));
        for (size_t j = 0; j < n; ++j) out[j] += term[j];
    }
    return out;
}

DenseMatrix transpose_mult_batched(const RecurrenceSpec& spec,
                                   const DyadicTree& tree,
                                   const DenseMatrix& B) {
    if (B.rows != spec.rows)
        throw std::invalid_argument("matrix shape mismatch");
    const size_t n = spec.cols;
    const size_t P = B.cols;
    std::vector<Vec> bs(P, Vec(spec.rows));
    for (size_t p = 0; p < P; ++p)
        for (size_t i = 0; i < spec.rows; ++i) bs[p][i] = B.at(i, p);
    const Poly& c = tree.cmod;
    auto F = reduced_cores(spec, tree, bs, c);
    std::vector<KrylovOperator> ops;
    ops.reserve(spec.r);
    for (size_t k = 0; k < spec.r; ++k) {
        Vec dk(n);
        for (size_t j = 0; j < n; ++j) dk[j] = spec.D.at(k, j);
        ops.push_back(make_krylov(spec.R, std::move(dk)));
    }
    DenseMatrix out(n, P);
    for (size_t p = 0; p < P; ++p)
        for (size_t k = 0; k < spec.r; ++k) {
            Vec term = krylov_op_apply(ops[k], poly_to_vec(F[p][k], n));
            for (size_t j = 0; j < n; ++j) out.at(j, p) += term[j];
        }
    return out;
}

namespace {

// Truncated coefficient windows for the forward sweep. Every stored array of
// size B holds the true coefficients [Lbar - B, Lbar) of the polynomial it
// stands for, so an array's base offset is implicit in its length.

void acc_mul_slice(Vec& target, const Vec& stored, const Poly& f) {
    if (f.is_zero()) return;
    const size_t bt = target.size();
    const size_t bs = stored.size();
    if (bs < bt)
        throw std::logic_error("forward sweep budget underflow");
    Poly conv = poly_mul(Poly(stored), f);
    for (size_t w = 0; w < bt; ++w) target[w] += conv.at(bs - bt + w);
}

Vec mul_slice(const Vec& stored, const Poly& f, size_t bt) {
    Vec out(bt, FieldElement(0));
    acc_mul_slice(out, stored, f);
    return out;
}

} // namespace

Vec forward_mult(const RecurrenceSpec& spec, const DyadicTree& tree,
                 const Vec& b) {
    if (b.size() != spec.cols)
        throw std::invalid_argument("matrix shape mismatch");
    const size_t n = spec.cols;
    const size_t mp = tree.m;
    const size_t tw = spec.width();
    const size_t r = spec.r;
    const size_t db = spec.d + spec.dbar;
    const size_t lbar = db * (mp + tw) + 1;

    const Poly& c = tree.cmod;
    Poly gamma = root_gamma(tree, c);
    Vec gvec = poly_to_vec(gamma, n);

    // rho_k = reversal of the moment sequence b^T R^m gamma(R) d_k
    std::vector<Vec> rho(r);
    for (size_t k = 0; k < r; ++k) {
        Vec dk(n);
        for (size_t j = 0; j < n; ++j) dk[j] = spec.D.at(k, j);
        Vec dhat = krylov_apply(spec.R, dk, gvec);
        Vec shat = krylov_apply_transpose(spec.R, dhat, b);
        Vec ext = extend_by_modulus(shat, c, lbar);
        rho[k] = Vec(ext.rbegin(), ext.rend());
    }

    auto wbud = [&](size_t len, size_t a) {
        return db * (len + tw - 1 - a) + 1;
    };
    auto cbud = [&](size_t len) { return db * (len - 1) + 1; };

    // root state over [0 : mp)
    std::vector<Vec> root(tw + r);
    for (size_t a = 0; a + 1 < tw; ++a)
        root[a] = Vec(wbud(mp, a), FieldElement(0));
    root[tw - 1] = Vec(wbud(mp, tw - 1), FieldElement(0));
    for (size_t k = 0; k < r; ++k) {
        FieldElement c0 = spec.c_entry(0, k);
        if (!c0.is_zero())
            acc_mul_slice(root[tw - 1], rho[k], Poly::constant(c0));
        root[tw + k] = mul_slice(rho[k], spec.lead_coeff(0), cbud(mp));
    }

    Vec out(spec.rows, FieldElement(0));
    std::function<void(size_t, size_t, std::vector<Vec>)> descend =
        [&](size_t lv, size_t idx, std::vector<Vec> st) {
            if (lv == 0) {
                if (idx < spec.rows) out[idx] = st[tw - 1].back();
                return;
            }
            const size_t nh = size_t(1) << (lv - 1);
            const PolyMat& tl = tree.T[lv - 1][2 * idx];
            const Poly& sr = tree.S[lv - 1][2 * idx + 1];
            const Poly& sshift = tree.Sshift[lv - 1][2 * idx];
            const PolyMat& kl = tree.kcol[lv - 1][2 * idx];

            std::vector<Vec> left(tw + r);
            for (size_t a = 0; a < tw; ++a)
                left[a] = mul_slice(st[a], sr, wbud(nh, a));
            for (size_t k = 0; k < r; ++k)
                left[tw + k] = mul_slice(st[tw + k], sr, cbud(nh));
            descend(lv - 1, 2 * idx, std::move(left));

            std::vector<Vec> right(tw + r);
            for (size_t a = 0; a < tw; ++a) {
                right[a] = Vec(wbud(nh, a), FieldElement(0));
                for (size_t a2 = 0; a2 < tw; ++a2)
                    acc_mul_slice(right[a], st[a2], tl.at(a, a2));
                for (size_t k = 0; k < r; ++k)
                    acc_mul_slice(right[a], st[tw + k], kl.at(a, k));
            }
            for (size_t k = 0; k < r; ++k)
                right[tw + k] = mul_slice(st[tw + k], sshift, cbud(nh));
            descend(lv - 1, 2 * idx + 1, std::move(right));
        };
    descend(tree.levels() - 1, 0, std::move(root));
    return out;
}

} // namespace recwidth
