#include "recwidth/recurrence.hpp"

#include <bit>
#include <stdexcept>

#include "recwidth/krylov.hpp"

namespace recwidth {

RDescriptor RDescriptor::shift(size_t n) {
    RDescriptor r;
    r.kind = RKind::Shift;
    r.n = n;
    return r;
}

RDescriptor RDescriptor::companion(Poly modulus) {
    if (modulus.deg() < 1) throw std::invalid_argument("zero modulus");
    if (modulus.lead() != FieldElement(1))
        throw std::invalid_argument("companion modulus must be monic");
    RDescriptor r;
    r.kind = RKind::Companion;
    r.n = (size_t)modulus.deg();
    r.modulus = std::move(modulus);
    return r;
}

RDescriptor RDescriptor::diagonal(Vec points) {
    RDescriptor r;
    r.kind = RKind::Diagonal;
    r.n = points.size();
    r.points = std::move(points);
    return r;
}

RDescriptor RDescriptor::banded(BandMatrix band) {
    RDescriptor r;
    r.kind = RKind::Band;
    r.n = band.n;
    r.band = std::move(band);
    return r;
}

RDescriptor RDescriptor::quasisep(QuasiPtr q) {
    RDescriptor r;
    r.kind = RKind::Quasi;
    r.n = q->n;
    r.quasi = std::move(q);
    return r;
}

DenseMatrix band_to_dense(const BandMatrix& b) {
    DenseMatrix m(b.n, b.n);
    for (size_t j = 0; j <= b.delta && j < b.n; ++j)
        for (size_t k = 0; k + j < b.n; ++k) {
            if (b.lower)
                m.at(k + j, k) = b.diags[j][k];
            else
                m.at(k, k + j) = b.diags[j][k];
        }
    return m;
}

BandMatrix band_transpose(const BandMatrix& b) {
    BandMatrix o = b;
    o.lower = !b.lower;
    return o;
}

DenseMatrix r_to_dense(const RDescriptor& R) {
    DenseMatrix m(R.n, R.n);
    switch (R.kind) {
    case RKind::Shift:
        for (size_t i = 0; i + 1 < R.n; ++i) m.at(i + 1, i) = 1;
        break;
    case RKind::Companion:
        for (size_t i = 0; i + 1 < R.n; ++i) m.at(i + 1, i) = 1;
        for (size_t i = 0; i < R.n; ++i) m.at(i, R.n - 1) = -R.modulus.at(i);
        break;
    case RKind::Diagonal:
        for (size_t i = 0; i < R.n; ++i) m.at(i, i) = R.points[i];
        return m;
    case RKind::Band:
        return band_to_dense(R.band);
    case RKind::Quasi:
        return quasisep_to_dense(*R.quasi);
    }
    return R.transposed ? mat_transpose(m) : m;
}

RDescriptor r_transpose(const RDescriptor& R) {
    RDescriptor o = R;
    switch (R.kind) {
    case RKind::Shift:
    case RKind::Companion:
        o.transposed = !R.transposed;
        break;
    case RKind::Diagonal:
        break;
    case RKind::Band:
        o.band = band_transpose(R.band);
        break;
    case RKind::Quasi:
        o.quasi = quasi_transpose(*R.quasi);
        break;
    }
    return o;
}

Vec r_apply(const RDescriptor& R, const Vec& x) {
    if (x.size() != R.n) throw std::invalid_argument("matrix shape mismatch");
    size_t n = R.n;
    Vec y(n, FieldElement(0));
    switch (R.kind) {
    case RKind::Shift:
        if (!R.transposed) {
            for (size_t i = 1; i < n; ++i) y[i] = x[i - 1];
        } else {
            for (size_t i = 0; i + 1 < n; ++i) y[i] = x[i + 1];
        }
        break;
    case RKind::Companion:
        if (!R.transposed) {
            for (size_t i = 1; i < n; ++i) y[i] = x[i - 1];
            for (size_t i = 0; i < n; ++i) y[i] -= R.modulus.at(i) * x[n - 1];
        } else {
            for (size_t i = 0; i + 1 < n; ++i) y[i] = x[i + 1];
            for (size_t j = 0; j < n; ++j) y[n - 1] -= R.modulus.at(j) * x[j];
        }
        break;
    case RKind::Diagonal:
        for (size_t i = 0; i < n; ++i) y[i] = R.points[i] * x[i];
        break;
    case RKind::Band:
        for (size_t j = 0; j <= R.band.delta && j < n; ++j)
            for (size_t k = 0; k + j < n; ++k) {
                if (R.band.lower)
                    y[k + j] += R.band.diags[j][k] * x[k];
                else
                    y[k] += R.band.diags[j][k] * x[k + j];
            }
        break;
    case RKind::Quasi:
        return quasi_matvec(*R.quasi, x);
    }
    return y;
}

bool r_has_modulus(const RDescriptor& R) {
    return R.kind == RKind::Shift || R.kind == RKind::Companion;
}

Poly r_modulus(const RDescriptor& R) {
    if (R.kind == RKind::Shift) return Poly::monomial(R.n);
    if (R.kind == RKind::Companion) return R.modulus;
    throw std::invalid_argument("descriptor has no explicit modulus");
}

static void check_lead_invertible(const RecurrenceSpec& spec, const Poly& g0) {
    const char* msg = "leading coefficients share roots with modulus";
    switch (spec.R.kind) {
    case RKind::Shift:
        if (g0.at(0).is_zero()) throw std::runtime_error(msg);
        break;
    case RKind::Companion: {
        if (g0.deg() == 0) return;
        Poly gc = poly_gcd(g0, spec.R.modulus);
        if (gc.deg() != 0) throw std::runtime_error(msg);
        break;
    }
    case RKind::Diagonal:
        for (const FieldElement& z : spec.R.points)
            if (g0.eval(z).is_zero()) throw std::runtime_error(msg);
        break;
    case RKind::Band:
        for (const FieldElement& z : spec.R.band.diags[0])
            if (g0.eval(z).is_zero()) throw std::runtime_error(msg);
        break;
    case RKind::Quasi:
        break; // no cheap spectral access; verified downstream by use
    }
}

void validate_spec(const RecurrenceSpec& spec) {
    if (spec.rows == 0 || spec.cols == 0)
        throw std::invalid_argument("empty recurrence spec");
    if (spec.R.n != spec.cols)
        throw std::invalid_argument("descriptor size does not match row length");
    if (spec.g.size() != spec.rows)
        throw std::invalid_argument("coefficient row count mismatch");
    if (spec.C.rows != spec.rows || spec.C.cols != spec.r ||
        spec.D.rows != spec.r || spec.D.cols != spec.cols)
        throw std::invalid_argument("error factor shape mismatch");
    for (size_t i = 0; i < spec.rows; ++i) {
        size_t expect = std::min(spec.t, i) + 1;
        if (spec.g[i].size() != expect)
            throw std::invalid_argument("coefficient count mismatch in row");
        if (spec.g[i][0].is_zero())
            throw std::invalid_argument("zero leading coefficient");
        for (size_t j = 0; j < spec.g[i].size(); ++j) {
            int bound = (int)(spec.d * j + spec.dbar);
            if (spec.g[i][j].deg() > bound)
                throw std::invalid_argument("coefficient degree exceeds profile");
        }
        if (spec.g[i][0].deg() > 0) // a nonzero constant is always invertible
            check_lead_invertible(spec, spec.g[i][0]);
    }
}

PolyMat pm_mul(const PolyMat& A, const PolyMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch");
    PolyMat C(A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t k = 0; k < A.cols; ++k) {
            const Poly& aik = A.at(i, k);
            if (aik.is_zero()) continue;
            for (size_t j = 0; j < B.cols; ++j) {
                if (B.at(k, j).is_zero()) continue;
                C.at(i, j) = poly_add(C.at(i, j), poly_mul(aik, B.at(k, j)));
            }
        }
    return C;
}

PolyMat pm_add(const PolyMat& A, const PolyMat& B) {
    if (A.rows != B.rows || A.cols != B.cols)
        throw std::invalid_argument("matrix shape mismatch");
    PolyMat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = poly_add(A.a[i], B.a[i]);
    return C;
}

PolyMat pm_scale(const PolyMat& A, const Poly& s) {
    PolyMat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = poly_mul(A.a[i], s);
    return C;
}

Poly scaled_coeff(const RecurrenceSpec& spec, size_t i, size_t j) {
    if (j == 0) return spec.lead_coeff(i);
    Poly v = spec.coeff(i, j);
    if (v.is_zero()) return v;
    for (size_t k = i - j + 1; k < i; ++k) v = poly_mul(v, spec.lead_coeff(k));
    return v;
}

TransitionMatrix transition(const RecurrenceSpec& spec, size_t i) {
    size_t t = spec.width();
    TransitionMatrix T(t, t);
    for (size_t a = 0; a + 1 < t; ++a) T.at(a, a + 1) = Poly::one();
    for (size_t j = 1; j <= t; ++j) T.at(t - 1, t - j) = scaled_coeff(spec, i, j);
    return T;
}

DyadicTree build_dyadic_tree(const RecurrenceSpec& spec) {
    DyadicTree tree;
    tree.m = std::bit_ceil(std::max<size_t>(spec.rows, 1));
    tree.t = spec.width();
    tree.r = spec.r;
    tree.cmod =
        r_has_modulus(spec.R) ? r_modulus(spec.R) : char_poly(spec.R);
    size_t levels = 1;
    while ((size_t(1) << (levels - 1)) < tree.m) ++levels;
    tree.T.resize(levels);
    tree.S.resize(levels);
    tree.Sshift.resize(levels);
    tree.kcol.resize(levels);

    tree.T[0].reserve(tree.m);
    for (size_t p = 0; p < tree.m; ++p) {
        tree.T[0].push_back(transition(spec, p + 1));
        tree.S[0].push_back(spec.lead_coeff(p));
        tree.Sshift[0].push_back(spec.lead_coeff(p + 1));
        PolyMat kc(tree.t, tree.r);
        for (size_t k = 0; k < tree.r; ++k)
            kc.at(tree.t - 1, k) = Poly::constant(spec.c_entry(p + 1, k));
        tree.kcol[0].push_back(std::move(kc));
    }
    for (size_t lv = 1; lv < levels; ++lv) {
        size_t count = tree.m >> lv;
        tree.T[lv].reserve(count);
        for (size_t b = 0; b < count; ++b) {
            const PolyMat& tl = tree.T[lv - 1][2 * b];
            const PolyMat& tr = tree.T[lv - 1][2 * b + 1];
            tree.T[lv].push_back(pm_mul(tr, tl));
            tree.S[lv].push_back(
                poly_mul(tree.S[lv - 1][2 * b], tree.S[lv - 1][2 * b + 1]));
            tree.Sshift[lv].push_back(poly_mul(tree.Sshift[lv - 1][2 * b],
                                               tree.Sshift[lv - 1][2 * b + 1]));
            tree.kcol[lv].push_back(
                pm_add(pm_mul(tr, tree.kcol[lv - 1][2 * b]),
                       pm_scale(tree.kcol[lv - 1][2 * b + 1],
                                tree.Sshift[lv - 1][2 * b])));
        }
    }
    return tree;
}

// in-order traversal multiplying covered nodes onto the accumulator (later
// positions compose on the left)
static void collect_transition(const DyadicTree& tree, size_t level, size_t node,
                               size_t lo, size_t hi, PolyMat& acc, bool& any) {
    size_t nlo = node << level, nhi = nlo + (size_t(1) << level);
    if (hi <= nlo || nhi <= lo) return;
    if (lo <= nlo && nhi <= hi) {
        acc = any ? pm_mul(tree.T[level][node], acc) : tree.T[level][node];
        any = true;
        return;
    }
    collect_transition(tree, level - 1, 2 * node, lo, hi, acc, any);
    collect_transition(tree, level - 1, 2 * node + 1, lo, hi, acc, any);
}

PolyMat ranged_transition(const DyadicTree& tree, size_t lo, size_t hi) {
    if (lo > hi || hi > tree.m)
        throw std::invalid_argument("transition range out of bounds");
    PolyMat acc;
    bool any = false;
    collect_transition(tree, tree.levels() - 1, 0, lo, hi, acc, any);
    return any ? acc : PolyMat::identity(tree.t);
}

static void collect_scale(const DyadicTree& tree, size_t level, size_t node,
                          size_t lo, size_t hi, Poly& acc) {
    size_t nlo = node << level, nhi = nlo + (size_t(1) << level);
    if (hi <= nlo || nhi <= lo) return;
    if (lo <= nlo && nhi <= hi) {
        acc = poly_mul(acc, tree.S[level][node]);
        return;
    }
    collect_scale(tree, level - 1, 2 * node, lo, hi, acc);
    collect_scale(tree, level - 1, 2 * node + 1, lo, hi, acc);
}

Poly ranged_scale(const DyadicTree& tree, size_t lo, size_t hi) {
    if (lo > hi || hi > tree.m)
        throw std::invalid_argument("scale range out of bounds");
    Poly acc = Poly::one();
    collect_scale(tree, tree.levels() - 1, 0, lo, hi, acc);
    return acc;
}

Poly structure_entry(const RecurrenceSpec& spec, const DyadicTree& tree,
                     size_t i, size_t j) {
    if (i >= spec.rows) throw std::invalid_argument("row index out of range");
    if (j > i) return Poly();
    Poly c = r_modulus(spec.R);
    size_t t = tree.t;
    Poly hp = poly_rem(ranged_transition(tree, j, i).at(t - 1, t - 1), c);
    Poly den = poly_rem(ranged_scale(tree, j, i + 1), c);
    Poly inv = poly_inv_mod(den, c);
    return poly_rem(poly_mul(hp, inv), c);
}

} // namespace recwidth
