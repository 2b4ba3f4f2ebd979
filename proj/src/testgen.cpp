#include "recwidth/testgen.hpp"

#include <set>
#include <stdexcept>

#include "recwidth/krylov.hpp"

namespace recwidth {

namespace {

Poly random_poly(size_t max_deg, SplitMix64& rng) {
    Vec c(max_deg + 1);
    for (auto& v : c) v = rng.field_element();
    return Poly(c);
}

Vec distinct_nonzero(size_t n, SplitMix64& rng, std::set<u32>& used) {
    Vec out(n);
    for (size_t i = 0; i < n; ++i) {
        FieldElement v = rng.nonzero();
        while (used.count(v.value)) v = rng.nonzero();
        used.insert(v.value);
        out[i] = v;
    }
    return out;
}

BandMatrix random_band(size_t n, size_t delta, bool lower, const Vec& diag,
                       SplitMix64& rng) {
    BandMatrix b;
    b.n = n;
    b.delta = std::min(delta, n > 0 ? n - 1 : 0);
    b.lower = lower;
    b.diags.resize(b.delta + 1);
    b.diags[0] = diag;
    for (size_t j = 1; j <= b.delta; ++j) {
        b.diags[j].resize(n - j);
        for (auto& v : b.diags[j]) v = rng.field_element();
    }
    return b;
}

// lower-kind descriptor with a prescribed spectrum
RDescriptor spectral_descriptor(RKind kind, size_t n, const Vec& eigs,
                                SplitMix64& rng) {
    switch (kind) {
    case RKind::Diagonal: return RDescriptor::diagonal(eigs);
    case RKind::Band:
        return RDescriptor::banded(
            random_band(n, 1 + rng.below(2), rng.below(2) == 0, eigs, rng));
    case RKind::Quasi:
        return RDescriptor::quasisep(
            gen_quasisep_triangular(n, 1 + rng.below(2), eigs, rng));
    default:
        throw std::invalid_argument("unsupported operator kind");
    }
}

} // namespace

RDescriptor gen_descriptor(RKind kind, size_t n, SplitMix64& rng) {
    switch (kind) {
    case RKind::Shift: {
        RDescriptor r = RDescriptor::shift(n);
        r.transposed = rng.below(2) == 0;
        return r;
    }
    case RKind::Companion: {
        Vec c(n + 1);
        for (size_t i = 0; i < n; ++i) c[i] = rng.field_element();
        c[n] = FieldElement(1);
        RDescriptor r = RDescriptor::companion(Poly(c));
        r.transposed = rng.below(2) == 0;
        return r;
    }
    case RKind::Diagonal: {
        std::set<u32> used;
        Vec pts(n);
        for (size_t i = 0; i < n; ++i) {
            FieldElement v = rng.field_element();
            while (used.count(v.value)) v = rng.field_element();
            used.insert(v.value);
            pts[i] = v;
        }
        return RDescriptor::diagonal(pts);
    }
    case RKind::Band: {
        Vec diag(n);
        for (auto& v : diag) v = rng.field_element();
        return RDescriptor::banded(
            random_band(n, 1 + rng.below(2), rng.below(2) == 0, diag, rng));
    }
    case RKind::Quasi:
        return RDescriptor::quasisep(gen_quasisep(n, 1 + rng.below(2), rng));
    }
    throw std::invalid_argument("unsupported operator kind");
}

RecurrenceSpec gen_spec(RKind kind, size_t n, size_t t, size_t r,
                        bool hard_scale, SplitMix64& rng) {
    RecurrenceSpec spec;
    spec.rows = n;
    spec.cols = n;
    spec.t = t;
    spec.r = r;
    spec.d = 1;
    spec.dbar = hard_scale ? 1 : 0;
    spec.R = gen_descriptor(kind, n, rng);

    bool linear_lead = hard_scale && (kind == RKind::Shift ||
                                      kind == RKind::Companion ||
                                      kind == RKind::Diagonal);
    Poly cpoly = linear_lead ? char_poly(spec.R) : Poly();

    spec.g.resize(n);
    for (size_t i = 0; i < n; ++i) {
        spec.g[i].assign(std::min(t, i) + 1, Poly());
        if (!hard_scale) {
            spec.g[i][0] = Poly::one();
        } else if (linear_lead) {
            for (;;) {
                Poly cand = poly_add(Poly::monomial(1, rng.nonzero()),
                                     Poly::constant(rng.field_element()));
                if (poly_gcd(cand, cpoly).deg() == 0) {
                    spec.g[i][0] = cand;
                    break;
                }
            }
        } else {
            spec.g[i][0] = Poly::constant(rng.nonzero());
        }
        for (size_t j = 1; j <= std::min(t, i); ++j)
            spec.g[i][j] = random_poly(j * spec.d + spec.dbar, rng);
    }
    spec.C = DenseMatrix(n, r);
    spec.D = DenseMatrix(r, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < r; ++k) spec.C.at(i, k) = rng.field_element();
    for (size_t k = 0; k < r; ++k)
        for (size_t j = 0; j < n; ++j) spec.D.at(k, j) = rng.field_element();
    return spec;
}

QuasiPtr gen_quasisep(size_t n, size_t ord, SplitMix64& rng) {
    DenseMatrix a(n, n);
    std::vector<Vec> ul(ord, Vec(n)), vl(ord, Vec(n)), uu(ord, Vec(n)),
        vu(ord, Vec(n));
    for (size_t k = 0; k < ord; ++k)
        for (size_t i = 0; i < n; ++i) {
            ul[k][i] = rng.field_element();
            vl[k][i] = rng.field_element();
            uu[k][i] = rng.field_element();
            vu[k][i] = rng.field_element();
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) {
                a.at(i, j) = rng.field_element();
            } else if (i > j) {
                FieldElement acc(0);
                for (size_t k = 0; k < ord; ++k) acc += ul[k][i] * vl[k][j];
                a.at(i, j) = acc;
            } else {
                FieldElement acc(0);
                for (size_t k = 0; k < ord; ++k) acc += uu[k][i] * vu[k][j];
                a.at(i, j) = acc;
            }
        }
    return quasisep_from_dense(a, ord);
}

QuasiPtr gen_quasisep_triangular(size_t n, size_t ord, const Vec& diag,
                                 SplitMix64& rng) {
    DenseMatrix a(n, n);
    std::vector<Vec> ul(ord, Vec(n)), vl(ord, Vec(n));
    for (size_t k = 0; k < ord; ++k)
        for (size_t i = 0; i < n; ++i) {
            ul[k][i] = rng.field_element();
            vl[k][i] = rng.field_element();
        }
    for (size_t i = 0; i < n; ++i) {
        a.at(i, i) = diag[i];
        for (size_t j = 0; j < i; ++j) {
            FieldElement acc(0);
            for (size_t k = 0; k < ord; ++k) acc += ul[k][i] * vl[k][j];
            a.at(i, j) = acc;
        }
    }
    return quasisep_from_dense(a, ord);
}

DisplacementRep gen_displacement(DispOp op, RKind l_kind, RKind r_kind,
                                 size_t n, size_t r, SplitMix64& rng) {
    if (l_kind == RKind::Shift || l_kind == RKind::Companion)
        throw std::invalid_argument("unsupported operator kind");
    DisplacementRep rep;
    rep.op = op;
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::set<u32> used;
        Vec eigs_l = distinct_nonzero(n, rng, used);
        rep.L = spectral_descriptor(l_kind, n, eigs_l, rng);
        if (r_kind == RKind::Shift || r_kind == RKind::Companion) {
            rep.R = gen_descriptor(r_kind, n, rng);
        } else {
            Vec eigs_r = distinct_nonzero(n, rng, used);
            rep.R = spectral_descriptor(r_kind, n, eigs_r, rng);
        }
        try {
            check_displacement_unique(rep);
        } catch (const std::runtime_error&) {
            continue;
        }
        rep.C = DenseMatrix(n, r);
        rep.D = DenseMatrix(r, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < r; ++k) rep.C.at(i, k) = rng.field_element();
        for (size_t k = 0; k < r; ++k)
            for (size_t j = 0; j < n; ++j) rep.D.at(k, j) = rng.field_element();
        return rep;
    }
    throw std::runtime_error("displacement operator not invertible");
}

RecurrenceSpec gen_solve_spec(size_t n, size_t t, SplitMix64& rng) {
    RecurrenceSpec spec;
    spec.rows = n;
    spec.cols = n;
    spec.t = t;
    spec.r = t;
    spec.d = 1;
    spec.dbar = 0;
    spec.R = RDescriptor::shift(n);
    spec.g.resize(n);
    for (size_t i = 0; i < n; ++i) {
        spec.g[i].assign(std::min(t, i) + 1, Poly());
        spec.g[i][0] = Poly::one();
        for (size_t j = 1; j <= std::min(t, i); ++j) {
            // pin the top coefficients so every diagonal entry stays 1
            Vec c(j + 1);
            for (size_t e = 0; e < j; ++e) c[e] = rng.field_element();
            c[j] = (j == 1) ? FieldElement(1) : FieldElement(0);
            spec.g[i][j] = Poly(c);
        }
    }
    // seed rows with deg(a_u) <= u and unit diagonal
    std::vector<Poly> rows(t);
    for (size_t u = 0; u < std::min(t, n); ++u) {
        Vec c(u + 1);
        for (size_t e = 0; e < u; ++e) c[e] = rng.field_element();
        c[u] = FieldElement(1);
        rows[u] = Poly(c);
    }
    spec.C = DenseMatrix(n, t);
    spec.D = DenseMatrix(t, n);
    for (size_t u = 0; u < std::min(t, n); ++u) {
        spec.C.at(u, u) = FieldElement(1);
        Poly f = rows[u];
        for (size_t v = 1; v <= u; ++v)
            f = poly_sub(f, poly_mul(spec.g[u][v], rows[u - v]));
        for (size_t j = 0; j <= (size_t)std::max(f.deg(), 0); ++j)
            spec.D.at(u, j) = f.at(j);
    }
    return spec;
}

Vec gen_vec(size_t n, SplitMix64& rng) {
    Vec v(n);
    for (auto& x : v) x = rng.field_element();
    return v;
}

} // namespace recwidth
