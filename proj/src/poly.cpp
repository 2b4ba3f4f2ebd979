#include "recwidth/poly.hpp"

#include <cstdlib>

namespace recwidth {

namespace {

bool is_prime_u32(u32 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 pow_mod_u64(u64 b, u64 e, u64 p) {
    u64 r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

u32 find_primitive_root(u32 p) {
    std::vector<u32> factors;
    u32 m = p - 1;
    for (u32 d = 2; (u64)d * d <= m; ++d) {
        if (m % d == 0) {
            factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) factors.push_back(m);
    for (u32 g = 2; g < p; ++g) {
        bool ok = true;
        for (u32 q : factors)
            if (pow_mod_u64(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::runtime_error("no primitive root found");
}

FieldConfig make_field_config() {
    FieldConfig cfg;
    const char* env = std::getenv("RECWIDTH_FIELD_P");
    if (env && *env) {
        u64 v = std::strtoull(env, nullptr, 10);
        if (v < 3 || v > 0x7fffffffULL || !is_prime_u32((u32)v))
            throw std::runtime_error("RECWIDTH_FIELD_P must be a prime below 2^31");
        cfg.p = (u32)v;
        cfg.two_adic = 0;
        u32 m = cfg.p - 1;
        while (m % 2 == 0) {
            m /= 2;
            ++cfg.two_adic;
        }
        if (cfg.two_adic < 18)
            throw std::runtime_error("RECWIDTH_FIELD_P is not NTT-friendly (need 2^18 | p-1)");
        cfg.root = find_primitive_root(cfg.p);
    }
    return cfg;
}

} // namespace

const FieldConfig& field() {
    static const FieldConfig cfg = make_field_config();
    return cfg;
}

FieldElement Poly::eval(FieldElement x) const {
    FieldElement r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

Poly Poly::monomial(size_t k, FieldElement v) {
    Poly p;
    if (!v.is_zero()) {
        p.c.assign(k + 1, FieldElement(0));
        p.c[k] = v;
    }
    return p;
}

Poly poly_add(const Poly& p, const Poly& q) {
    Poly r;
    r.c.resize(std::max(p.c.size(), q.c.size()), FieldElement(0));
    for (size_t i = 0; i < p.c.size(); ++i) r.c[i] = p.c[i];
    for (size_t i = 0; i < q.c.size(); ++i) r.c[i] += q.c[i];
    r.trim();
    return r;
}

Poly poly_sub(const Poly& p, const Poly& q) {
    Poly r;
    r.c.resize(std::max(p.c.size(), q.c.size()), FieldElement(0));
    for (size_t i = 0; i < p.c.size(); ++i) r.c[i] = p.c[i];
    for (size_t i = 0; i < q.c.size(); ++i) r.c[i] -= q.c[i];
    r.trim();
    return r;
}

Poly poly_scale(const Poly& p, FieldElement s) {
    if (s.is_zero()) return Poly();
    Poly r = p;
    for (auto& v : r.c) v *= s;
    return r;
}

namespace {

void ntt(Vec& a, bool invert) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const FieldConfig& f = field();
    for (size_t len = 2; len <= n; len <<= 1) {
        FieldElement wlen = FieldElement::raw(f.root).pow((f.p - 1) / len);
        if (invert) wlen = wlen.inv();
        for (size_t i = 0; i < n; i += len) {
            FieldElement w = 1;
            for (size_t j = 0; j < len / 2; ++j) {
                FieldElement u = a[i + j];
                FieldElement v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (invert) {
        FieldElement ninv = FieldElement((i64)n).inv();
        for (auto& v : a) v *= ninv;
    }
}

Poly mul_schoolbook(const Poly& p, const Poly& q) {
    Poly r;
    r.c.assign(p.c.size() + q.c.size() - 1, FieldElement(0));
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i].is_zero()) continue;
        for (size_t j = 0; j < q.c.size(); ++j) r.c[i + j] += p.c[i] * q.c[j];
    }
    r.trim();
    return r;
}

constexpr int kNttThresholdDeg = 32;

} // namespace

Poly poly_mul(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return Poly();
    int rd = p.deg() + q.deg();
    // quadratic wins outright for small results and for thin factors, where
    // the transform padding dominates
    if (rd < kNttThresholdDeg ||
        std::min(p.c.size(), q.c.size()) <= 16)
        return mul_schoolbook(p, q);
    size_t need = (size_t)rd + 1, sz = 1;
    while (sz < need) sz <<= 1;
    if (sz > (size_t(1) << field().two_adic))
        throw std::runtime_error("transform size exceeds field capacity");
    Vec a(sz, FieldElement(0)), b(sz, FieldElement(0));
    std::copy(p.c.begin(), p.c.end(), a.begin());
    std::copy(q.c.begin(), q.c.end(), b.begin());
    ntt(a, false);
    ntt(b, false);
    for (size_t i = 0; i < sz; ++i) a[i] *= b[i];
    ntt(a, true);
    a.resize(need);
    Poly r;
    r.c = std::move(a);
    r.trim();
    return r;
}

Poly poly_trunc(const Poly& p, size_t k) {
    Poly r;
    r.c.assign(p.c.begin(), p.c.begin() + std::min(k, p.c.size()));
    r.trim();
    return r;
}

Poly poly_shift_down(const Poly& p, size_t k) {
    Poly r;
    if (p.c.size() > k) r.c.assign(p.c.begin() + k, p.c.end());
    return r;
}

Poly poly_shift_up(const Poly& p, size_t k) {
    if (p.is_zero()) return Poly();
    Poly r;
    r.c.assign(k, FieldElement(0));
    r.c.insert(r.c.end(), p.c.begin(), p.c.end());
    return r;
}

Poly poly_rev(const Poly& p, size_t n) {
    if ((size_t)(p.deg() + 1) > n && !p.is_zero())
        throw std::runtime_error("reversal window smaller than polynomial");
    Poly r;
    r.c.assign(n, FieldElement(0));
    for (size_t i = 0; i < p.c.size(); ++i) r.c[n - 1 - i] = p.c[i];
    r.trim();
    return r;
}

namespace {

bool is_power_monomial(const Poly& m) {
    for (size_t i = 0; i + 1 < m.c.size(); ++i)
        if (!m.c[i].is_zero()) return false;
    return !m.is_zero();
}

} // namespace

Poly poly_series_inv(const Poly& p, size_t k) {
    if (p.is_zero() || p.c[0].is_zero())
        throw std::runtime_error("not invertible modulo m");
    Poly b = Poly::constant(p.c[0].inv());
    size_t got = 1;
    while (got < k) {
        got = std::min(got * 2, k);
        // b <- b*(2 - p*b) mod X^got
        Poly pb = poly_mul(poly_trunc(p, got), b);
        pb = poly_trunc(pb, got);
        Poly two_minus = poly_sub(Poly::constant(2), pb);
        b = poly_trunc(poly_mul(b, two_minus), got);
    }
    return poly_trunc(b, k);
}

DivRem poly_divrem(const Poly& p, const Poly& m) {
    if (m.is_zero()) throw std::runtime_error("zero modulus");
    if (p.deg() < m.deg()) return {Poly(), p};
    if (is_power_monomial(m)) {
        size_t k = m.c.size() - 1;
        FieldElement leadinv = m.lead().inv();
        return {poly_scale(poly_shift_down(p, k), leadinv), poly_trunc(p, k)};
    }
    FieldElement lambda = m.lead();
    Poly mm = lambda == FieldElement(1) ? m : poly_scale(m, lambda.inv());
    size_t n = (size_t)p.deg(), k = (size_t)mm.deg();
    size_t qlen = n - k + 1;
    Poly q;
    if ((int)qlen * 2 + m.deg() < 256) {
        // schoolbook long division
        Poly r = p;
        q.c.assign(qlen, FieldElement(0));
        for (size_t i = n + 1; i-- > k;) {
            if (i >= r.c.size() || r.c[i].is_zero()) continue;
            FieldElement f = r.c[i];
            q.c[i - k] = f;
            for (size_t j = 0; j <= k; ++j) r.c[i - k + j] -= f * mm.c[j];
        }
        q.trim();
        r.trim();
        return {poly_scale(q, lambda.inv()), r};
    }
    Poly rp = poly_rev(p, n + 1);
    Poly rm = poly_rev(mm, k + 1);
    Poly rq = poly_trunc(poly_mul(rp, poly_series_inv(rm, qlen)), qlen);
    q = poly_rev(rq, qlen);
    Poly r = poly_sub(p, poly_mul(q, mm));
    r = poly_trunc(r, k); // exact: higher terms cancel
    return {poly_scale(q, lambda.inv()), r};
}

Poly poly_rem(const Poly& p, const Poly& m) { return poly_divrem(p, m).rem; }

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && a.lead() != FieldElement(1)) a = poly_scale(a, a.lead().inv());
    return a;
}

Poly poly_inv_mod(const Poly& p, const Poly& m) {
    if (m.is_zero()) throw std::runtime_error("zero modulus");
    if (is_power_monomial(m)) {
        Poly pr = poly_rem(p, m);
        if (pr.is_zero() || pr.c[0].is_zero())
            throw std::runtime_error("not invertible modulo m");
        // a unit scalar on X^k generates the same ideal, so one path suffices
        return poly_series_inv(pr, m.c.size() - 1);
    }
    // extended Euclid: maintain s*p + t*m = r; quadratic, used O(1) times per multiply
    Poly r0 = m, r1 = poly_rem(p, m);
    Poly s0, s1 = Poly::one();
    while (!r1.is_zero()) {
        DivRem dr = poly_divrem(r0, r1);
        Poly r2 = dr.rem;
        Poly s2 = poly_sub(s0, poly_mul(dr.quot, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.deg() != 0) throw std::runtime_error("not invertible modulo m");
    return poly_rem(poly_scale(s0, r0.c[0].inv()), m);
}

EvalTree build_eval_tree(const Vec& points) {
    EvalTree t;
    t.points = points;
    t.size = points.size();
    size_t w = 1;
    while (w < std::max<size_t>(t.size, 1)) w <<= 1;
    t.width = w;
    t.nodes.emplace_back();
    auto& leaves = t.nodes.back();
    leaves.reserve(w);
    for (size_t i = 0; i < w; ++i) {
        if (i < t.size) {
            Poly lin;
            lin.c = {-points[i], FieldElement(1)};
            leaves.push_back(std::move(lin));
        } else {
            leaves.push_back(Poly::one());
        }
    }
    while (t.nodes.back().size() > 1) {
        const auto& prev = t.nodes.back();
        std::vector<Poly> next;
        next.reserve(prev.size() / 2);
        for (size_t i = 0; i < prev.size(); i += 2)
            next.push_back(poly_mul(prev[i], prev[i + 1]));
        t.nodes.push_back(std::move(next));
    }
    return t;
}

namespace {

void eval_down(const EvalTree& t, size_t level, size_t node, const Poly& p, Vec& out) {
    Poly r = poly_rem(p, t.nodes[level][node]);
    if (level == 0) {
        size_t i = node;
        if (i < t.size) out[i] = r.is_zero() ? FieldElement(0) : r.c[0];
        return;
    }
    eval_down(t, level - 1, 2 * node, r, out);
    eval_down(t, level - 1, 2 * node + 1, r, out);
}

} // namespace

Vec multipoint_eval(const Poly& p, const EvalTree& tree) {
    Vec out(tree.size, FieldElement(0));
    if (tree.size == 0) return out;
    eval_down(tree, tree.nodes.size() - 1, 0, p, out);
    return out;
}

namespace {

// numerator of sum_{i in node range} x_i y_i / (1 - z_i X), where the node's
// denominator is the reversal of the stored monic subproduct
Poly transposed_num(const EvalTree& t, const Vec& x, const Vec& y,
                    size_t level, size_t node) {
    if (level == 0) {
        size_t i = node;
        if (i >= t.size) return Poly();
        return Poly::constant(x[i] * y[i]);
    }
    Poly nl = transposed_num(t, x, y, level - 1, 2 * node);
    Poly nr = transposed_num(t, x, y, level - 1, 2 * node + 1);
    const Poly& dl = t.nodes[level - 1][2 * node];
    const Poly& dr = t.nodes[level - 1][2 * node + 1];
    Poly rdl = poly_rev(dl, (size_t)dl.deg() + 1);
    Poly rdr = poly_rev(dr, (size_t)dr.deg() + 1);
    return poly_add(poly_mul(nl, rdr), poly_mul(nr, rdl));
}

} // namespace

Poly transposed_eval(const Vec& x, const Vec& y, const EvalTree& tree, size_t n) {
    if (x.size() != tree.size || y.size() != tree.size)
        throw std::runtime_error("transposed_eval length mismatch");
    if (tree.size == 0 || n == 0) return Poly();
    Poly num = transposed_num(tree, x, y, tree.nodes.size() - 1, 0);
    if (num.is_zero()) return Poly();
    const Poly& den = tree.root();
    Poly rden = poly_rev(den, (size_t)den.deg() + 1);
    return poly_trunc(poly_mul(poly_trunc(num, n), poly_series_inv(rden, n)), n);
}

Poly lagrange_interpolate(const Vec& points, const Vec& values) {
    size_t n = points.size();
    if (values.size() != n) throw std::runtime_error("interpolation length mismatch");
    Poly acc;
    for (size_t i = 0; i < n; ++i) {
        Poly li = Poly::one();
        FieldElement denom = 1;
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Poly lin;
            lin.c = {-points[j], FieldElement(1)};
            li = poly_mul(li, lin);
            denom *= points[i] - points[j];
        }
        acc = poly_add(acc, poly_scale(li, values[i] * denom.inv()));
    }
    return acc;
}

} // namespace recwidth
