#include "recwidth/apps.hpp"

#include <algorithm>
#include <stdexcept>

#include "recwidth/krylov.hpp"
#include "recwidth/multiply.hpp"

namespace recwidth {

OrthoFamily chebyshev_family(Vec points) {
    const size_t n = points.size();
    OrthoFamily fam;
    fam.points = std::move(points);
    fam.alpha.assign(n, FieldElement(2));
    fam.beta.assign(n, FieldElement(0));
    fam.gamma.assign(n, -FieldElement(1));
    if (n > 1) fam.alpha[1] = FieldElement(1);
    return fam;
}

RecurrenceSpec ortho_spec(const OrthoFamily& family) {
    const size_t n = family.points.size();
    RecurrenceSpec spec;
    spec.rows = n;
    spec.cols = n;
    spec.t = 2;
    spec.r = 1;
    spec.d = 1;
    spec.dbar = 0;
    spec.R = RDescriptor::diagonal(family.points);
    spec.C = DenseMatrix(n, 1);
    spec.D = DenseMatrix(1, n);
    if (n > 0) spec.C.at(0, 0) = FieldElement(1);
    for (size_t j = 0; j < n; ++j) spec.D.at(0, j) = FieldElement(1);
    spec.g.resize(n);
    for (size_t i = 0; i < n; ++i) {
        spec.g[i].assign(std::min<size_t>(2, i) + 1, Poly());
        spec.g[i][0] = Poly::one();
        if (i >= 1)
            spec.g[i][1] = poly_add(Poly::monomial(1, family.alpha[i]),
                                    Poly::constant(family.beta[i]));
        if (i >= 2) spec.g[i][2] = Poly::constant(family.gamma[i]);
    }
    return spec;
}

Vec orthogonal_transform(const OrthoFamily& family, const Vec& b,
                         bool forward) {
    const size_t n = family.points.size();
    if (b.size() != n) throw std::invalid_argument("matrix shape mismatch");
    Vec sorted = family.points;
    std::sort(sorted.begin(), sorted.end(),
              [](FieldElement a, FieldElement c) { return a.value < c.value; });
    for (size_t i = 1; i < n; ++i)
        if (sorted[i] == sorted[i - 1])
            throw std::invalid_argument("orthogonal transform requires distinct points");
    RecurrenceSpec spec = ortho_spec(family);
    DyadicTree tree = build_dyadic_tree(spec);
    return forward ? transpose_mult(spec, tree, b)
                   : forward_mult(spec, tree, b);
}

namespace {

RDescriptor stirling_band(size_t n) {
    BandMatrix band;
    band.n = n;
    band.delta = 1;
    band.lower = true;
    band.diags.resize(2);
    band.diags[0].resize(n);
    for (size_t k = 0; k < n; ++k) band.diags[0][k] = FieldElement(k);
    band.diags[1].assign(n > 0 ? n - 1 : 0, FieldElement(1));
    return RDescriptor::banded(band);
}

} // namespace

Vec stirling_apply(size_t n, const Vec& x, bool transposed) {
    if (x.size() != n) throw std::invalid_argument("matrix shape mismatch");
    Vec e0(n);
    if (n > 0) e0[0] = FieldElement(1);
    RDescriptor r = stirling_band(n);
    return transposed ? krylov_apply(r, e0, x) : krylov_apply_transpose(r, e0, x);
}

Vec bernoulli_numbers(size_t n) {
    Vec x(n);
    FieldElement fact(1);
    for (size_t k = 0; k < n; ++k) {
        if (k > 0) fact *= FieldElement(k);
        FieldElement v = fact * FieldElement(k + 1).inv();
        x[k] = (k % 2 == 0) ? v : -v;
    }
    return stirling_apply(n, x, false);
}

RecurrenceSpec bivariate_eval_spec(const Vec& xs, const Vec& ys, size_t d) {
    const size_t n = d * d;
    if (xs.size() != n || ys.size() != n)
        throw std::invalid_argument("matrix shape mismatch");
    for (size_t i = 0; i < n; ++i)
        if (xs[i].is_zero() || ys[i].is_zero())
            throw std::invalid_argument("zero coordinate");

    RecurrenceSpec spec;
    spec.rows = n;
    spec.cols = n;
    spec.t = 1;
    spec.r = 2;
    spec.d = 0;
    spec.dbar = d + 1;
    spec.R = RDescriptor::shift(n);
    spec.C = DenseMatrix(n, 2);
    spec.D = DenseMatrix(2, n);
    spec.D.at(0, 0) = FieldElement(1);
    spec.D.at(1, d) = FieldElement(1);
    spec.g.resize(n);
    for (size_t i = 0; i < n; ++i) {
        FieldElement xi = xs[i], yi = ys[i];
        FieldElement xyinv = (xi * yi).inv();
        spec.C.at(i, 0) = xyinv;
        spec.C.at(i, 1) = -(xi.pow(d - 1) / yi);
        Vec g0(d + 2);
        g0[0] = xyinv;
        g0[1] = -yi.inv();
        g0[d] = g0[d] - xi.inv();
        g0[d + 1] = g0[d + 1] + FieldElement(1);
        spec.g[i].assign(std::min<size_t>(1, i) + 1, Poly());
        spec.g[i][0] = Poly(g0);
    }
    return spec;
}

} // namespace recwidth
