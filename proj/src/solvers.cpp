#include "recwidth/solvers.hpp"

#include <functional>
#include <memory>
#include <stdexcept>

#include "recwidth/quasisep.hpp"

namespace recwidth {

namespace {

// ---------------------------------------------------------------------------
// shifted-window views
// ---------------------------------------------------------------------------

// rows 0..t-1 of the matrix generated by a basic spec (g_{i,0} = 1)
std::vector<Poly> leading_rows(const RecurrenceSpec& spec) {
    const size_t tw = spec.width();
    std::vector<Poly> rows(tw);
    for (size_t u = 0; u < tw; ++u) {
        Poly acc;
        for (size_t k = 0; k < spec.r; ++k) {
            FieldElement cu = spec.c_entry(u, k);
            if (cu.is_zero()) continue;
            Vec dk(spec.cols);
            for (size_t j = 0; j < spec.cols; ++j) dk[j] = spec.D.at(k, j);
            acc = poly_add(acc, poly_scale(Poly(dk), cu));
        }
        for (size_t v = 1; v <= std::min(u, spec.t); ++v)
            acc = poly_add(acc, poly_mul(spec.coeff(u, v), rows[u - v]));
        rows[u] = acc;
    }
    return rows;
}

// window vector at position n/2 + t - 1: (f_{h}, ..., f_{h+t-1})
std::vector<Poly> window_jump(const ShiftedSpec& ss) {
    const size_t tw = ss.src->width();
    const size_t h = ss.n / 2;
    const size_t lo = ss.base + tw - 1, hi = ss.base + h + tw - 1;
    PolyMat jump;
    if (hi <= ss.tree->m) {
        jump = ranged_transition(*ss.tree, lo, hi);
    } else {
        jump = PolyMat::identity(tw);
        for (size_t pos = lo; pos < hi; ++pos)
            jump = pm_mul(transition(*ss.src, pos + 1), jump);
    }
    std::vector<Poly> omega(tw);
    for (size_t a = 0; a < tw; ++a) {
        Poly acc;
        for (size_t b = 0; b < tw; ++b)
            acc = poly_add(acc, poly_mul(jump.at(a, b), ss.seeds[b]));
        omega[a] = acc;
    }
    return omega;
}

ShiftedSpec trailing_from(const ShiftedSpec& ss, const std::vector<Poly>& omega) {
    const size_t h = ss.n / 2, m = ss.n - h;
    ShiftedSpec out;
    out.src = ss.src;
    out.tree = ss.tree;
    out.n = m;
    out.base = ss.base + h;
    out.seeds.resize(omega.size());
    for (size_t u = 0; u < omega.size(); ++u)
        out.seeds[u] = poly_trunc(poly_shift_down(omega[u], 2 * h), 2 * m);
    return out;
}

// ---------------------------------------------------------------------------
// dense base cases
// ---------------------------------------------------------------------------

// B x = y with B upper triangular
Vec upper_solve(const DenseMatrix& B, const Vec& y) {
    const size_t n = B.rows;
    Vec x(n);
    for (size_t uu = n; uu-- > 0;) {
        FieldElement acc = y[uu];
        for (size_t v = uu + 1; v < n; ++v) acc = acc - B.at(uu, v) * x[v];
        x[uu] = acc / B.at(uu, uu);
    }
    return x;
}

// B^T x = y with B upper triangular
Vec upper_transpose_solve(const DenseMatrix& B, const Vec& y) {
    const size_t n = B.rows;
    Vec x(n);
    for (size_t uu = 0; uu < n; ++uu) {
        FieldElement acc = y[uu];
        for (size_t v = 0; v < uu; ++v) acc = acc - B.at(v, uu) * x[v];
        x[uu] = acc / B.at(uu, uu);
    }
    return x;
}

// ---------------------------------------------------------------------------
// coupling terms
// ---------------------------------------------------------------------------

// functional row combining the trailing window polynomials: the pair carries
// P over the index range plus the window advance across it
struct FunctionalRow {
    std::vector<Poly> row;
    PolyMat U;
};

FunctionalRow functional_row(const RecurrenceSpec& spec, const Vec& x2,
                             size_t row0, size_t lo, size_t hi, bool need_u) {
    const size_t tw = spec.width();
    if (hi - lo == 1) {
        FunctionalRow res;
        res.row.assign(tw, Poly());
        res.row[0] = Poly::constant(x2[lo]);
        if (need_u) res.U = transition(spec, row0 + lo);
        return res;
    }
    const size_t mid = lo + (hi - lo) / 2;
    FunctionalRow left = functional_row(spec, x2, row0, lo, mid, true);
    FunctionalRow right = functional_row(spec, x2, row0, mid, hi, need_u);
    FunctionalRow res;
    res.row.resize(tw);
    for (size_t b = 0; b < tw; ++b) {
        Poly acc = left.row[b];
        for (size_t a = 0; a < tw; ++a)
            acc = poly_add(acc, poly_mul(right.row[a], left.U.at(a, b)));
        res.row[b] = acc;
    }
    if (need_u) res.U = pm_mul(right.U, left.U);
    return res;
}

// coefficients [n, n+h) of sum_{u'} x2[u'] f_{h+u'}
Vec couple_transposed(const ShiftedSpec& ss, const Vec& x2,
                      const std::vector<Poly>& omega) {
    const size_t n = ss.n, h = n / 2, tw = ss.src->width();
    FunctionalRow fr =
        functional_row(*ss.src, x2, ss.base + h + tw, 0, n - h, false);
    Poly phi;
    for (size_t a = 0; a < tw; ++a)
        phi = poly_add(phi, poly_mul(fr.row[a], omega[a]));
    Vec out(h);
    for (size_t j = 0; j < h; ++j) out[j] = phi.at(n + j);
    return out;
}

PolyMat window_product(const RecurrenceSpec& spec, size_t row0, size_t lo,
                       size_t hi) {
    if (hi - lo == 1) return transition(spec, row0 + lo);
    const size_t mid = lo + (hi - lo) / 2;
    return pm_mul(window_product(spec, row0, mid, hi),
                  window_product(spec, row0, lo, mid));
}

// arrays share a common top coefficient; add (src * f) into tgt
void acc_slice(Vec& tgt, const Vec& src, const Poly& f) {
    if (f.is_zero()) return;
    const size_t bs = src.size(), bt = tgt.size();
    if (bs < bt) throw std::logic_error("coupling sweep budget underflow");
    Poly conv = poly_mul(Poly(src), f);
    const size_t off = bs - bt;
    for (size_t w = 0; w < bt; ++w) tgt[w] = tgt[w] + conv.at(off + w);
}

void forward_descend(const RecurrenceSpec& spec, size_t row0, size_t lo,
                     size_t hi, const std::vector<Vec>& state, Vec& out) {
    const size_t tw = spec.width();
    if (hi - lo == 1) {
        out[lo] = state[0].back();
        return;
    }
    const size_t mid = lo + (hi - lo) / 2;
    const size_t len_l = mid - lo, len_r = hi - mid;
    std::vector<Vec> part(tw);
    for (size_t a = 0; a < tw; ++a) {
        const size_t b = len_l + tw - a;
        part[a] = Vec(state[a].end() - (long)b, state[a].end());
    }
    forward_descend(spec, row0, lo, mid, part, out);
    PolyMat u = window_product(spec, row0, lo, mid);
    for (size_t a = 0; a < tw; ++a) part[a] = Vec(len_r + tw - a);
    for (size_t a = 0; a < tw; ++a)
        for (size_t a2 = 0; a2 < tw; ++a2)
            acc_slice(part[a], state[a2], u.at(a, a2));
    forward_descend(spec, row0, mid, hi, part, out);
}

// c[u'] = coeff_{n+h-1}(f_{h+u'} * rev_h(x1)) for u' < n-h
Vec couple_forward(const ShiftedSpec& ss, const Vec& x1,
                   const std::vector<Poly>& omega) {
    const size_t n = ss.n, h = n / 2, m = n - h, tw = ss.src->width();
    Vec rv(x1.rbegin(), x1.rend());
    Poly psi(rv);
    std::vector<Vec> state(tw);
    for (size_t a = 0; a < tw; ++a) {
        Poly conv = poly_mul(omega[a], psi);
        const size_t b = m + tw - a;
        state[a].resize(b);
        // top index n+h-1, so the window starts at 2h - tw + a
        for (size_t w = 0; w < b; ++w)
            state[a][w] = conv.at(2 * h - tw + a + w);
    }
    Vec out(m);
    forward_descend(*ss.src, ss.base + h + tw, 0, m, state, out);
    return out;
}

// ---------------------------------------------------------------------------
// recursive solve on the window view
// ---------------------------------------------------------------------------

Vec solve_block(const ShiftedSpec& ss, const Vec& y, bool transposed) {
    const size_t n = ss.n, tw = ss.src->width();
    if (n <= std::max<size_t>(2 * tw, 8)) {
        DenseMatrix b = shifted_dense(ss);
        return transposed ? upper_solve(b, y) : upper_transpose_solve(b, y);
    }
    const size_t h = n / 2;
    std::vector<Poly> omega = window_jump(ss);
    ShiftedSpec lead = shifted_leading(ss);
    ShiftedSpec trail = trailing_from(ss, omega);
    Vec x1, x2;
    if (transposed) {
        Vec y2(y.begin() + (long)h, y.end());
        x2 = solve_block(trail, y2, true);
        Vec c = couple_transposed(ss, x2, omega);
        Vec y1(h);
        for (size_t j = 0; j < h; ++j) y1[j] = y[j] - c[j];
        x1 = solve_block(lead, y1, true);
    } else {
        Vec y1(y.begin(), y.begin() + (long)h);
        x1 = solve_block(lead, y1, false);
        Vec c = couple_forward(ss, x1, omega);
        Vec y2(n - h);
        for (size_t j = 0; j < n - h; ++j) y2[j] = y[h + j] - c[j];
        x2 = solve_block(trail, y2, false);
    }
    Vec x(n);
    for (size_t j = 0; j < h; ++j) x[j] = x1[j];
    for (size_t j = h; j < n; ++j) x[j] = x2[j - h];
    return x;
}

} // namespace

ShiftedSpec make_shifted(const RecurrenceSpec& spec, const DyadicTree& tree) {
    ShiftedSpec ss;
    ss.src = &spec;
    ss.tree = &tree;
    ss.n = spec.cols;
    ss.base = 0;
    std::vector<Poly> rows = leading_rows(spec);
    ss.seeds.resize(rows.size());
    for (size_t u = 0; u < rows.size(); ++u)
        ss.seeds[u] = poly_shift_up(rows[u], spec.cols);
    return ss;
}

ShiftedSpec shifted_leading(const ShiftedSpec& ss) {
    const size_t h = ss.n / 2;
    ShiftedSpec out;
    out.src = ss.src;
    out.tree = ss.tree;
    out.n = h;
    out.base = ss.base;
    out.seeds.resize(ss.seeds.size());
    for (size_t u = 0; u < ss.seeds.size(); ++u)
        out.seeds[u] = poly_trunc(poly_shift_down(ss.seeds[u], ss.n - h), 2 * h);
    return out;
}

ShiftedSpec shifted_trailing(const ShiftedSpec& ss) {
    return trailing_from(ss, window_jump(ss));
}

DenseMatrix shifted_dense(const ShiftedSpec& ss) {
    const size_t n = ss.n, tw = ss.src->width();
    std::vector<Poly> f(n);
    for (size_t u = 0; u < std::min(n, ss.seeds.size()); ++u) f[u] = ss.seeds[u];
    for (size_t u = tw; u < n; ++u) {
        Poly acc;
        for (size_t v = 1; v <= std::min(u, ss.src->t); ++v)
            acc = poly_add(acc, poly_mul(ss.src->coeff(ss.base + u, v), f[u - v]));
        f[u] = poly_trunc(acc, 2 * n);
    }
    DenseMatrix b(n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t u = 0; u < n; ++u) b.at(j, u) = f[u].at(n + j);
    return b;
}

Vec triangular_solve(const RecurrenceSpec& spec, const Vec& y, bool transposed) {
    validate_spec(spec);
    const size_t n = spec.cols;
    if (spec.rows != n) throw std::invalid_argument("triangular solve requires a square spec");
    if (spec.R.kind != RKind::Shift || spec.R.n != n || spec.R.transposed)
        throw std::invalid_argument("triangular solve requires the plain shift modulus");
    if (spec.d != 1 || spec.dbar != 0)
        throw std::invalid_argument("triangular solve requires coefficient degrees bounded by the offset");
    for (size_t i = 0; i < n; ++i)
        if (!(spec.g[i][0] == Poly::one()))
            throw std::invalid_argument("triangular solve requires unit leading coefficients");
    for (size_t i = spec.t; i < n; ++i)
        for (size_t k = 0; k < spec.r; ++k)
            if (!spec.C.at(i, k).is_zero())
                throw std::invalid_argument("triangular solve requires seeds confined to the leading rows");
    if (y.size() != n) throw std::invalid_argument("matrix shape mismatch");
    {
        std::vector<Poly> rows = leading_rows(spec);
        for (size_t u = 0; u < std::min<size_t>(rows.size(), n); ++u)
            if (rows[u].deg() > (int)u)
                throw std::invalid_argument("triangular solve requires triangular seed rows");
    }

    // diagonal entries via the top-coefficient recurrence
    Vec lam(n);
    for (size_t i = 0; i < n; ++i) {
        FieldElement v(0);
        for (size_t k = 0; k < spec.r; ++k) v = v + spec.C.at(i, k) * spec.D.at(k, i);
        for (size_t j = 1; j <= std::min(spec.t, i); ++j)
            v = v + spec.g[i][j].at(j) * lam[i - j];
        if (v.is_zero()) throw std::runtime_error("matrix singular");
        lam[i] = v;
    }

    DyadicTree tree = build_dyadic_tree(spec);
    ShiftedSpec ss = make_shifted(spec, tree);
    return solve_block(ss, y, transposed);
}

// ---------------------------------------------------------------------------
// generator compression
// ---------------------------------------------------------------------------

std::pair<DenseMatrix, DenseMatrix> generator_compress(const DenseMatrix& G,
                                                       const DenseMatrix& H) {
    DenseMatrix ug, vg;
    rank_factor(G, ug, vg);
    DenseMatrix h1 = mat_mul(H, vg); // G H^T = ug (H vg)^T
    DenseMatrix uh, vh;
    rank_factor(h1, uh, vh); // ug h1^T = (ug vh) uh^T
    return {mat_mul(ug, vh), uh};
}

// ---------------------------------------------------------------------------
// displacement inverse
// ---------------------------------------------------------------------------

namespace {

Vec mat_col(const DenseMatrix& a, size_t j) {
    Vec v(a.rows);
    for (size_t i = 0; i < a.rows; ++i) v[i] = a.at(i, j);
    return v;
}

DenseMatrix hcat(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(std::max(a.rows, b.rows), a.cols + b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows; ++i)
        for (size_t j = 0; j < b.cols; ++j) out.at(i, a.cols + j) = b.at(i, j);
    return out;
}

DenseMatrix take_rows(const DenseMatrix& a, size_t lo, size_t hi) {
    DenseMatrix out(hi - lo, a.cols);
    for (size_t i = lo; i < hi; ++i)
        for (size_t j = 0; j < a.cols; ++j) out.at(i - lo, j) = a.at(i, j);
    return out;
}

DisplacementRep sub_rep(const QuasiPtr& l, const QuasiPtr& r,
                        const DenseMatrix& g, const DenseMatrix& h) {
    DisplacementRep rep;
    rep.op = DispOp::Sylvester;
    rep.L = RDescriptor::quasisep(l);
    rep.R = RDescriptor::quasisep(r);
    rep.C = g;
    rep.D = mat_transpose(h);
    return rep;
}

// solve Ld A - A Rd = E as a linear system over the entries of A
DenseMatrix dense_sylvester(const DenseMatrix& ld, const DenseMatrix& rd,
                            const DenseMatrix& e) {
    const size_t n = ld.rows, m = rd.rows;
    DenseMatrix sys(n * m, n * m);
    Vec rhs(n * m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            const size_t row = i * m + j;
            for (size_t v = 0; v < n; ++v)
                sys.at(row, v * m + j) = sys.at(row, v * m + j) + ld.at(i, v);
            for (size_t w = 0; w < m; ++w)
                sys.at(row, i * m + w) = sys.at(row, i * m + w) - rd.at(w, j);
            rhs[row] = e.at(i, j);
        }
    Vec sol;
    try {
        sol = gauss_solve(sys, rhs);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("displacement operator not invertible");
    }
    DenseMatrix a(n, m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) a.at(i, j) = sol[i * m + j];
    return a;
}

// no-pivot elimination: every leading principal minor must be nonzero
void strong_regularity_check(DenseMatrix a) {
    const size_t n = a.rows;
    for (size_t c = 0; c < n; ++c) {
        if (a.at(c, c).is_zero()) throw std::runtime_error("not strongly regular");
        FieldElement inv = a.at(c, c).inv();
        for (size_t i = c + 1; i < n; ++i) {
            FieldElement f = a.at(i, c) * inv;
            if (f.is_zero()) continue;
            for (size_t j = c; j < n; ++j) a.at(i, j) = a.at(i, j) - f * a.at(c, j);
        }
    }
}

struct BlockSolver {
    std::function<Vec(const Vec&)> solve;  // A x = b
    std::function<Vec(const Vec&)> solve_t; // A^T x = b
    DenseMatrix ginv, hinv; // qR A^{-1} - A^{-1} qL = ginv hinv^T
};

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

BlockSolver make_block_solver(const QuasiPtr& ql, const QuasiPtr& qr,
                              const DenseMatrix& g, const DenseMatrix& h) {
    const size_t n = ql->n;
    BlockSolver bs;
    if (ql->leaf() || qr->leaf() || n <= 2) {
        DenseMatrix e = mat_mul(g, mat_transpose(h));
        DenseMatrix a =
            dense_sylvester(quasisep_to_dense(*ql), quasisep_to_dense(*qr), e);
        strong_regularity_check(a);
        auto ainv = std::make_shared<DenseMatrix>(mat_inverse(a));
        bs.solve = [ainv](const Vec& b) { return mat_vec(*ainv, b); };
        bs.solve_t = [ainv](const Vec& b) { return mat_transpose_vec(*ainv, b); };
        std::tie(bs.ginv, bs.hinv) = generator_compress(
            mat_neg(mat_mul(*ainv, g)), mat_mul(mat_transpose(*ainv), h));
        return bs;
    }
    const size_t n1 = ql->head();
    if (qr->head() != n1) throw std::logic_error("misaligned operator split");
    const size_t n2 = n - n1;

    // expand the generators so both diagonal operators act block-diagonally
    const size_t wl_l = ql->ul.cols, wu_l = ql->uu.cols;
    const size_t wl_r = qr->ul.cols, wu_r = qr->uu.cols;
    DenseMatrix xl(n, wl_l + wu_l), yl(n, wl_l + wu_l);
    for (size_t i = 0; i < n2; ++i)
        for (size_t j = 0; j < wl_l; ++j) xl.at(n1 + i, j) = ql->ul.at(i, j);
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = 0; j < wu_l; ++j) xl.at(i, wl_l + j) = ql->uu.at(i, j);
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = 0; j < wl_l; ++j) yl.at(i, j) = ql->vl.at(i, j);
    for (size_t i = 0; i < n2; ++i)
        for (size_t j = 0; j < wu_l; ++j) yl.at(n1 + i, wl_l + j) = ql->vu.at(i, j);
    DenseMatrix xr(n, wl_r + wu_r), yr(n, wl_r + wu_r);
    for (size_t i = 0; i < n2; ++i)
        for (size_t j = 0; j < wl_r; ++j) xr.at(n1 + i, j) = qr->ul.at(i, j);
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = 0; j < wu_r; ++j) xr.at(i, wl_r + j) = qr->uu.at(i, j);
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = 0; j < wl_r; ++j) yr.at(i, j) = qr->vl.at(i, j);
    for (size_t i = 0; i < n2; ++i)
        for (size_t j = 0; j < wu_r; ++j) yr.at(n1 + i, wl_r + j) = qr->vu.at(i, j);

    DisplacementRep self = sub_rep(ql, qr, g, h);
    DenseMatrix axr(n, xr.cols), atyl(n, yl.cols);
    for (size_t j = 0; j < xr.cols; ++j) {
        Vec col = disp_mult(self, mat_col(xr, j), false);
        for (size_t i = 0; i < n; ++i) axr.at(i, j) = col[i];
    }
    for (size_t j = 0; j < yl.cols; ++j) {
        Vec col = disp_mult(self, mat_col(yl, j), true);
        for (size_t i = 0; i < n; ++i) atyl.at(i, j) = col[i];
    }
    DenseMatrix ghat = hcat(g, hcat(mat_neg(xl), axr));
    DenseMatrix hhat = hcat(h, hcat(atyl, yr));
    std::tie(ghat, hhat) = generator_compress(ghat, hhat);

    DenseMatrix g1 = take_rows(ghat, 0, n1), g2 = take_rows(ghat, n1, n);
    DenseMatrix h1 = take_rows(hhat, 0, n1), h2 = take_rows(hhat, n1, n);

    struct Node {
        BlockSolver b, s;
        DisplacementRep a12, a21;
        size_t n1 = 0, n2 = 0;
    };
    auto st = std::make_shared<Node>();
    st->n1 = n1;
    st->n2 = n2;
    st->b = make_block_solver(ql->r11, qr->r11, g1, h1);
    st->a12 = sub_rep(ql->r11, qr->r22, g1, h2);
    st->a21 = sub_rep(ql->r22, qr->r11, g2, h1);

    // Schur complement generators
    const size_t w = ghat.cols, wb = st->b.ginv.cols;
    DenseMatrix gs(n2, w + wb + w), hs(n2, w + wb + w);
    for (size_t j = 0; j < w; ++j) {
        Vec t = st->b.solve_t(mat_col(h1, j));
        Vec s = disp_mult(st->a12, t, true);
        for (size_t i = 0; i < n2; ++i) {
            gs.at(i, j) = g2.at(i, j);
            hs.at(i, j) = h2.at(i, j) - s[i];
            hs.at(i, w + wb + j) = h2.at(i, j);
        }
    }
    for (size_t j = 0; j < wb; ++j) {
        Vec t = disp_mult(st->a21, mat_col(st->b.ginv, j), false);
        Vec s = disp_mult(st->a12, mat_col(st->b.hinv, j), true);
        for (size_t i = 0; i < n2; ++i) {
            gs.at(i, w + j) = FieldElement(0) - t[i];
            hs.at(i, w + j) = s[i];
        }
    }
    for (size_t j = 0; j < w; ++j) {
        Vec t = disp_mult(st->a21, st->b.solve(mat_col(g1, j)), false);
        for (size_t i = 0; i < n2; ++i)
            gs.at(i, w + wb + j) = FieldElement(0) - t[i];
    }
    std::tie(gs, hs) = generator_compress(gs, hs);
    st->s = make_block_solver(ql->r22, qr->r22, gs, hs);

    bs.solve = [st](const Vec& b) {
        Vec b1(b.begin(), b.begin() + (long)st->n1);
        Vec b2(b.begin() + (long)st->n1, b.end());
        Vec u = st->b.solve(b1);
        Vec v = st->s.solve(vec_sub(b2, disp_mult(st->a21, u, false)));
        Vec x1 = vec_sub(u, st->b.solve(disp_mult(st->a12, v, false)));
        Vec x(st->n1 + st->n2);
        for (size_t i = 0; i < st->n1; ++i) x[i] = x1[i];
        for (size_t i = 0; i < st->n2; ++i) x[st->n1 + i] = v[i];
        return x;
    };
    bs.solve_t = [st](const Vec& b) {
        Vec b1(b.begin(), b.begin() + (long)st->n1);
        Vec b2(b.begin() + (long)st->n1, b.end());
        Vec u = st->b.solve_t(b1);
        Vec v = st->s.solve_t(vec_sub(b2, disp_mult(st->a12, u, true)));
        Vec x1 = vec_sub(u, st->b.solve_t(disp_mult(st->a21, v, true)));
        Vec x(st->n1 + st->n2);
        for (size_t i = 0; i < st->n1; ++i) x[i] = x1[i];
        for (size_t i = 0; i < st->n2; ++i) x[st->n1 + i] = v[i];
        return x;
    };

    DenseMatrix gi(n, g.cols), hi(n, h.cols);
    for (size_t j = 0; j < g.cols; ++j) {
        Vec col = bs.solve(mat_col(g, j));
        for (size_t i = 0; i < n; ++i) gi.at(i, j) = FieldElement(0) - col[i];
    }
    for (size_t j = 0; j < h.cols; ++j) {
        Vec col = bs.solve_t(mat_col(h, j));
        for (size_t i = 0; i < n; ++i) hi.at(i, j) = col[i];
    }
    std::tie(bs.ginv, bs.hinv) = generator_compress(gi, hi);
    return bs;
}

size_t descriptor_order(const RDescriptor& r) {
    switch (r.kind) {
    case RKind::Band: return r.band.delta;
    case RKind::Diagonal: return 0;
    case RKind::Quasi: return r.quasi->order;
    default: return 2;
    }
}

} // namespace

DisplacementRep displacement_inverse(const DisplacementRep& rep) {
    if (rep.op != DispOp::Sylvester)
        throw std::invalid_argument("displacement inverse requires a Sylvester representation");
    const size_t n = rep.rows();
    if (rep.cols() != n) throw std::invalid_argument("displacement inverse requires a square matrix");
    auto structured = [](RKind k) {
        return k == RKind::Band || k == RKind::Diagonal || k == RKind::Quasi;
    };
    if (!structured(rep.L.kind) || !structured(rep.R.kind))
        throw std::invalid_argument("displacement inverse requires structured operators");
    if (rep.C.rows != n || rep.D.cols != n || rep.C.cols != rep.D.rows)
        throw std::invalid_argument("matrix shape mismatch");
    check_displacement_unique(rep);

    const size_t ord = std::max<size_t>(
        {descriptor_order(rep.L), descriptor_order(rep.R), 1});
    QuasiPtr ql = quasisep_from_dense(r_to_dense(rep.L), ord);
    QuasiPtr qr = quasisep_from_dense(r_to_dense(rep.R), ord);
    BlockSolver top = make_block_solver(ql, qr, rep.C, mat_transpose(rep.D));

    DisplacementRep out;
    out.op = DispOp::Sylvester;
    out.L = rep.R;
    out.R = rep.L;
    out.C = top.ginv;
    out.D = mat_transpose(top.hinv);
    return out;
}

} // namespace recwidth
