// Acceptance sweep: twelve end-to-end checks, one PASS/FAIL line each.
// Exits nonzero when any check fails.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "recwidth/apps.hpp"
#include "recwidth/krylov.hpp"
#include "recwidth/multiply.hpp"
#include "recwidth/oracle.hpp"
#include "recwidth/recovery.hpp"
#include "recwidth/rng.hpp"
#include "recwidth/solvers.hpp"
#include "recwidth/testgen.hpp"

using namespace recwidth;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const RKind kAllKinds[5] = {RKind::Shift, RKind::Companion, RKind::Diagonal,
                            RKind::Band, RKind::Quasi};

bool is_zero_matrix(const DenseMatrix& m) {
    for (auto v : m.a)
        if (!v.is_zero()) return false;
    return true;
}

// ---- 1: fast products against the dense oracle --------------------------
bool criterion_products(std::string& detail) {
    for (RKind kind : kAllKinds)
        for (size_t n : {8, 16, 32, 64})
            for (size_t t : {1, 2, 3})
                for (size_t r : {1, 2})
                    for (u64 seed = 0; seed < 10; ++seed) {
                        SplitMix64 rng(seed * 7919 + n * 131 + t * 17 + r * 3 +
                                       (u64)kind);
                        RecurrenceSpec spec =
                            gen_spec(kind, n, t, r, seed % 2 == 1, rng);
                        DenseMatrix a = dense_from_spec(spec);
                        DyadicTree tree = build_dyadic_tree(spec);
                        Vec b = gen_vec(n, rng);
                        if (transpose_mult(spec, tree, b) !=
                            mat_transpose_vec(a, b)) {
                            detail = "transpose product mismatch";
                            return false;
                        }
                        if (forward_mult(spec, tree, b) != mat_vec(a, b)) {
                            detail = "forward product mismatch";
                            return false;
                        }
                        if (seed == 0) {
                            DenseMatrix batch(n, 2);
                            for (size_t i = 0; i < n; ++i) {
                                batch.at(i, 0) = b[i];
                                batch.at(i, 1) = rng.field_element();
                            }
                            DenseMatrix got =
                                transpose_mult_batched(spec, tree, batch);
                            for (size_t col = 0; col < 2; ++col) {
                                Vec x(n);
                                for (size_t i = 0; i < n; ++i)
                                    x[i] = batch.at(i, col);
                                Vec want = mat_transpose_vec(a, x);
                                for (size_t i = 0; i < n; ++i)
                                    if (got.at(i, col) != want[i]) {
                                        detail = "batched product mismatch";
                                        return false;
                                    }
                            }
                        }
                    }
    return true;
}

// ---- 2: structure inverse -----------------------------------------------
bool criterion_structure(std::string& detail) {
    for (RKind kind : {RKind::Shift, RKind::Companion})
        for (size_t n : {8, 16})
            for (size_t t : {1, 2}) {
                SplitMix64 rng(n * 19 + t * 5 + (u64)kind);
                RecurrenceSpec spec = gen_spec(kind, n, t, 1, false, rng);
                DyadicTree tree = build_dyadic_tree(spec);
                Poly c = r_modulus(spec.R);
                // G[i][i] = g_{i,0}, G[i][i-j] = -g_{i,j}
                for (size_t i = 0; i < n; ++i)
                    for (size_t j = 0; j < n; ++j) {
                        Poly sum;
                        for (size_t k = j; k <= i; ++k) {
                            Poly h = structure_entry(spec, tree, i, k);
                            Poly gkj;
                            if (k == j)
                                gkj = spec.lead_coeff(k);
                            else if (k - j <= spec.t)
                                gkj = poly_sub(Poly(), spec.coeff(k, k - j));
                            if (gkj.is_zero() || h.is_zero()) continue;
                            sum = poly_add(sum, poly_mul(h, gkj));
                        }
                        Poly want = i == j ? Poly::one() : Poly();
                        if (poly_rem(sum, c) != want) {
                            detail = "H G differs from the identity at (" +
                                     std::to_string(i) + "," +
                                     std::to_string(j) + ")";
                            return false;
                        }
                    }
            }
    return true;
}

// ---- 3: transition degree bounds ----------------------------------------
bool criterion_degrees(std::string& detail) {
    for (size_t t : {1, 2, 3, 4})
        for (bool hard : {false, true}) {
            const size_t n = 256;
            SplitMix64 rng(t * 11 + (hard ? 1 : 0));
            RecurrenceSpec spec = gen_spec(RKind::Companion, n, t, 1, hard, rng);
            DyadicTree tree = build_dyadic_tree(spec);
            const int scale = (int)(spec.d + spec.dbar);
            for (size_t lvl = 0; lvl < tree.levels(); ++lvl) {
                const int len = 1 << lvl;
                for (const PolyMat& node : tree.T[lvl])
                    for (size_t i = 0; i < node.rows; ++i)
                        for (size_t j = 0; j < node.cols; ++j) {
                            int cap = len + (int)i - (int)j;
                            if (cap < 0) cap = 0;
                            if (node.at(i, j).deg() > scale * cap) {
                                detail = "entry degree exceeds the bound at "
                                         "level " +
                                         std::to_string(lvl);
                                return false;
                            }
                        }
            }
        }
    return true;
}

// ---- 4: transposition consistency at scale -------------------------------
bool criterion_transposition(std::string& detail) {
    const size_t n = 4096;
    SplitMix64 rng(271828);
    RecurrenceSpec spec = gen_spec(RKind::Shift, n, 2, 2, false, rng);
    DyadicTree tree = build_dyadic_tree(spec);
    for (int pair = 0; pair < 20; ++pair) {
        Vec b = gen_vec(n, rng), c = gen_vec(n, rng);
        if (dot(c, forward_mult(spec, tree, b)) !=
            dot(b, transpose_mult(spec, tree, c))) {
            detail = "inner products differ on pair " + std::to_string(pair);
            return false;
        }
    }
    return true;
}

// ---- 5: krylov columns ----------------------------------------------------
bool criterion_krylov(std::string& detail) {
    for (RKind kind : kAllKinds)
        for (size_t n : {8, 33, 64}) {
            SplitMix64 rng(n * 23 + (u64)kind);
            RDescriptor R = gen_descriptor(kind, n, rng);
            Vec y = gen_vec(n, rng);
            DenseMatrix K(n, n);
            Vec col = y;
            for (size_t j = 0; j < n; ++j) {
                for (size_t i = 0; i < n; ++i) K.at(i, j) = col[i];
                col = r_apply(R, col);
            }
            KrylovOperator op = make_krylov(R, y);
            Vec x = gen_vec(n, rng);
            if (krylov_op_apply(op, x) != mat_vec(K, x) ||
                krylov_op_apply_transpose(op, x) != mat_transpose_vec(K, x)) {
                detail = "krylov product differs from dense columns";
                return false;
            }
        }
    // companion identity at 1024: K(C_M, y) x = y x mod M
    const size_t n = 1024;
    SplitMix64 rng(5566);
    Vec mc(n + 1);
    for (size_t i = 0; i < n; ++i) mc[i] = rng.field_element();
    mc[n] = FieldElement(1);
    Poly m{std::move(mc)};
    Vec y = gen_vec(n, rng), x = gen_vec(n, rng);
    Vec got = krylov_apply(RDescriptor::companion(m), y, x);
    Poly want = poly_rem(poly_mul(Poly{Vec(y)}, Poly{Vec(x)}), m);
    for (size_t i = 0; i < n; ++i)
        if (got[i] != want.at(i)) {
            detail = "companion krylov differs from modular multiplication";
            return false;
        }
    return true;
}

// ---- 6: displacement reconstruction and products --------------------------
bool criterion_displacement(std::string& detail) {
    const RKind lks[3] = {RKind::Band, RKind::Diagonal, RKind::Quasi};
    for (DispOp op : {DispOp::Sylvester, DispOp::Stein})
        for (RKind lk : lks)
            for (RKind rk : kAllKinds)
                for (size_t n : {9, 32, 64}) {
                    SplitMix64 rng((u64)op * 97 + (u64)lk * 31 + (u64)rk * 7 +
                                   n);
                    DisplacementRep rep =
                        gen_displacement(op, lk, rk, n, 2, rng);
                    DenseMatrix a = dense_from_displacement(rep);
                    DenseMatrix l = r_to_dense(rep.L), r = r_to_dense(rep.R);
                    DenseMatrix resid =
                        op == DispOp::Sylvester
                            ? mat_sub(mat_sub(mat_mul(l, a), mat_mul(a, r)),
                                      mat_mul(rep.C, rep.D))
                            : mat_sub(mat_sub(a, mat_mul(l, mat_mul(a, r))),
                                      mat_mul(rep.C, rep.D));
                    if (!is_zero_matrix(resid)) {
                        detail = "displacement residual nonzero";
                        return false;
                    }
                    Vec b = gen_vec(n, rng), c = gen_vec(n, rng);
                    if (disp_mult(rep, b, false) != mat_vec(a, b) ||
                        disp_mult(rep, c, true) != mat_transpose_vec(a, c)) {
                        detail = "structured product differs from dense";
                        return false;
                    }
                }
    return true;
}

// ---- 7: resolvent -----------------------------------------------------------
bool criterion_resolvent(std::string& detail) {
    for (size_t ord : {1, 2})
        for (size_t n : {16, 65, 128}) {
            SplitMix64 rng(ord * 1001 + n);
            QuasiPtr q = gen_quasisep(n, ord, rng);
            DenseMatrix rd = quasisep_to_dense(*q);
            DenseMatrix b(n, 1), c(n, 1);
            for (size_t i = 0; i < n; ++i) {
                b.at(i, 0) = rng.field_element();
                c.at(i, 0) = rng.field_element();
            }
            Resolvent res = resolvent(b, *q, c);
            if (res.den != char_poly(RDescriptor::quasisep(q))) {
                detail = "denominator is not the characteristic polynomial";
                return false;
            }
            int checked = 0;
            while (checked < 20) {
                FieldElement xi = rng.field_element();
                if (res.den.eval(xi).is_zero()) continue;
                ++checked;
                DenseMatrix m(n, n);
                for (size_t i = 0; i < n; ++i)
                    for (size_t j = 0; j < n; ++j)
                        m.at(i, j) =
                            (i == j ? xi : FieldElement(0)) - rd.at(i, j);
                Vec rhs(n);
                for (size_t i = 0; i < n; ++i) rhs[i] = c.at(i, 0);
                Vec w = gauss_solve(m, rhs);
                Vec bb(n);
                for (size_t i = 0; i < n; ++i) bb[i] = b.at(i, 0);
                if (res.num.at(0, 0).eval(xi) !=
                    dot(bb, w) * res.den.eval(xi)) {
                    detail = "num/den disagrees with a dense solve";
                    return false;
                }
            }
        }
    return true;
}

// ---- 8: triangular solves ---------------------------------------------------
bool criterion_solver(std::string& detail) {
    const size_t n = 1024;
    for (u64 seed = 0; seed < 10; ++seed) {
        SplitMix64 rng(seed + 31337);
        size_t t = 1 + seed % 3;
        RecurrenceSpec spec = gen_solve_spec(n, t, rng);
        DyadicTree tree = build_dyadic_tree(spec);
        Vec y = gen_vec(n, rng);
        Vec x = triangular_solve(spec, y, true);
        if (transpose_mult(spec, tree, x) != y) {
            detail = "transposed solve residual nonzero at seed " +
                     std::to_string(seed);
            return false;
        }
        Vec xf = triangular_solve(spec, y, false);
        if (forward_mult(spec, tree, xf) != y) {
            detail = "forward solve residual nonzero at seed " +
                     std::to_string(seed);
            return false;
        }
    }
    return true;
}

// ---- 9: displacement inverse ------------------------------------------------
bool criterion_inverse(std::string& detail) {
    const RKind ks[3] = {RKind::Band, RKind::Diagonal, RKind::Quasi};
    for (RKind lk : ks)
        for (RKind rk : ks)
            for (size_t n : {8, 32, 64}) {
                SplitMix64 rng((u64)lk * 41 + (u64)rk * 13 + n);
                DisplacementRep rep =
                    gen_displacement(DispOp::Sylvester, lk, rk, n, 2, rng);
                DenseMatrix a = dense_from_displacement(rep);
                DisplacementRep inv;
                try {
                    inv = displacement_inverse(rep);
                } catch (const std::exception& e) {
                    detail = std::string("inverse raised: ") + e.what();
                    return false;
                }
                DenseMatrix ainv = dense_from_displacement(inv);
                if (mat_mul(a, ainv) != DenseMatrix::identity(n)) {
                    detail = "product with the inverse differs from identity";
                    return false;
                }
                DenseMatrix resid = mat_sub(mat_mul(r_to_dense(inv.L), ainv),
                                            mat_mul(ainv, r_to_dense(inv.R)));
                if (resid != mat_mul(inv.C, inv.D)) {
                    detail = "inverse generators fail their equation";
                    return false;
                }
                if (inv.rank() != mat_rank(resid)) {
                    detail = "generator width exceeds the displacement rank";
                    return false;
                }
            }
    return true;
}

// ---- 10: recurrence recovery -------------------------------------------------
bool criterion_recovery(std::string& detail) {
    for (size_t n : {16, 64, 128})
        for (size_t t : {1, 2, 3}) {
            SplitMix64 rng(n * 7 + t);
            RecurrenceSpec src = gen_solve_spec(n, t, rng);
            DenseMatrix a = dense_from_spec(src);
            FitReport rep = recover_recurrence(a, t);
            if (!rep.success || dense_from_spec(rep.spec) != a) {
                detail = "round trip failed at n=" + std::to_string(n) +
                         " t=" + std::to_string(t);
                return false;
            }
        }
    return true;
}

// ---- 11: applications ----------------------------------------------------------
bool criterion_applications(std::string& detail) {
    if (bernoulli_numbers(128) != bernoulli_oracle(128)) {
        detail = "bernoulli numbers differ from the oracle";
        return false;
    }
    {
        const size_t n = 256;
        DenseMatrix table = stirling_table_oracle(n);
        SplitMix64 rng(404);
        Vec x = gen_vec(n, rng);
        if (stirling_apply(n, x, false) != mat_vec(table, x) ||
            stirling_apply(n, x, true) != mat_transpose_vec(table, x)) {
            detail = "stirling products differ from the table";
            return false;
        }
    }
    {
        const size_t n = 256;
        Vec pts;
        for (size_t i = 0; i < n; ++i) pts.push_back(FieldElement(i64(2 * i + 3)));
        OrthoFamily fam = chebyshev_family(pts);
        SplitMix64 rng(606);
        Vec b = gen_vec(n, rng);
        Vec vals = orthogonal_transform(fam, b, true);
        for (size_t j = 0; j < n; ++j)
            if (vals[j] !=
                ortho_eval_oracle(fam.alpha, fam.beta, fam.gamma, b, pts[j])) {
                detail = "chebyshev transform differs from direct evaluation";
                return false;
            }
    }
    for (size_t d : {2, 5, 8}) {
        const size_t m = d * d;
        SplitMix64 rng(d);
        Vec xs, ys;
        for (size_t i = 0; i < m; ++i) {
            xs.push_back(rng.nonzero());
            ys.push_back(rng.nonzero());
        }
        RecurrenceSpec spec = bivariate_eval_spec(xs, ys, d);
        DyadicTree tree = build_dyadic_tree(spec);
        Vec coeffs = gen_vec(m, rng);
        // row i of the spec's matrix is the monomial vector of point i, so
        // evaluating at the points is the forward product by the coefficients
        Vec got = forward_mult(spec, tree, coeffs);
        for (size_t i = 0; i < m; ++i) {
            FieldElement want = 0;
            for (size_t bb = 0; bb < d; ++bb)
                for (size_t aa = 0; aa < d; ++aa)
                    want += coeffs[bb * d + aa] * xs[i].pow(aa) * ys[i].pow(bb);
            if (got[i] != want) {
                detail = "bivariate evaluation differs at d=" +
                         std::to_string(d);
                return false;
            }
        }
    }
    return true;
}

// ---- 12: soft performance --------------------------------------------------------
u64 ns_since(Clock::time_point t0) {
    return (u64)std::chrono::duration_cast<std::chrono::nanoseconds>(
               Clock::now() - t0)
        .count();
}

u64 dense_matvec_ns(size_t n, SplitMix64& rng) {
    const size_t chunk = std::min<size_t>(n, 256);
    DenseMatrix m(chunk, n);
    for (size_t i = 0; i < chunk; ++i)
        for (size_t j = 0; j < n; ++j) m.at(i, j) = rng.field_element();
    Vec b = gen_vec(n, rng);
    size_t reps = 0;
    Vec sink;
    auto t0 = Clock::now();
    do {
        sink = mat_vec(m, b);
        ++reps;
    } while (ns_since(t0) < 4'000'000ULL);
    u64 per = ns_since(t0) / reps;
    if (!sink.empty() && sink[0].value == 0xffffffffu) per += 1;
    return per * ((n + chunk - 1) / chunk);
}

bool criterion_performance(std::string& detail) {
    SplitMix64 rng(1618);
    std::vector<u64> query;
    for (size_t n : {2048, 4096, 8192, 16384}) {
        RecurrenceSpec spec = gen_spec(RKind::Shift, n, 1, 1, false, rng);
        DyadicTree tree = build_dyadic_tree(spec);
        Vec b = gen_vec(n, rng);
        auto t0 = Clock::now();
        Vec got = transpose_mult(spec, tree, b);
        u64 q = ns_since(t0);
        if (!got.empty() && got[0].value == 0xffffffffu) q += 1;
        query.push_back(q);
    }
    u64 dense8k = dense_matvec_ns(8192, rng);
    std::printf("    query(8192) = %.1f ms, dense(8192) = %.1f ms\n",
                query[2] / 1e6, dense8k / 1e6);
    double avg = 0;
    for (size_t i = 1; i < query.size(); ++i)
        avg += (double)query[i] / (double)query[i - 1];
    avg /= (double)(query.size() - 1);
    std::printf("    average doubling ratio = %.2f\n", avg);
    if (3 * query[2] > dense8k) {
        detail = "query at 8192 is slower than a third of dense";
        return false;
    }
    if (avg > 3.2) {
        detail = "average doubling ratio exceeds 3.2";
        return false;
    }
    return true;
}

struct Criterion {
    const char* label;
    bool (*run)(std::string&);
};

} // namespace

int main() {
    const Criterion criteria[12] = {
        {"products match the dense oracle", criterion_products},
        {"structure entries invert the recurrence", criterion_structure},
        {"transition degrees stay within bounds", criterion_degrees},
        {"forward and transposed products are adjoint", criterion_transposition},
        {"krylov operators act like dense columns", criterion_krylov},
        {"displacement representations reconstruct and multiply",
         criterion_displacement},
        {"resolvents agree with dense solves", criterion_resolvent},
        {"triangular solves invert the fast products", criterion_solver},
        {"displacement inverses are exact and compressed", criterion_inverse},
        {"recurrence recovery round trips", criterion_recovery},
        {"application tower matches independent oracles",
         criterion_applications},
        {"structured queries outpace dense sweeps", criterion_performance},
    };
    auto t0 = Clock::now();
    int failures = 0;
    for (int i = 0; i < 12; ++i) {
        std::string detail;
        bool ok = false;
        auto tc = Clock::now();
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %2d %-55s %s (%.1f s)%s%s\n", i + 1,
                    criteria[i].label, ok ? "PASS" : "FAIL", seconds_since(tc),
                    detail.empty() ? "" : " — ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("%d/12 criteria passed in %.1f s\n", 12 - failures,
                seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
