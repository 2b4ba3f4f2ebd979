#include "recwidth/cliapp.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "recwidth/apps.hpp"
#include "recwidth/multiply.hpp"
#include "recwidth/oracle.hpp"
#include "recwidth/quasisep.hpp"
#include "recwidth/solvers.hpp"
#include "recwidth/testgen.hpp"

namespace recwidth {

namespace {

using nlohmann::json;

json residues(const Vec& v) {
    json a = json::array();
    for (auto x : v) a.push_back(x.value);
    return a;
}

Vec residues_back(const json& a) {
    Vec v;
    for (const auto& x : a) v.push_back(FieldElement((i64)x.get<u64>()));
    return v;
}

json poly_json(const Poly& p) { return residues(p.c); }

json matrix_json(const DenseMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols; ++j) row.push_back(m.at(i, j).value);
        rows.push_back(row);
    }
    return rows;
}

DenseMatrix matrix_back(const json& rows, size_t r, size_t c) {
    DenseMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            m.at(i, j) = FieldElement((i64)rows.at(i).at(j).get<u64>());
    return m;
}

const char* kind_name(RKind k) {
    switch (k) {
    case RKind::Shift: return "shift";
    case RKind::Companion: return "companion";
    case RKind::Diagonal: return "diagonal";
    case RKind::Band: return "band";
    case RKind::Quasi: return "quasi";
    }
    return "?";
}

} // namespace

std::string spec_to_json(const RecurrenceSpec& spec) {
    json j;
    j["n"] = spec.cols;
    j["rows"] = spec.rows;
    j["t"] = spec.t;
    j["r"] = spec.r;
    j["degree"] = {spec.d, spec.dbar};
    j["r_kind"] = kind_name(spec.R.kind);
    j["modulus"] = spec.R.kind == RKind::Companion
                       ? json(residues(spec.R.modulus.c))
                       : json(nullptr);
    json rd = json::object();
    switch (spec.R.kind) {
    case RKind::Shift:
    case RKind::Companion:
        rd["transposed"] = spec.R.transposed;
        break;
    case RKind::Diagonal:
        rd["points"] = residues(spec.R.points);
        break;
    case RKind::Band: {
        rd["delta"] = spec.R.band.delta;
        rd["lower"] = spec.R.band.lower;
        json dg = json::array();
        for (const auto& d : spec.R.band.diags) dg.push_back(residues(d));
        rd["diags"] = dg;
        break;
    }
    case RKind::Quasi:
        rd["order"] = spec.R.quasi->order;
        rd["dense"] = matrix_json(quasisep_to_dense(*spec.R.quasi));
        break;
    }
    j["r_data"] = rd;
    json g = json::array();
    for (const auto& row : spec.g) {
        json jr = json::array();
        for (const auto& p : row) jr.push_back(poly_json(p));
        g.push_back(jr);
    }
    j["g"] = g;
    j["c"] = matrix_json(spec.C);
    j["d"] = matrix_json(spec.D);
    return j.dump(2);
}

RecurrenceSpec spec_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        RecurrenceSpec spec;
        spec.cols = j.at("n").get<size_t>();
        spec.rows = j.at("rows").get<size_t>();
        spec.t = j.at("t").get<size_t>();
        spec.r = j.at("r").get<size_t>();
        spec.d = j.at("degree").at(0).get<size_t>();
        spec.dbar = j.at("degree").at(1).get<size_t>();
        std::string kind = j.at("r_kind").get<std::string>();
        const json& rd = j.at("r_data");
        if (kind == "shift") {
            spec.R = RDescriptor::shift(spec.cols);
            spec.R.transposed = rd.at("transposed").get<bool>();
        } else if (kind == "companion") {
            spec.R = RDescriptor::companion(Poly(residues_back(j.at("modulus"))));
            spec.R.transposed = rd.at("transposed").get<bool>();
        } else if (kind == "diagonal") {
            spec.R = RDescriptor::diagonal(residues_back(rd.at("points")));
        } else if (kind == "band") {
            BandMatrix b;
            b.n = spec.cols;
            b.delta = rd.at("delta").get<size_t>();
            b.lower = rd.at("lower").get<bool>();
            for (const auto& d : rd.at("diags")) b.diags.push_back(residues_back(d));
            spec.R = RDescriptor::banded(b);
        } else if (kind == "quasi") {
            size_t ord = rd.at("order").get<size_t>();
            DenseMatrix dm = matrix_back(rd.at("dense"), spec.cols, spec.cols);
            spec.R = RDescriptor::quasisep(quasisep_from_dense(dm, ord));
        } else {
            throw std::invalid_argument("unknown descriptor kind");
        }
        for (const auto& jr : j.at("g")) {
            std::vector<Poly> row;
            for (const auto& p : jr) row.emplace_back(residues_back(p));
            spec.g.push_back(std::move(row));
        }
        spec.C = matrix_back(j.at("c"), spec.rows, spec.r);
        spec.D = matrix_back(j.at("d"), spec.r, spec.cols);
        return spec;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("malformed spec: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

namespace {

struct VerifyCase {
    std::string op;
    RKind kind = RKind::Shift;
    size_t n = 0, t = 0, r = 0;
    u64 seed = 0;
};

bool vec_eq(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

// empty on success, otherwise a short failure description
std::string run_case(const VerifyCase& cs) {
    try {
        SplitMix64 rng(cs.seed * 0x9e3779b9ULL + cs.n * 131 + cs.t * 17 +
                       (u64)cs.kind + 1);
        if (cs.op == "transpose-mult" || cs.op == "forward-mult") {
            RecurrenceSpec spec =
                gen_spec(cs.kind, cs.n, cs.t, cs.r, cs.seed % 2 == 1, rng);
            validate_spec(spec);
            DenseMatrix a = dense_from_spec(spec);
            DyadicTree tree = build_dyadic_tree(spec);
            Vec b = gen_vec(cs.n, rng);
            Vec got = cs.op == "transpose-mult" ? transpose_mult(spec, tree, b)
                                                : forward_mult(spec, tree, b);
            Vec want = cs.op == "transpose-mult" ? mat_transpose_vec(a, b)
                                                 : mat_vec(a, b);
            if (!vec_eq(got, want)) return "result differs from dense oracle";
        } else if (cs.op == "solve") {
            RecurrenceSpec spec = gen_solve_spec(cs.n, cs.t, rng);
            DenseMatrix a = dense_from_spec(spec);
            Vec y = gen_vec(cs.n, rng);
            Vec xt = triangular_solve(spec, y, true);
            if (!vec_eq(mat_transpose_vec(a, xt), y))
                return "transposed solve residual nonzero";
            Vec xf = triangular_solve(spec, y, false);
            if (!vec_eq(mat_vec(a, xf), y)) return "solve residual nonzero";
        } else if (cs.op == "displacement") {
            const RKind lks[3] = {RKind::Band, RKind::Diagonal, RKind::Quasi};
            const RKind rks[5] = {RKind::Shift, RKind::Companion,
                                  RKind::Diagonal, RKind::Band, RKind::Quasi};
            DispOp op = cs.seed % 2 == 0 ? DispOp::Sylvester : DispOp::Stein;
            DisplacementRep rep =
                gen_displacement(op, lks[(cs.n + cs.seed) % 3],
                                 rks[(cs.n + cs.t + cs.seed) % 5], cs.n,
                                 std::max<size_t>(cs.r, 1), rng);
            DenseMatrix a = dense_from_displacement(rep);
            Vec b = gen_vec(cs.n, rng), c = gen_vec(cs.n, rng);
            if (!vec_eq(disp_mult(rep, b, false), mat_vec(a, b)))
                return "product differs from dense oracle";
            if (!vec_eq(disp_mult(rep, c, true), mat_transpose_vec(a, c)))
                return "transposed product differs from dense oracle";
        } else {
            return "unknown op";
        }
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

int verify_spec_file(const std::string& path, std::ostream& out) {
    std::ifstream in(path);
    if (!in) {
        out << "FAIL op=load spec=" << path << " : cannot open file\n";
        return 1;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const char* ops[2] = {"transpose-mult", "forward-mult"};
    for (const char* op : ops) {
        std::string err;
        try {
            RecurrenceSpec spec = spec_from_json(ss.str());
            validate_spec(spec);
            DenseMatrix a = dense_from_spec(spec);
            DyadicTree tree = build_dyadic_tree(spec);
            SplitMix64 rng(0);
            Vec b = gen_vec(spec.cols, rng);
            if (std::string(op) == "transpose-mult") {
                if (!vec_eq(transpose_mult(spec, tree, b), mat_transpose_vec(a, b)))
                    err = "result differs from dense oracle";
            } else {
                Vec bf = gen_vec(spec.rows, rng);
                if (!vec_eq(forward_mult(spec, tree, bf), mat_vec(a, bf)))
                    err = "result differs from dense oracle";
            }
        } catch (const std::exception& e) {
            err = e.what();
        }
        if (!err.empty()) {
            out << "FAIL op=" << op << " spec=" << path << " : " << err << "\n";
            return 1;
        }
    }
    out << "verified spec " << path << "\n";
    return 0;
}

} // namespace

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
    if (opt.spec_path) return verify_spec_file(*opt.spec_path, out);
    if (opt.sizes.empty()) {
        out << "verify: no sizes given\n";
        return 2;
    }
    std::vector<VerifyCase> cases;
    const RKind kinds[5] = {RKind::Shift, RKind::Companion, RKind::Diagonal,
                            RKind::Band, RKind::Quasi};
    for (size_t n : opt.sizes)
        for (size_t t : opt.widths)
            for (u64 seed : opt.seeds) {
                for (RKind k : kinds) {
                    cases.push_back({"transpose-mult", k, n, t, 2, seed});
                    cases.push_back({"forward-mult", k, n, t, 2, seed});
                }
                cases.push_back({"solve", RKind::Shift, n, std::max<size_t>(t, 1), t, seed});
                cases.push_back({"displacement", RKind::Diagonal, n, t, 2, seed});
            }

    std::vector<std::string> fails(cases.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cases.size()) break;
            fails[i] = run_case(cases[i]);
        }
    };
    size_t jobs = std::max<size_t>(opt.jobs, 1);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (size_t i = 0; i < cases.size(); ++i) {
        if (fails[i].empty()) continue;
        const VerifyCase& cs = cases[i];
        out << "FAIL op=" << cs.op << " kind=" << kind_name(cs.kind)
            << " n=" << cs.n << " t=" << cs.t << " r=" << cs.r
            << " seed=" << cs.seed << " : " << fails[i] << "\n";
        return 1;
    }
    out << "verified " << cases.size() << " cases\n";
    return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

u64 elapsed_ns(Clock::time_point t0) {
    return (u64)std::chrono::duration_cast<std::chrono::nanoseconds>(
               Clock::now() - t0)
        .count();
}

// dense mat-vec cost for an n x n matrix, measured on a row chunk
u64 dense_baseline_ns(size_t n, SplitMix64& rng) {
    const size_t chunk = std::min<size_t>(n, 256);
    DenseMatrix m(chunk, n);
    for (size_t i = 0; i < chunk; ++i)
        for (size_t j = 0; j < n; ++j) m.at(i, j) = rng.field_element();
    Vec b = gen_vec(n, rng);
    size_t reps = 0;
    auto t0 = Clock::now();
    Vec sink(chunk);
    do {
        sink = mat_vec(m, b);
        ++reps;
    } while (elapsed_ns(t0) < 2'000'000ULL);
    u64 per = elapsed_ns(t0) / reps;
    if (!sink.empty() && sink[0].value == 0xffffffffu) per += 1; // keep sink live
    return per * ((n + chunk - 1) / chunk);
}

} // namespace

int cmd_bench(const BenchOptions& opt, std::ostream& out) {
    if (opt.sizes.empty()) {
        out << "bench: no sizes given\n";
        return 2;
    }
    std::ostringstream csv;
    csv << "op,n,t,r,seed,pre_ns,query_ns,dense_ns\n";
    for (size_t n : opt.sizes) {
        SplitMix64 rng(opt.seed ^ (u64)n);
        u64 pre_ns = 0, query_ns = 0;
        if (opt.op == "solve") {
            RecurrenceSpec spec = gen_solve_spec(n, opt.t, rng);
            Vec y = gen_vec(n, rng);
            auto t0 = Clock::now();
            Vec x = triangular_solve(spec, y, true);
            query_ns = elapsed_ns(t0);
            if (!x.empty() && x[0].value == 0xffffffffu) query_ns += 1;
        } else if (opt.op == "transpose-mult" || opt.op == "forward-mult") {
            RecurrenceSpec spec =
                gen_spec(RKind::Shift, n, opt.t, opt.r, false, rng);
            auto t0 = Clock::now();
            DyadicTree tree = build_dyadic_tree(spec);
            pre_ns = elapsed_ns(t0);
            Vec b = gen_vec(n, rng);
            t0 = Clock::now();
            Vec got = opt.op == "transpose-mult" ? transpose_mult(spec, tree, b)
                                                 : forward_mult(spec, tree, b);
            query_ns = elapsed_ns(t0);
            if (!got.empty() && got[0].value == 0xffffffffu) query_ns += 1;
        } else {
            out << "bench: unknown op " << opt.op << "\n";
            return 2;
        }
        u64 dense_ns = dense_baseline_ns(n, rng);
        csv << opt.op << "," << n << "," << opt.t << "," << opt.r << ","
            << opt.seed << "," << pre_ns << "," << query_ns << "," << dense_ns
            << "\n";
    }
    out << csv.str();
    if (!opt.csv_path.empty()) {
        std::ofstream f(opt.csv_path);
        if (!f) {
            out << "bench: cannot write " << opt.csv_path << "\n";
            return 1;
        }
        f << csv.str();
    }
    return 0;
}

// ---------------------------------------------------------------------------
// demo
// ---------------------------------------------------------------------------

namespace {

int verdict(std::ostream& out, bool ok) {
    out << "oracle agreement: " << (ok ? "yes" : "MISMATCH") << "\n";
    return ok ? 0 : 1;
}

int demo_chebyshev(size_t n, std::ostream& out) {
    Vec points(n);
    for (size_t j = 0; j < n; ++j) points[j] = FieldElement((i64)(j + 2));
    OrthoFamily fam = chebyshev_family(points);
    SplitMix64 rng(42);
    Vec b = gen_vec(n, rng);
    Vec vals = orthogonal_transform(fam, b, true);
    out << "demo: chebyshev synthesis of a degree-" << (n - 1)
        << " series at " << n << " points\n";
    bool ok = true;
    for (size_t j = 0; j < n; ++j) {
        FieldElement want =
            ortho_eval_oracle(fam.alpha, fam.beta, fam.gamma, b, points[j]);
        if (j < 6)
            out << "  z=" << points[j].value << " -> " << vals[j].value << "\n";
        ok = ok && vals[j] == want;
    }
    Vec proj = orthogonal_transform(fam, vals, false);
    out << "  projection of the sampled values computed as well ("
        << proj.size() << " coefficients)\n";
    return verdict(out, ok);
}

int demo_bernoulli(size_t n, std::ostream& out) {
    Vec vals = bernoulli_numbers(n);
    Vec want = bernoulli_oracle(n);
    out << "demo: first " << n << " Bernoulli numbers as residues\n";
    for (size_t i = 0; i < std::min<size_t>(n, 8); ++i)
        out << "  B_" << i << " = " << vals[i].value << "\n";
    return verdict(out, vals == want);
}

int demo_stirling(size_t n, std::ostream& out) {
    DenseMatrix table = stirling_table_oracle(n);
    out << "demo: Stirling partition numbers, rows 0.." << std::min<size_t>(n, 6) - 1
        << "\n";
    for (size_t i = 0; i < std::min<size_t>(n, 6); ++i) {
        out << " ";
        for (size_t j = 0; j <= i; ++j) out << " " << table.at(i, j).value;
        out << "\n";
    }
    SplitMix64 rng(7);
    Vec x = gen_vec(n, rng);
    bool ok = stirling_apply(n, x, false) == mat_vec(table, x) &&
              stirling_apply(n, x, true) == mat_transpose_vec(table, x);
    return verdict(out, ok);
}

int demo_bivariate(size_t n, std::ostream& out) {
    size_t d = 2;
    while ((d + 1) * (d + 1) <= n) ++d;
    const size_t m = d * d;
    Vec xs(m), ys(m);
    for (size_t i = 0; i < m; ++i) {
        xs[i] = FieldElement((i64)(i + 1));
        ys[i] = FieldElement((i64)(2 * i + 3));
    }
    RecurrenceSpec spec = bivariate_eval_spec(xs, ys, d);
    DenseMatrix a = dense_from_spec(spec);
    out << "demo: bivariate evaluation, degree < " << d << " in each variable, "
        << m << " points\n";
    bool rows_ok = true;
    for (size_t i = 0; i < m; ++i)
        for (size_t bb = 0; bb < d; ++bb)
            for (size_t aa = 0; aa < d; ++aa)
                rows_ok = rows_ok && a.at(i, bb * d + aa) ==
                                         xs[i].pow(aa) * ys[i].pow(bb);
    out << "  monomial rows match direct powers: " << (rows_ok ? "yes" : "no")
        << "\n";
    SplitMix64 rng(3);
    Vec coeffs = gen_vec(m, rng);
    DyadicTree tree = build_dyadic_tree(spec);
    // rows are per-point monomial vectors, so evaluation is the forward product
    Vec vals = forward_mult(spec, tree, coeffs);
    for (size_t i = 0; i < std::min<size_t>(m, 4); ++i)
        out << "  P(x_" << i << ", y_" << i << ") = " << vals[i].value << "\n";
    return verdict(out, rows_ok && vals == mat_vec(a, coeffs));
}

int demo_cauchy(size_t n, std::ostream& out) {
    Vec s(n), u(n);
    for (size_t i = 0; i < n; ++i) {
        s[i] = FieldElement((i64)(i + 1));
        u[i] = FieldElement((i64)(n + i + 1));
    }
    DisplacementRep rep;
    rep.op = DispOp::Sylvester;
    rep.L = RDescriptor::diagonal(s);
    rep.R = RDescriptor::diagonal(u);
    rep.C = DenseMatrix(n, 1);
    rep.D = DenseMatrix(1, n);
    for (size_t i = 0; i < n; ++i) {
        rep.C.at(i, 0) = FieldElement(1);
        rep.D.at(0, i) = FieldElement(1);
    }
    DenseMatrix want(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) want.at(i, j) = (s[i] - u[j]).inv();
    out << "demo: Cauchy matrix on " << n
        << " + " << n << " nodes, displacement rank 1\n  first row:";
    for (size_t j = 0; j < std::min<size_t>(n, 5); ++j)
        out << " " << want.at(0, j).value;
    out << "\n";
    bool ok = dense_from_displacement(rep) == want;
    SplitMix64 rng(11);
    Vec b = gen_vec(n, rng);
    ok = ok && disp_mult(rep, b, false) == mat_vec(want, b);
    DisplacementRep inv = displacement_inverse(rep);
    DenseMatrix xd = mat_inverse(want);
    DenseMatrix lhs = mat_sub(mat_mul(r_to_dense(inv.L), xd),
                              mat_mul(xd, r_to_dense(inv.R)));
    ok = ok && lhs == mat_mul(inv.C, inv.D);
    out << "  inverse generators recovered with width " << inv.rank() << "\n";
    return verdict(out, ok);
}

} // namespace

int cmd_demo(const DemoOptions& opt, std::ostream& out) {
    const size_t n = std::max<size_t>(opt.n, 4);
    if (opt.name == "chebyshev") return demo_chebyshev(n, out);
    if (opt.name == "bernoulli") return demo_bernoulli(n, out);
    if (opt.name == "stirling") return demo_stirling(n, out);
    if (opt.name == "bivariate") return demo_bivariate(n, out);
    if (opt.name == "cauchy") return demo_cauchy(n, out);
    out << "unknown demo: " << opt.name
        << " (expected chebyshev|bernoulli|stirling|bivariate|cauchy)\n";
    return 2;
}

} // namespace recwidth
