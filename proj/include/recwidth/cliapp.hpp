#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "recwidth/recurrence.hpp"

namespace recwidth {

// JSON (de)serialization of recurrence specs; field elements are serialized
// as residues. Schema:
//   { "n": int, "rows": int, "t": int, "r": int, "degree": [d, dbar],
//     "modulus": [c0..] | null, "r_kind": "shift"|"companion"|"diagonal"|
//     "band"|"quasi", "r_data": {...}, "g": [[[..]..]..], "c": [[..]..],
//     "d": [[..]..] }
std::string spec_to_json(const RecurrenceSpec& spec);
RecurrenceSpec spec_from_json(const std::string& text);

struct VerifyOptions {
    std::vector<size_t> sizes;
    std::vector<size_t> widths = {1, 2};
    std::vector<uint64_t> seeds = {0, 1};
    size_t jobs = 1;
    std::optional<std::string> spec_path; // verify one serialized spec
};

struct BenchOptions {
    std::string op = "transpose-mult";
    std::vector<size_t> sizes;
    size_t t = 1;
    size_t r = 1;
    uint64_t seed = 0;
    std::string csv_path;
};

struct DemoOptions {
    std::string name;
    size_t n = 16;
    size_t r = 1;
};

// exit status 0 iff every (op, size, width, seed) case matches the dense
// oracle; the first failing tuple is reported on `out`
int cmd_verify(const VerifyOptions& opt, std::ostream& out);

// CSV rows "op,n,t,r,seed,pre_ns,query_ns,dense_ns"; single-threaded
int cmd_bench(const BenchOptions& opt, std::ostream& out);

// worked examples (chebyshev | bernoulli | stirling | bivariate | cauchy)
// printing inputs, structured results, and an oracle comparison verdict
int cmd_demo(const DemoOptions& opt, std::ostream& out);

} // namespace recwidth
