#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "recwidth/cliapp.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact structured-matrix toolkit over F_p (p = 998244353)"};
    app.require_subcommand(1);

    recwidth::VerifyOptions vopt;
    std::string spec_path;
    CLI::App* verify = app.add_subcommand(
        "verify", "compare the fast paths against dense oracles");
    verify->add_option("--sizes", vopt.sizes, "matrix sizes to exercise");
    verify->add_option("--widths", vopt.widths, "recurrence widths t");
    verify->add_option("--seeds", vopt.seeds, "RNG seeds");
    verify->add_option("--jobs", vopt.jobs, "worker threads")
        ->check(CLI::Range((size_t)1, (size_t)64));
    verify->add_option("--spec", spec_path,
                       "verify one serialized spec file instead");

    recwidth::BenchOptions bopt;
    CLI::App* bench =
        app.add_subcommand("bench", "time a fast path against a dense sweep");
    bench->add_option("--op", bopt.op,
                      "transpose-mult | forward-mult | solve");
    bench->add_option("--sizes", bopt.sizes, "matrix sizes")->required();
    bench->add_option("--width", bopt.t, "recurrence width t");
    bench->add_option("--rank", bopt.r, "error rank r");
    bench->add_option("--seed", bopt.seed, "RNG seed");
    bench->add_option("--csv", bopt.csv_path, "also write the CSV here");

    recwidth::DemoOptions dopt;
    CLI::App* demo = app.add_subcommand("demo", "worked examples");
    demo->add_option("name", dopt.name,
                     "chebyshev | bernoulli | stirling | bivariate | cauchy")
        ->required();
    demo->add_option("--n", dopt.n, "problem size");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            if (!spec_path.empty()) vopt.spec_path = spec_path;
            return recwidth::cmd_verify(vopt, std::cout);
        }
        if (bench->parsed()) return recwidth::cmd_bench(bopt, std::cout);
        return recwidth::cmd_demo(dopt, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
