#include <iostream>

#include <CLI11.hpp>

#include <eqsyz/cli/run.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Syzygies, Cohen-Macaulay checks and Atiyah-Bredon complexes for equivariant cohomology"};
    eqsyz::cli::Request req;
    std::string checks;
    app.add_option("command", req.command, "module-analyze | gkm | weyl-verify | cartan | filtration-verify | integrate")
        ->required();
    app.add_option("input", req.input, "input JSON file (or a report, whose inputs_echo is used)")->required();
    app.add_option("--format", req.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--check", checks, "comma separated list of checks to run");
    app.add_option("--max-degree", req.max_degree, "series truncation degree")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", req.seed, "seed for randomized checks");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : eqsyz::cli::exit_code::input_error;
    }
    req.checks = eqsyz::cli::split_checks(checks);
    auto out = eqsyz::cli::run(req);
    (out.exit_code == eqsyz::cli::exit_code::input_error ? std::cerr : std::cout) << out.output;
    return out.exit_code;
}
