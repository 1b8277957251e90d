#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include <eqsyz/cli/run.hpp>

using namespace eqsyz;
using cli::Request;
using Json = nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(EQSYZ_DATA_DIR) + "/" + name; }

cli::Outcome run(const std::string& command, const std::string& input, std::vector<std::string> checks = {},
                 const std::string& format = "json") {
    Request req;
    req.command = command;
    req.input = input;
    req.checks = std::move(checks);
    req.format = format;
    return cli::run(req);
}

Json report(const cli::Outcome& out) { return Json::parse(out.output); }

/// Writes `text` to a fresh file in the temporary directory and returns its path.
std::string scratch(const std::string& name, const std::string& text) {
    auto dir = std::filesystem::temp_directory_path() / "eqsyz_cli_tests";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST(Cli, KoszulModule) {
    auto out = run("module-analyze", data("koszul2.json"));
    ASSERT_EQ(out.exit_code, cli::exit_code::pass) << out.output;
    Json r = report(out);
    EXPECT_EQ(r["verdict"], "pass");
    std::vector<int> ranks;
    for (const auto& b : r["results"]["betti"]) ranks.push_back(b["rank"].get<int>());
    EXPECT_EQ(ranks, (std::vector<int>{1, 2, 1}));
    EXPECT_EQ(r["results"]["depth"], 0);
    EXPECT_EQ(r["results"]["dimension"], 0);
    EXPECT_EQ(r["results"]["cohen_macaulay"], true);
    EXPECT_EQ(r["results"]["syzygy_order"], 0);
    for (const auto& [name, c] : r["checks"].items()) EXPECT_TRUE(c.contains("theorem")) << name;
}

TEST(Cli, SphereGraph) {
    auto out = run("gkm", data("s2.json"), {"cs", "pairing"});
    ASSERT_EQ(out.exit_code, cli::exit_code::pass) << out.output;
    Json r = report(out);
    EXPECT_EQ(r["results"]["cohomology"]["rank"], 2);
    EXPECT_EQ(r["results"]["cohomology"]["free"], true);
    EXPECT_EQ(r["checks"]["cs"]["exact_at_ab0"], true);
    EXPECT_EQ(r["checks"]["pairing"]["determinant"], "-1");
    EXPECT_EQ(r["options"]["checks"], Json({"cs", "pairing"}));
}

TEST(Cli, ShippedInputsPass) {
    std::vector<std::pair<std::string, std::string>> cases{
        {"gkm", "s2xs2.json"},          {"gkm", "su2_s2.json"},
        {"filtration-verify", "s2_filtration.json"}, {"filtration-verify", "s2xs2_filtration.json"},
        {"filtration-verify", "free_circle_filtration.json"},
        {"weyl-verify", "group_z2.json"}, {"weyl-verify", "group_a2.json"}, {"weyl-verify", "group_b2.json"},
        {"weyl-verify", "group_swap.json"},
        {"cartan", "gstar_point.json"},   {"cartan", "gstar_free_circle.json"}, {"cartan", "gstar_formal_pair.json"},
        {"integrate", "s2_integrate.json"}};
    for (const auto& [cmd, file] : cases) {
        auto out = run(cmd, data(file));
        EXPECT_EQ(out.exit_code, cli::exit_code::pass) << cmd << " " << file << "\n" << out.output;
    }
}

TEST(Cli, SymmetricSphereRunsDescentByDefault) {
    Json r = report(run("gkm", data("su2_s2.json")));
    ASSERT_TRUE(r["checks"].contains("descent"));
    EXPECT_EQ(r["checks"]["descent"]["verdict"], "pass");
}

TEST(Cli, IntegrateSphere) {
    Json r = report(run("integrate", data("s2_integrate.json")));
    std::vector<std::string> got;
    for (const auto& c : r["results"]["classes"]) got.push_back(c["integral"].get<std::string>());
    EXPECT_EQ(got, (std::vector<std::string>{"0", "1", "t", "0"}));
}

TEST(Cli, RestrictionChecksAreSeeded) {
    Request req;
    req.command = "weyl-verify";
    req.input = data("group_a2.json");
    req.checks = {"restriction"};
    req.seed = 7;
    auto a = cli::run(req), b = cli::run(req);
    EXPECT_EQ(a.exit_code, cli::exit_code::pass);
    EXPECT_EQ(a.output, b.output);
    EXPECT_EQ(report(a)["checks"]["restriction"]["trials"].size(), 10u);
}

TEST(Cli, FailingCheckExitsOne) {
    std::string path = scratch("wrong_invariants.json",
                               R"({"rank": 2, "generators": [[[0, 1], [1, 0]]], "invariants": ["x + y", "x^3 + y^3"]})");
    auto out = run("weyl-verify", path);
    EXPECT_EQ(out.exit_code, cli::exit_code::check_failed) << out.output;
    Json r = report(out);
    EXPECT_EQ(r["verdict"], "fail");
    EXPECT_EQ(r["checks"]["invariants"]["verdict"], "fail");
    EXPECT_EQ(r["checks"]["kostant"]["verdict"], "fail");

    std::string ab1_free = scratch("ab1_free.json", R"({
      "ring": {"vars": ["t"]},
      "modules": [{"row_degrees": [0]}, {"row_degrees": [0]}],
      "maps": [[["1"]]]
    })");
    EXPECT_EQ(run("filtration-verify", ab1_free).exit_code, cli::exit_code::check_failed);
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(run("filtration-verify", data("bad.json")).exit_code, cli::exit_code::input_error);
    EXPECT_EQ(run("frobnicate", data("s2.json")).exit_code, cli::exit_code::input_error);
    EXPECT_EQ(run("gkm", data("does_not_exist.json")).exit_code, cli::exit_code::input_error);
    EXPECT_EQ(run("gkm", data("s2.json"), {"no-such-check"}).exit_code, cli::exit_code::input_error);
    EXPECT_EQ(run("gkm", data("s2.json"), {}, "yaml").exit_code, cli::exit_code::input_error);

    auto broken = run("gkm", scratch("broken.json", "{\"rank\": 1,\n \"vertices\": [\"N\" \"S\"]}"));
    EXPECT_EQ(broken.exit_code, cli::exit_code::input_error);
    EXPECT_NE(broken.output.find("byte"), std::string::npos) << broken.output;

    auto weight = run("gkm", scratch("weight.json", R"({"rank": 1, "vertices": ["N", "S"],
      "edges": [{"v": "N", "w": "S", "weight": [2]}]})"));
    EXPECT_EQ(weight.exit_code, cli::exit_code::input_error);
    EXPECT_NE(weight.output.find("primitive"), std::string::npos);

    auto poly = run("module-analyze", scratch("poly.json", R"({"ring": {"vars": ["x"]}, "row_degrees": [0],
      "col_degrees": [2], "matrix": [["x +"]]})"));
    EXPECT_EQ(poly.exit_code, cli::exit_code::input_error);
}

TEST(Cli, ReportRoundTripIsByteIdentical) {
    std::vector<std::pair<std::string, std::string>> cases{{"module-analyze", "koszul2.json"},
                                                           {"gkm", "su2_s2.json"},
                                                           {"filtration-verify", "s2xs2_filtration.json"},
                                                           {"cartan", "gstar_free_circle.json"},
                                                           {"weyl-verify", "group_b2.json"},
                                                           {"integrate", "s2_integrate.json"}};
    for (const auto& [cmd, file] : cases) {
        auto first = run(cmd, data(file));
        ASSERT_EQ(first.exit_code, cli::exit_code::pass) << file;
        auto again = run(cmd, scratch("echo_" + file, first.output));
        EXPECT_EQ(again.exit_code, first.exit_code);
        EXPECT_EQ(again.output, first.output) << file;
    }
}

TEST(Cli, TextFormat) {
    auto out = run("cartan", data("gstar_free_circle.json"), {}, "text");
    ASSERT_EQ(out.exit_code, cli::exit_code::pass);
    EXPECT_EQ(out.output.rfind("command: cartan\nverdict: pass\n", 0), 0u) << out.output;
    EXPECT_NE(out.output.find("[pass] uct"), std::string::npos);
}

TEST(Cli, SplitChecks) {
    EXPECT_EQ(cli::split_checks("cs,,pairing,"), (std::vector<std::string>{"cs", "pairing"}));
    EXPECT_TRUE(cli::split_checks("").empty());
}

TEST(Io, PolynomialForms) {
    auto R = make_ring({"x", "y"});
    Polynomial a = io::polynomial_from_json(Json("3*x^2*y - 1/2*y^3"), R, "p");
    Polynomial b = io::polynomial_from_json(Json::parse(R"([{"coeff": 3, "exps": [2, 1]}, {"coeff": "-1/2", "exps": [0, 3]}])"), R, "p");
    EXPECT_EQ(a, b);
    EXPECT_EQ(io::polynomial_from_json(Json(4), R, "p"), Polynomial::constant(R, Rational(4)));
    EXPECT_THROW(io::polynomial_from_json(Json::parse(R"([{"coeff": 1, "exps": [1]}])"), R, "p"), InvalidInput);
}

TEST(Io, ColumnMajorMatrices) {
    GStarModule A = io::gstar_from_json(io::load_json(data("gstar_free_circle.json")));
    EXPECT_EQ(A.iota()[0](0, 1), Rational(1));
    EXPECT_EQ(A.iota()[0](1, 0), Rational(0));
}

TEST(Io, ModuleRoundTrip) {
    FPModule M = io::module_from_json(io::load_json(data("koszul2.json")));
    FPModule N = io::module_from_json(io::to_json(M));
    EXPECT_EQ(M.hilbert_series(), N.hilbert_series());
    EXPECT_EQ(io::to_json(M), io::to_json(N));
}

TEST(Io, Groups) {
    auto W = io::group_from_json(io::load_json(data("group_swap.json")));
    EXPECT_EQ(W.order(), 2u);
    EXPECT_EQ(io::group_from_json(io::load_json(data("group_b2.json"))).order(), 8u);
    EXPECT_THROW(io::group_from_json(Json::parse(R"({"builtin": "e8"})")), InvalidInput);
}
