#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "airy/cli.hpp"
#include "airy/errors.hpp"
#include "airy/resolvent.hpp"

using namespace airy;
using namespace airy::cli;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result invoke(std::vector<const char*> args) {
    args.insert(args.begin(), "airyres");
    std::ostringstream out, err;
    const int status = main_entry(static_cast<int>(args.size()), args.data(), out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("parse_args maps flags onto RunConfig") {
    const char* argv[] = {"airyres", "resolvent", "--potential", "pow:2", "--lambda", "4,9", "--points-per-rho", "30",
                          "--seed", "7", "--format", "json", "--require-numeric"};
    const RunConfig cfg = parse_args(13, argv);
    CHECK(cfg.subcommand == Subcommand::Resolvent);
    CHECK(cfg.potential == "pow:2");
    CHECK(cfg.lambda_list == std::vector<double>{4.0, 9.0});
    CHECK(cfg.points_per_rho == 30);
    CHECK(cfg.seed == 7);
    CHECK(cfg.output_format == OutputFormat::Json);
    CHECK(cfg.require_numeric);
}

TEST_CASE("positional potential") {
    const char* argv[] = {"airyres", "profile", "pow:2", "--lambda", "9"};
    CHECK(parse_args(5, argv).potential == "pow:2");
}

TEST_CASE("semigroup closed form through the CLI") {
    const Result r = invoke({"semigroup", "--potential", "pow:2", "--t", "2"});
    CHECK(r.status == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"t", "log_norm", "maximizer"});
    CHECK(std::stod(rows[1][1]) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("resolvent rows are ordered lower <= numeric <= upper") {
    const Result r = invoke({"resolvent", "--potential", "pow:2", "--lambda", "4,9"});
    CHECK(r.status == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"lambda", "x_lambda", "f_at_xlambda", "log_asymptotic",
                                              "log_schur_upper", "log_witness_lower", "log_numeric", "guard"});
    for (std::size_t i = 1; i < 3; ++i) {
        CHECK(std::stod(rows[i][5]) <= std::stod(rows[i][6]));
        CHECK(std::stod(rows[i][6]) <= std::stod(rows[i][4]));
        CHECK(rows[i][7] == "0");
    }
}

TEST_CASE("guard leaves log_numeric empty unless numeric is required") {
    const Result r = invoke({"resolvent", "pow:2", "--lambda", "100"});
    CHECK(r.status == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][6].empty());
    CHECK(rows[1][7] == "1");
    const Result strict = invoke({"resolvent", "pow:2", "--lambda", "100", "--require-numeric"});
    CHECK(strict.status == 2);
    CHECK(strict.err.rfind("error: code=overflow_guard message=\"", 0) == 0);
}

TEST_CASE("CSV output is deterministic") {
    const auto a = invoke({"resolvent", "pow:1", "--lambda", "2,3"});
    const auto b = invoke({"resolvent", "pow:1", "--lambda", "2,3"});
    CHECK(a.out == b.out);
}

TEST_CASE("JSON output round-trips bit-exactly") {
    const Result r = invoke({"resolvent", "pow:1", "--lambda", "2", "--format", "json"});
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const ResolventEstimate e = estimate_resolvent(Potential::pow(1), 2.0);
    const auto& row = doc["rows"][0];
    CHECK(row["log_asymptotic"].get<double>() == e.log_asymptotic);
    CHECK(row["log_schur_upper"].get<double>() == e.log_schur_upper);
    CHECK(row["log_witness_lower"].get<double>() == e.log_witness_lower);
    CHECK(row["log_numeric"].get<double>() == *e.log_numeric);
    CHECK(row["f_at_xlambda"].get<double>() == e.f_at_xlambda);
}

TEST_CASE("CSV values parse back bit-exactly") {
    const Result r = invoke({"profile", "logpow:1", "--lambda", "2"});
    const auto rows = csv_rows(r.out);
    const SpectralProfile p = profile(Potential::log_pow(1), 2.0);
    CHECK(std::stod(rows[1][1]) == p.x_lambda);
    CHECK(std::stod(rows[1][2]) == p.f_at_xlambda);
    CHECK(std::stod(rows[1][7]) == p.rho);
}

TEST_CASE("errors produce one parsable line and a nonzero status") {
    const Result bad = invoke({"resolvent", "--potential", "cubic:2", "--lambda", "4"});
    CHECK(bad.status == 2);
    CHECK(bad.err.rfind("error: code=bad_spec message=\"", 0) == 0);
    CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);

    const Result below = invoke({"profile", "pow:2", "--lambda", "0.5"});
    CHECK(below.status == 2);
    CHECK(below.err.rfind("error: code=below_lambda0", 0) == 0);

    const Result io = invoke({"semigroup", "pow:2", "--t", "2", "-o", "/nonexistent-dir/x.csv"});
    CHECK(io.status == 2);
    CHECK(io.err.rfind("error: code=io_error", 0) == 0);

    CHECK(invoke({}).status == 2);
    CHECK(invoke({"profile", "pow:2"}).status == 2);
    CHECK(invoke({"levelcurve", "--epsilon", "1e-3"}).status == 2);
}

TEST_CASE("validate exit codes") {
    CHECK(invoke({"validate", "--potential", "logpow:1"}).status == 0);
    const Result r = invoke({"validate", "exppow:1", "--format", "json"});
    CHECK(r.status == 0);
    CHECK(nlohmann::json::parse(r.out)["meta"]["all_passed"].get<bool>());
}

TEST_CASE("--config supplies fields and flags override them") {
    const auto path = std::filesystem::temp_directory_path() / "airyres_test_config.json";
    {
        std::ofstream f(path);
        f << R"({"subcommand": "semigroup", "potential": "pow:2", "t_list": [2, 4], "output_format": "csv"})";
    }
    const std::string p = path.string();
    const Result r = invoke({"--config", p.c_str()});
    CHECK(r.status == 0);
    CHECK(csv_rows(r.out).size() == 3);
    const Result o = invoke({"semigroup", "--config", p.c_str(), "--t", "6"});
    const auto rows = csv_rows(o.out);
    REQUIRE(rows.size() == 2);
    CHECK(std::stod(rows[1][1]) == doctest::Approx(-18.0));
    {
        std::ofstream f(path);
        f << R"({"subcommand": "semigroup", "bogus": 1})";
    }
    CHECK(invoke({"--config", p.c_str()}).status == 2);
    std::filesystem::remove(path);
}

TEST_CASE("output file is written") {
    const auto path = std::filesystem::temp_directory_path() / "airyres_test_out.csv";
    const std::string p = path.string();
    const Result r = invoke({"laplace", "pow:2", "--lambda", "25", "-o", p.c_str()});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto rows = csv_rows(ss.str());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "lambda");
    CHECK(std::stod(rows[1][4]) > 0.9);
    std::filesystem::remove(path);
}

TEST_CASE("levelcurve and weyl metadata") {
    const Result lc = invoke({"levelcurve", "--kind", "damped-pow", "--exponent", "1", "--epsilon", "0.01",
                              "--range", "10,1000", "--samples", "4"});
    CHECK(lc.status == 0);
    CHECK(lc.out.find("# conjectured=true") != std::string::npos);
    CHECK(lc.out.find("# leading_order=true") != std::string::npos);
    CHECK(csv_rows(lc.out).size() == 5);
    const Result w = invoke({"weyl", "--exponent", "1", "--k-max", "12"});
    CHECK(w.status == 0);
    CHECK(w.out.find("# fitted_slope=") != std::string::npos);
    CHECK(w.out.find("# expected_slope=1") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
    const Result r = invoke({"--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("resolvent") != std::string::npos);
}
