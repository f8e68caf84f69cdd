#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace airy::cli {

enum class Subcommand { Validate, Profile, Resolvent, Semigroup, LevelCurve, Weyl, Laplace };
enum class OutputFormat { Csv, Json };

/// Field names match the keys accepted by --config.
struct RunConfig {
    std::optional<Subcommand> subcommand;
    std::string potential;
    std::vector<double> lambda_list;
    std::vector<double> t_list;
    std::vector<double> range;  // {lo, hi}
    std::optional<double> epsilon;
    OutputFormat output_format = OutputFormat::Csv;
    std::string output_path = "-";
    int points_per_rho = 20;
    int schur_grid_n = 2000;
    std::uint64_t seed = 0;
    bool require_numeric = false;

    // validate
    double x_max = 50.0;
    // levelcurve: real | imag | damped-log | damped-pow
    std::string kind = "real";
    double exponent = 2.0;
    int samples = 50;
    // laplace
    double M = 2.0;
    // weyl
    double p = 1.0;
    int grid_n = 4000;
    double L = 12.0;
    int k_max = 40;
};

std::string_view subcommand_name(Subcommand s) noexcept;

/// Thrown by parse_args for --help; carries the help text.
struct HelpRequested {
    std::string text;
};

/// Parses argv (CLI11). A --config file is read first; flags given on the
/// command line override its fields. Throws airy::BadSpecError on bad input.
RunConfig parse_args(int argc, const char* const* argv);

/// Runs the pipeline and writes the result. Errors are reported as a single
/// `error: code=<code> message="<text>"` line on `err`.
/// Exit status: 0 success, 1 a validation check failed, 2 error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with error reporting; used by main().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace airy::cli
