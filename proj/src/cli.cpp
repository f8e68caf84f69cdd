#include "airy/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "airy/applications.hpp"
#include "airy/errors.hpp"
#include "airy/potential.hpp"
#include "airy/resolvent.hpp"
#include "airy/semigroup.hpp"
#include "airy/spectral.hpp"

namespace airy::cli {

using nlohmann::json;

namespace {

const std::map<std::string, Subcommand>& subcommand_table() {
    static const std::map<std::string, Subcommand> table{
        {"validate", Subcommand::Validate},   {"profile", Subcommand::Profile},
        {"resolvent", Subcommand::Resolvent}, {"semigroup", Subcommand::Semigroup},
        {"levelcurve", Subcommand::LevelCurve}, {"weyl", Subcommand::Weyl},
        {"laplace", Subcommand::Laplace}};
    return table;
}

const std::map<std::string, OutputFormat>& format_table() {
    static const std::map<std::string, OutputFormat> table{{"csv", OutputFormat::Csv},
                                                            {"json", OutputFormat::Json}};
    return table;
}

template <class T>
T lookup(const std::map<std::string, T>& table, const std::string& key, const char* what) {
    const auto it = table.find(key);
    if (it == table.end()) throw BadSpecError(std::string("unknown ") + what + " '" + key + "'");
    return it->second;
}

// ---- config file --------------------------------------------------------

void apply_json(RunConfig& cfg, const json& j) {
    if (!j.is_object()) throw BadSpecError("config: top level must be an object");
    for (const auto& [key, val] : j.items()) {
        if (key == "subcommand") cfg.subcommand = lookup(subcommand_table(), val.get<std::string>(), "subcommand");
        else if (key == "potential") cfg.potential = val.get<std::string>();
        else if (key == "lambda_list") cfg.lambda_list = val.get<std::vector<double>>();
        else if (key == "t_list") cfg.t_list = val.get<std::vector<double>>();
        else if (key == "range") cfg.range = val.get<std::vector<double>>();
        else if (key == "epsilon") cfg.epsilon = val.is_null() ? std::nullopt : std::optional(val.get<double>());
        else if (key == "output_format") cfg.output_format = lookup(format_table(), val.get<std::string>(), "format");
        else if (key == "output_path") cfg.output_path = val.get<std::string>();
        else if (key == "points_per_rho") cfg.points_per_rho = val.get<int>();
        else if (key == "schur_grid_n") cfg.schur_grid_n = val.get<int>();
        else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
        else if (key == "require_numeric") cfg.require_numeric = val.get<bool>();
        else if (key == "x_max") cfg.x_max = val.get<double>();
        else if (key == "kind") cfg.kind = val.get<std::string>();
        else if (key == "exponent") cfg.exponent = val.get<double>();
        else if (key == "samples") cfg.samples = val.get<int>();
        else if (key == "M") cfg.M = val.get<double>();
        else if (key == "p") cfg.p = val.get<double>();
        else if (key == "grid_n") cfg.grid_n = val.get<int>();
        else if (key == "L") cfg.L = val.get<double>();
        else if (key == "k_max") cfg.k_max = val.get<int>();
        else throw BadSpecError("config: unknown field '" + key + "'");
    }
}

void load_config(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadSpecError("config: cannot open '" + path + "'");
    try {
        apply_json(cfg, json::parse(in));
    } catch (const json::exception& e) {
        throw BadSpecError(std::string("config: ") + e.what());
    }
}

std::optional<std::string> find_config_path(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string_view a = argv[i];
        if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
        if (a.rfind("--config=", 0) == 0) return std::string(a.substr(9));
    }
    return std::nullopt;
}

// ---- output table -------------------------------------------------------

struct Table {
    std::vector<std::pair<std::string, json>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

std::string render_scalar(const json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    return v.get<std::string>();
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string render_csv(const Table& t) {
    std::ostringstream os;
    for (const auto& [k, v] : t.meta) os << "# " << k << '=' << render_scalar(v) << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render_scalar(row[i]);
        os << '\n';
    }
    return os.str();
}

std::string render_json(const Table& t) {
    json doc;
    doc["meta"] = json::object();
    for (const auto& [k, v] : t.meta) doc["meta"][k] = v;
    doc["columns"] = t.columns;
    doc["rows"] = json::array();
    for (const auto& row : t.rows) {
        json r = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = row[i];
        doc["rows"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

// ---- pipelines ----------------------------------------------------------

Potential require_potential(const RunConfig& cfg) {
    if (cfg.potential.empty()) throw BadSpecError("a potential is required, e.g. --potential pow:2");
    return parse_potential(cfg.potential);
}

const std::vector<double>& require_list(const std::vector<double>& xs, const char* flag) {
    if (xs.empty()) throw BadSpecError(std::string(flag) + " needs at least one value");
    return xs;
}

int run_validate(const RunConfig& cfg, Table& t) {
    const Potential pot = require_potential(cfg);
    const ValidationReport rep = validate_assumptions(pot, cfg.x_max);
    t.meta.emplace_back("sampled_lo", rep.sampled_range.first);
    t.meta.emplace_back("sampled_hi", rep.sampled_range.second);
    t.meta.emplace_back("all_passed", rep.all_passed());
    t.columns = {"check", "passed", "witness_x", "witness_value"};
    for (const Check& c : rep.checks) {
        t.rows.push_back({c.name, c.passed, c.witness ? finite_or_null(c.witness->first) : json(nullptr),
                          c.witness ? finite_or_null(c.witness->second) : json(nullptr)});
    }
    return rep.all_passed() ? 0 : 1;
}

int run_profile(const RunConfig& cfg, Table& t) {
    const Potential pot = require_potential(cfg);
    t.columns = {"lambda", "x_lambda", "f_at_xlambda", "wprime_at_xlambda", "x_lambda_0",
                 "delta_lambda", "upsilon1", "rho"};
    for (double lambda : require_list(cfg.lambda_list, "--lambda")) {
        const SpectralProfile p = profile(pot, lambda);
        t.rows.push_back({p.lambda, p.x_lambda, p.f_at_xlambda, p.wprime_at_xlambda, p.x_lambda_0,
                          p.delta_lambda, p.upsilon1, p.rho});
    }
    return 0;
}

int run_resolvent(const RunConfig& cfg, Table& t) {
    const Potential pot = require_potential(cfg);
    EstimateOptions opts;
    opts.points_per_rho = cfg.points_per_rho;
    opts.schur_grid_n = cfg.schur_grid_n;
    opts.seed = cfg.seed;
    t.meta.emplace_back("points_per_rho", cfg.points_per_rho);
    t.meta.emplace_back("schur_grid_n", cfg.schur_grid_n);
    t.meta.emplace_back("seed", cfg.seed);
    t.columns = {"lambda", "x_lambda", "f_at_xlambda", "log_asymptotic", "log_schur_upper",
                 "log_witness_lower", "log_numeric", "guard"};
    for (double lambda : require_list(cfg.lambda_list, "--lambda")) {
        const ResolventEstimate e = estimate_resolvent(pot, lambda, opts);
        if (e.guard_tripped && cfg.require_numeric) throw OverflowGuardError(lambda, 2.0 * e.f_at_xlambda);
        t.rows.push_back({e.lambda, e.x_lambda, e.f_at_xlambda, e.log_asymptotic, e.log_schur_upper,
                          e.log_witness_lower, e.log_numeric ? json(*e.log_numeric) : json(nullptr),
                          e.guard_tripped ? 1 : 0});
    }
    return 0;
}

int run_semigroup(const RunConfig& cfg, Table& t) {
    const Potential pot = require_potential(cfg);
    t.meta.emplace_back("t0", semigroup_t0(pot));
    t.columns = {"t", "log_norm", "maximizer"};
    for (double time : require_list(cfg.t_list, "--t")) {
        const SemigroupEstimate e = estimate_semigroup(pot, time);
        t.rows.push_back({e.t, e.log_norm, e.maximizer});
    }
    return 0;
}

int run_levelcurve(const RunConfig& cfg, Table& t) {
    if (!cfg.epsilon) throw BadSpecError("levelcurve needs --epsilon");
    if (cfg.range.size() != 2) throw BadSpecError("levelcurve needs --range lo,hi");
    const Range r{cfg.range[0], cfg.range[1]};
    const double eps = *cfg.epsilon;
    LevelCurve c;
    if (cfg.kind == "real") c = schrodinger_real_axis_curve(cfg.exponent, eps, r, cfg.samples);
    else if (cfg.kind == "imag") c = schrodinger_imag_axis_curve(require_potential(cfg), eps, r, cfg.samples);
    else if (cfg.kind == "damped-log") c = damped_wave_curve(DampingKind::Log, cfg.exponent, eps, r, cfg.samples);
    else if (cfg.kind == "damped-pow") c = damped_wave_curve(DampingKind::Pow2n, cfg.exponent, eps, r, cfg.samples);
    else throw BadSpecError("unknown levelcurve kind '" + cfg.kind + "' (real, imag, damped-log, damped-pow)");

    t.meta.emplace_back("kind", std::string(curve_kind_name(c.kind)));
    t.meta.emplace_back("epsilon", c.epsilon);
    t.meta.emplace_back("leading_order", c.leading_order);
    t.meta.emplace_back("conjectured", c.conjectured);
    if (!c.note.empty()) t.meta.emplace_back("note", c.note);
    t.columns = {"parameter", "value"};
    const bool spec = !c.specialization.empty();
    if (spec) t.columns.emplace_back("davies");
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
        std::vector<json> row{c.samples[i].parameter, c.samples[i].value};
        if (spec) row.emplace_back(c.specialization[i]);
        t.rows.push_back(std::move(row));
    }
    return 0;
}

int run_weyl(const RunConfig& cfg, Table& t) {
    const WeylFit fit = weyl_fit(cfg.p, cfg.grid_n, cfg.L, cfg.k_max);
    t.meta.emplace_back("p", fit.p);
    t.meta.emplace_back("fitted_slope", fit.fitted_slope);
    t.meta.emplace_back("expected_slope", fit.expected_slope);
    t.meta.emplace_back("L", fit.L);
    t.meta.emplace_back("k_first", fit.k_first);
    t.columns = {"k", "mu_k"};
    for (std::size_t k = 0; k < fit.eigenvalues.size(); ++k)
        t.rows.push_back({static_cast<std::int64_t>(k + 1), fit.eigenvalues[k]});
    return 0;
}

int run_laplace(const RunConfig& cfg, Table& t) {
    const Potential pot = require_potential(cfg);
    t.columns = {"lambda", "M", "log_Iplus", "log_asymptote", "ratio", "log_Iminus"};
    for (double lambda : require_list(cfg.lambda_list, "--lambda")) {
        const double plus = laplace_integral(pot, lambda, cfg.M, Side::Plus);
        const double asym = laplace_asymptote(profile(pot, lambda), cfg.M);
        const double minus = laplace_integral(pot, lambda, cfg.M, Side::Minus);
        t.rows.push_back({lambda, cfg.M, plus, asym, std::exp(plus - asym), finite_or_null(minus)});
    }
    return 0;
}

std::string escape_message(std::string_view msg) {
    std::string out;
    for (char c : msg) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

void report(std::ostream& err, std::string_view code, std::string_view msg) {
    err << "error: code=" << code << " message=\"" << escape_message(msg) << "\"\n";
}

void add_common(CLI::App* sub, RunConfig& cfg, std::string& config_path) {
    sub->add_option("potential,--potential", cfg.potential, "Potential spec family:exponent (pow, logpow, exppow)");
    sub->add_option("--format", cfg.output_format, "Output format: csv or json")
        ->transform(CLI::CheckedTransformer(format_table(), CLI::ignore_case));
    sub->add_option("-o,--output", cfg.output_path, "Output path, - for standard output");
    sub->add_option("--seed", cfg.seed, "Power-iteration seed");
    sub->add_option("--config", config_path, "JSON file with RunConfig fields");
}

}  // namespace

std::string_view subcommand_name(Subcommand s) noexcept {
    for (const auto& [name, value] : subcommand_table())
        if (value == s) return name;
    return "unknown";
}

RunConfig parse_args(int argc, const char* const* argv) {
    RunConfig cfg;
    if (const auto path = find_config_path(argc, argv)) load_config(cfg, *path);

    std::string config_path;
    CLI::App app{"Resolvent, semigroup and level-curve estimates for -d/dx + W(x) on the real line", "airyres"};
    app.add_option("--config", config_path, "JSON file with RunConfig fields");
    app.require_subcommand(0, 1);

    auto* validate = app.add_subcommand("validate", "Check the structural assumptions on W");
    add_common(validate, cfg, config_path);
    validate->add_option("--x-max", cfg.x_max, "Upper end of the sampled range");

    auto* prof = app.add_subcommand("profile", "Turning point, action peak and window per lambda");
    add_common(prof, cfg, config_path);
    prof->add_option("--lambda", cfg.lambda_list, "Comma-separated lambda values")->delimiter(',');

    auto* res = app.add_subcommand("resolvent", "Resolvent-norm estimates per lambda");
    add_common(res, cfg, config_path);
    res->add_option("--lambda", cfg.lambda_list, "Comma-separated lambda values")->delimiter(',');
    res->add_option("--points-per-rho", cfg.points_per_rho, "Nystrom points per Laplace width");
    res->add_option("--schur-grid", cfg.schur_grid_n, "Grid size of the Schur-test integrals");
    res->add_flag("--require-numeric", cfg.require_numeric, "Fail when the overflow guard skips the numeric norm");

    auto* semi = app.add_subcommand("semigroup", "Semigroup norm and maximizer per t");
    add_common(semi, cfg, config_path);
    semi->add_option("--t", cfg.t_list, "Comma-separated times")->delimiter(',');

    auto* level = app.add_subcommand("levelcurve", "Pseudospectral level curves");
    add_common(level, cfg, config_path);
    level->add_option("--kind", cfg.kind, "real, imag, damped-log or damped-pow");
    level->add_option("--exponent", cfg.exponent, "V_p for real, p for damped-log, n for damped-pow");
    level->add_option("--epsilon", cfg.epsilon, "Pseudospectral level");
    level->add_option("--range", cfg.range, "Parameter interval lo,hi")->delimiter(',')->expected(2);
    level->add_option("--samples", cfg.samples, "Number of geometric samples");

    auto* weyl = app.add_subcommand("weyl", "Eigenvalue growth of -d^2/dx^2 + |x|^{2p} + 1");
    add_common(weyl, cfg, config_path);
    weyl->add_option("--exponent", cfg.p, "p");
    weyl->add_option("--grid-n", cfg.grid_n, "Interior grid points");
    weyl->add_option("--half-width", cfg.L, "Initial half-width L");
    weyl->add_option("--k-max", cfg.k_max, "Number of eigenvalues");

    auto* lap = app.add_subcommand("laplace", "Laplace window integrals per lambda");
    add_common(lap, cfg, config_path);
    lap->add_option("--lambda", cfg.lambda_list, "Comma-separated lambda values")->delimiter(',');
    lap->add_option("-M,--multiplier", cfg.M, "Laplace multiplier M");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw BadSpecError(e.what());
    }

    for (const auto& [name, value] : subcommand_table())
        if (app.got_subcommand(name)) cfg.subcommand = value;
    if (!cfg.subcommand) throw BadSpecError("no subcommand given (validate, profile, resolvent, semigroup, levelcurve, weyl, laplace)");
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (!cfg.subcommand) throw BadSpecError("no subcommand given");
        Table t;
        t.meta.emplace_back("subcommand", std::string(subcommand_name(*cfg.subcommand)));
        if (!cfg.potential.empty()) t.meta.emplace_back("potential", cfg.potential);
        int status = 0;
        switch (*cfg.subcommand) {
            case Subcommand::Validate: status = run_validate(cfg, t); break;
            case Subcommand::Profile: status = run_profile(cfg, t); break;
            case Subcommand::Resolvent: status = run_resolvent(cfg, t); break;
            case Subcommand::Semigroup: status = run_semigroup(cfg, t); break;
            case Subcommand::LevelCurve: status = run_levelcurve(cfg, t); break;
            case Subcommand::Weyl: status = run_weyl(cfg, t); break;
            case Subcommand::Laplace: status = run_laplace(cfg, t); break;
        }
        const std::string text = cfg.output_format == OutputFormat::Json ? render_json(t) : render_csv(t);
        if (cfg.output_path == "-") {
            out << text;
        } else {
            std::ofstream file(cfg.output_path);
            if (!file) throw IoError("cannot open output '" + cfg.output_path + "' for writing");
            file << text;
            if (!file) throw IoError("write to '" + cfg.output_path + "' failed");
        }
        return status;
    } catch (const Error& e) {
        report(err, e.code(), e.what());
    } catch (const std::invalid_argument& e) {
        report(err, "invalid_argument", e.what());
    } catch (const std::exception& e) {
        report(err, "internal", e.what());
    }
    return 2;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_args(argc, argv);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const Error& e) {
        report(err, e.code(), e.what());
        return 2;
    }
    return run(cfg, out, err);
}

}  // namespace airy::cli
