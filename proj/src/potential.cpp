#include "airy/potential.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "airy/errors.hpp"
#include "airy/numerics.hpp"

namespace airy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// p * (p - 1) * |x|^(p - 2), with the removable cases at x = 0 resolved.
double second_power_term(double p, double ax) {
    if (p == 1.0) return 0.0;
    if (ax == 0.0) {
        if (p == 2.0) return 2.0;
        return p > 2.0 ? 0.0 : kInf;
    }
    return p * (p - 1.0) * std::pow(ax, p - 2.0);
}

Derivatives eval_pow(double p, double x) {
    const double ax = std::abs(x);
    return {std::pow(ax, p), ax == 0.0 ? 0.0 : sgn(x) * p * std::pow(ax, p - 1.0),
            second_power_term(p, ax)};
}

Derivatives eval_log_pow(double p, double x) {
    const double s = 1.0 + x * x;
    return {0.5 * p * std::log1p(x * x), p * x / s, p * (1.0 - x * x) / (s * s)};
}

Derivatives eval_exp_pow(double p, double x) {
    const double ax = std::abs(x);
    const double w = std::exp(std::pow(ax, p));
    const double dw = ax == 0.0 ? 0.0 : sgn(x) * p * std::pow(ax, p - 1.0) * w;
    // W'' = W * (p (p-1) |x|^(p-2) + p^2 |x|^(2p-2))
    double sq = 0.0;
    if (ax == 0.0)
        sq = p == 1.0 ? 1.0 : (p > 1.0 ? 0.0 : kInf);
    else
        sq = p * p * std::pow(ax, 2.0 * p - 2.0);
    return {w, dw, w * (second_power_term(p, ax) + sq)};
}

}  // namespace

std::string_view family_name(Family f) noexcept {
    switch (f) {
        case Family::LogPow: return "logpow";
        case Family::Pow: return "pow";
        case Family::ExpPow: return "exppow";
        case Family::Custom: return "custom";
    }
    return "custom";
}

Potential::Potential(Family family, double p, double x0, double nu)
    : family_(family), p_(p), x0_(x0), nu_(nu) {}

Potential Potential::log_pow(double p) { return make_potential(Family::LogPow, p); }
Potential Potential::pow(double p) { return make_potential(Family::Pow, p); }
Potential Potential::exp_pow(double p) { return make_potential(Family::ExpPow, p); }

Potential Potential::custom(std::string name, EvalFn eval, double x0, double nu) {
    if (!eval) throw std::invalid_argument("custom potential needs an evaluator");
    if (!(x0 > 0.0)) throw std::invalid_argument("custom potential needs x0 > 0");
    if (!(nu >= -1.0)) throw std::invalid_argument("custom potential needs nu >= -1");
    Potential pot(Family::Custom, 0.0, x0, nu);
    pot.name_ = std::move(name);
    pot.custom_ = std::make_shared<const EvalFn>(std::move(eval));
    return pot;
}

Potential make_potential(Family family, double p) {
    if (family == Family::Custom) throw std::invalid_argument("use Potential::custom for custom weights");
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("potential exponent must be a positive finite number");
    const double nu = family == Family::ExpPow ? p - 1.0 : -1.0;
    return Potential(family, p, 1.0, nu);
}

std::string Potential::spec() const {
    if (family_ == Family::Custom) return "custom:" + name_;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", p_);
    return std::string(family_name(family_)) + ":" + buf;
}

Derivatives Potential::eval(double x) const {
    switch (family_) {
        case Family::Pow: return eval_pow(p_, x);
        case Family::LogPow: return eval_log_pow(p_, x);
        case Family::ExpPow: return eval_exp_pow(p_, x);
        case Family::Custom: return (*custom_)(x);
    }
    return {};
}

double Potential::integral(double x) const {
    const double ax = std::abs(x);
    const double s = sgn(x);
    switch (family_) {
        case Family::Pow: return s * std::pow(ax, p_ + 1.0) / (p_ + 1.0);
        case Family::LogPow:
            return p_ * (x * 0.5 * std::log1p(x * x) - x + std::atan(x));
        case Family::ExpPow: {
            if (ax == 0.0) return 0.0;
            if (p_ == 1.0) return s * std::expm1(ax);
            return s * std::exp(std::pow(ax, p_)) * generalized_dawson(p_, ax);
        }
        case Family::Custom: {
            numerics::QuadratureConfig cfg;
            cfg.rel_tol = 1e-12;
            cfg.abs_tol = 1e-14;
            const auto& fn = *custom_;
            return s * numerics::integrate([&fn](double t) { return fn(t).w; }, 0.0, ax, cfg).value;
        }
    }
    return 0.0;
}

Potential Potential::with_nu(double nu) const {
    Potential copy = *this;
    copy.nu_ = nu;
    return copy;
}

double generalized_dawson(double p, double x) {
    if (x <= 0.0) return 0.0;
    const double xp = std::pow(x, p);
    numerics::QuadratureConfig cfg;
    cfg.rel_tol = 1e-13;
    cfg.abs_tol = 1e-300;
    return numerics::integrate([p, xp](double t) { return std::exp(std::pow(t, p) - xp); }, 0.0, x, cfg)
        .value;
}

Potential parse_potential(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw BadSpecError("bad potential spec '" + std::string(spec) + "': expected family:exponent");
    std::string fam(spec.substr(0, colon));
    std::transform(fam.begin(), fam.end(), fam.begin(), [](unsigned char c) { return std::tolower(c); });
    const std::string_view num = spec.substr(colon + 1);

    double p = 0.0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), p);
    if (ec != std::errc() || ptr != num.data() + num.size() || num.empty())
        throw BadSpecError("bad potential spec '" + std::string(spec) + "': exponent is not a number");
    if (!(p > 0.0) || !std::isfinite(p))
        throw BadSpecError("bad potential spec '" + std::string(spec) + "': exponent must be positive");

    if (fam == "pow") return make_potential(Family::Pow, p);
    if (fam == "logpow") return make_potential(Family::LogPow, p);
    if (fam == "exppow") return make_potential(Family::ExpPow, p);
    throw BadSpecError("bad potential spec '" + std::string(spec) + "': unknown family '" + fam + "'");
}

// ---------------------------------------------------------------------------
// Assumption validator

bool ValidationReport::all_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* ValidationReport::find(std::string_view name) const noexcept {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

// Sup over the upper half of the samples may exceed the sup over the lower
// half by at most this factor before a ratio is declared unbounded.
constexpr double kBoundedGrowth = 1.5;

Check bounded_ratio_check(std::string name, const std::vector<double>& xs, const std::vector<double>& r) {
    Check c{std::move(name), true, std::nullopt};
    const std::size_t half = xs.size() / 2;
    double head = 0.0;
    for (std::size_t i = 0; i < half; ++i) head = std::max(head, r[i]);
    for (std::size_t i = half; i < xs.size(); ++i) {
        if (!std::isfinite(r[i]) || r[i] > kBoundedGrowth * head + 1e-300) {
            c.passed = false;
            c.witness = std::pair{xs[i], r[i]};
            break;
        }
    }
    return c;
}

}  // namespace

ValidationReport validate_assumptions(const Potential& pot, double x_max, int n_samples) {
    const double x0 = pot.x0();
    if (!(x_max > x0)) throw std::invalid_argument("validate_assumptions: x_max must exceed x0");
    if (n_samples < 100) throw std::invalid_argument("validate_assumptions: need at least 100 samples");

    std::vector<double> xs;
    std::vector<Derivatives> ds;
    const double ratio = std::log(x_max / x0);
    for (int i = 1; i <= n_samples; ++i) {
        const double x = i == n_samples ? x_max : x0 * std::exp(ratio * i / n_samples);
        const Derivatives d = pot.eval(x);
        if (!std::isfinite(d.w) || !std::isfinite(d.dw) || !std::isfinite(d.d2w)) break;
        xs.push_back(x);
        ds.push_back(d);
    }

    ValidationReport rep;
    rep.sampled_range = {x0, xs.empty() ? x0 : xs.back()};

    Check even{"evenness", true, std::nullopt};
    Check nonneg{"nonnegativity", true, std::nullopt};
    for (int i = 0; i <= 20; ++i) {
        const double x = x0 * i / 20.0;
        const double w = pot(x);
        if (nonneg.passed && !(w >= 0.0)) {
            nonneg.passed = false;
            nonneg.witness = std::pair{x, w};
        }
        if (even.passed && pot(-x) != w) {
            even.passed = false;
            even.witness = std::pair{x, pot(-x) - w};
        }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (nonneg.passed && !(ds[i].w >= 0.0)) {
            nonneg.passed = false;
            nonneg.witness = std::pair{xs[i], ds[i].w};
        }
        if (even.passed && pot(-xs[i]) != ds[i].w) {
            even.passed = false;
            even.witness = std::pair{xs[i], pot(-xs[i]) - ds[i].w};
        }
    }

    Check mono{"monotonicity", true, std::nullopt};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(ds[i].dw > 0.0) || (i > 0 && ds[i].w < ds[i - 1].w)) {
            mono.passed = false;
            mono.witness = std::pair{xs[i], ds[i].dw};
            break;
        }
    }

    const double nu = pot.nu();
    std::vector<double> r1(xs.size()), r2(xs.size()), ups(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double xn = std::pow(xs[i], nu);
        r1[i] = ds[i].dw / (ds[i].w * xn);
        r2[i] = std::abs(ds[i].d2w) / (ds[i].dw * xn);
        ups[i] = xn / std::sqrt(ds[i].dw);
    }
    Check ctrl1 = bounded_ratio_check("derivative_control_first", xs, r1);
    Check ctrl2 = bounded_ratio_check("derivative_control_second", xs, r2);

    Check decay{"upsilon_decay", true, std::nullopt};
    const std::size_t half = xs.size() / 2;
    if (xs.size() < 4) {
        decay.passed = false;
    } else {
        for (std::size_t i = half + 1; i < xs.size(); ++i) {
            if (!std::isfinite(ups[i]) || ups[i] > ups[i - 1] * (1.0 + 1e-12)) {
                decay.passed = false;
                decay.witness = std::pair{xs[i], ups[i]};
                break;
            }
        }
        if (decay.passed && !(ups.back() < ups[half])) {
            decay.passed = false;
            decay.witness = std::pair{xs.back(), ups.back()};
        }
    }

    rep.checks = {even, nonneg, mono, ctrl1, ctrl2, decay};
    return rep;
}

}  // namespace airy
