#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace airy {

enum class Family { LogPow, Pow, ExpPow, Custom };

std::string_view family_name(Family f) noexcept;

/// W and its first two derivatives at one point.
struct Derivatives {
    double w = 0.0;
    double dw = 0.0;
    double d2w = 0.0;
};

/// Smooth even weight W of the operator -d/dx + W(x).
///
/// Built-in families:
///   LogPow(p):  W(x) = p log<x>,   <x> = sqrt(1 + x^2)
///   Pow(p):     W(x) = |x|^p
///   ExpPow(p):  W(x) = exp(|x|^p)
/// Values are immutable after construction and evaluation is thread-safe.
class Potential {
public:
    using EvalFn = std::function<Derivatives(double)>;

    static Potential log_pow(double p);
    static Potential pow(double p);
    static Potential exp_pow(double p);

    /// User-supplied even weight. `eval` must return exact W, W', W''.
    /// Its antiderivative is computed by adaptive quadrature.
    static Potential custom(std::string name, EvalFn eval, double x0, double nu);

    [[nodiscard]] Family family() const noexcept { return family_; }
    [[nodiscard]] double exponent() const noexcept { return p_; }
    [[nodiscard]] double x0() const noexcept { return x0_; }
    [[nodiscard]] double nu() const noexcept { return nu_; }
    [[nodiscard]] bool is_builtin() const noexcept { return family_ != Family::Custom; }

    /// "pow:2", "logpow:1.5", ... (round-trips through parse_potential for built-ins).
    [[nodiscard]] std::string spec() const;

    [[nodiscard]] Derivatives eval(double x) const;
    [[nodiscard]] double operator()(double x) const { return eval(x).w; }

    /// Integral of W from 0 to x (an odd function of x).
    [[nodiscard]] double integral(double x) const;

    /// Copy with a different derivative-control exponent.
    [[nodiscard]] Potential with_nu(double nu) const;

private:
    friend Potential make_potential(Family family, double p);
    Potential(Family family, double p, double x0, double nu);

    Family family_;
    double p_;
    double x0_;
    double nu_;
    std::string name_;
    std::shared_ptr<const EvalFn> custom_;
};

/// Built-in potential with the family's derivative-control exponent:
/// LogPow and Pow use nu = -1, ExpPow uses nu = p - 1; x0 = 1 for all.
/// Throws std::invalid_argument when p <= 0 or family is Custom.
Potential make_potential(Family family, double p);

/// Parses "family:exponent" with family in {pow, logpow, exppow}.
/// Throws BadSpecError.
Potential parse_potential(std::string_view spec);

/// Generalized Dawson integral F_p(x) = exp(-x^p) * int_0^x exp(t^p) dt, x >= 0.
double generalized_dawson(double p, double x);

struct Check {
    std::string name;
    bool passed = true;
    std::optional<std::pair<double, double>> witness;  // (x, offending value)
};

/// Outcome of validate_assumptions. The checks are sampled over a finite
/// range and are never a proof of the asymptotic conditions.
struct ValidationReport {
    std::vector<Check> checks;
    std::pair<double, double> sampled_range;

    [[nodiscard]] bool all_passed() const noexcept;
    [[nodiscard]] const Check* find(std::string_view name) const noexcept;
};

/// Samples (x0, x_max] log-uniformly and checks evenness, nonnegativity,
/// monotonicity past x0, both derivative-control ratios and the decay of
/// Upsilon_1(x) = x^nu / sqrt(W'(x)). The upper end is capped where W or its
/// derivatives stop being finite doubles; the cap is reported in
/// `sampled_range`.
ValidationReport validate_assumptions(const Potential& pot, double x_max, int n_samples = 400);

}  // namespace airy
