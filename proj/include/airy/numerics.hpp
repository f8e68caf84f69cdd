#pragma once

#include <functional>
#include <span>
#include <vector>

namespace airy::numerics {

using ScalarFn = std::function<double(double)>;

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_depth = 50;
};

struct RootConfig {
    double rel_tol = 1e-12;
    int max_iter = 200;
};

/// Result of an adaptive integration. `converged` is false when some panel
/// hit `max_depth` before meeting its tolerance; `value` is then the best
/// estimate available.
struct Integral {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

/// Adaptive composite Simpson quadrature of `f` over [a, b].
///
/// The interval is first cut into a fixed number of panels, each of which is
/// bisected recursively until the Richardson error estimate |S2 - S1| / 15
/// falls below its share of max(abs_tol, rel_tol * |I|).
Integral integrate(const ScalarFn& f, double a, double b, const QuadratureConfig& cfg = {});

/// Root of `f` inside [lo, hi] by bisection followed by at most five
/// secant-Newton polishing steps. Throws BracketError if f(lo) and f(hi) have
/// the same strict sign.
double find_root(const ScalarFn& f, double lo, double hi, const RootConfig& cfg = {});

/// The `k` smallest eigenvalues, ascending, of the symmetric tridiagonal
/// matrix with the given diagonal and off-diagonal, by Sturm-count bisection.
std::vector<double> tridiag_eigs(std::span<const double> diag, std::span<const double> offdiag,
                                 std::size_t k);

/// Number of eigenvalues strictly below `shift`.
std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double shift);

/// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
double log_add_exp(double a, double b);

/// log(sum exp(v_i)); returns -inf for an empty span.
double log_sum_exp(std::span<const double> values);

}  // namespace airy::numerics
