#pragma once

#include "airy/potential.hpp"

namespace airy {

/// Half-width factor of the windows around +-x_lambda; the window half-width
/// is kWindowDelta * x_lambda^(-nu).
inline constexpr double kWindowDelta = 0.1;

/// Every lambda-dependent scalar needed by the resolvent estimates.
struct SpectralProfile {
    double lambda = 0.0;
    double x_lambda = 0.0;           // W(x_lambda) = lambda, x_lambda > 0
    double f_at_xlambda = 0.0;       // f_lambda(x_lambda), the peak of the action
    double wprime_at_xlambda = 0.0;  // W'(x_lambda)
    double x_lambda_0 = 0.0;         // positive zero of f_lambda, > x_lambda
    double delta_lambda = 0.0;       // window half-width
    double upsilon1 = 0.0;           // x_lambda^nu / sqrt(W'(x_lambda))
    double rho = 0.0;                // Laplace width 1 / sqrt(W'(x_lambda))

    [[nodiscard]] double window_lo() const noexcept { return x_lambda - delta_lambda; }
    [[nodiscard]] double window_hi() const noexcept { return x_lambda + delta_lambda; }
};

enum class Side { Plus, Minus };

/// Sup of W on [0, x0]; the turning point exists for every lambda above it.
double lambda_zero(const Potential& pot);

/// Positive root of W(x) = lambda. Throws BelowThresholdError when
/// lambda <= lambda_zero(pot).
double turning_point(const Potential& pot, double lambda);

/// Action integral f_lambda(x) = int_0^x (lambda - W(t)) dt.
double f_lambda(const Potential& pot, double lambda, double x);

SpectralProfile profile(const Potential& pot, double lambda);

/// log of int over the window around +-x_lambda of exp(M f_lambda(x)) dx.
/// The integrand is shifted by its largest endpoint value so nothing overflows.
double laplace_integral(const Potential& pot, double lambda, double M, Side side);

/// Leading-order Laplace value log[sqrt(2 pi / M) W'(x_lambda)^(-1/2) e^{M f(x_lambda)}].
double laplace_asymptote(const SpectralProfile& prof, double M);

}  // namespace airy
