#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "airy/potential.hpp"
#include "airy/spectral.hpp"

namespace airy {

/// Largest 2 f_lambda(x_lambda) for which the kernel is discretized.
inline constexpr double kOverflowGuard = 300.0;

/// The grid [-L, L] is cut where f_lambda has dropped this far below its peak.
inline constexpr double kTruncationDepth = 40.0;

/// Nystrom data for the integral operator with kernel
/// k(x, y) = exp(f(y) - f(x)) for x < y and 0 otherwise.
struct KernelDiscretization {
    std::vector<double> nodes;    // uniform, ascending, symmetric about 0
    std::vector<double> weights;  // trapezoid
    std::vector<double> f_values; // f_lambda at the nodes
    Eigen::MatrixXd log_kernel;   // -inf on and below the diagonal
    double lambda = 0.0;
    double L = 0.0;
    double spacing = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
};

/// Four log-domain estimates of the resolvent norm at one lambda.
struct ResolventEstimate {
    double lambda = 0.0;
    double x_lambda = 0.0;
    double f_at_xlambda = 0.0;
    double log_asymptotic = 0.0;
    std::optional<double> log_numeric;
    double log_schur_upper = 0.0;
    double log_witness_lower = 0.0;
    bool guard_tripped = false;
};

struct EstimateOptions {
    int points_per_rho = 20;
    int schur_grid_n = 2000;
    std::uint64_t seed = 0;
    bool numeric = true;
};

/// log[ sqrt(pi) W'(x_lambda)^(-1/2) exp(2 f_lambda(x_lambda)) ].
double asymptotic_norm(const SpectralProfile& prof);

/// Family-specific closed form of the leading-order resolvent norm (log).
/// Throws Error for custom potentials.
double closed_form_norm(const Potential& pot, double lambda);

/// Uniform trapezoid discretization of the resolvent kernel with spacing at
/// most rho / points_per_rho. For lambda <= 0 (no turning point) the spacing
/// is min(1, 1/|lambda|) / points_per_rho and L is where f_lambda reaches -40.
/// Throws OverflowGuardError when 2 f_lambda(x_lambda) > kOverflowGuard.
KernelDiscretization discretize_kernel(const Potential& pot, double lambda, int points_per_rho = 20);

/// M_ij = sqrt(w_i) exp(log_kernel_ij - log_scale) sqrt(w_j).
Eigen::MatrixXd nystrom_matrix(const KernelDiscretization& disc, double log_scale);

/// Largest finite entry of the log kernel.
double log_kernel_peak(const KernelDiscretization& disc);

/// log of the largest singular value by power iteration on M^H M, started
/// from a seeded random vector. Relative convergence 1e-10 on the Rayleigh
/// quotient, at most 10^4 iterations (ConvergenceError otherwise).
double log_largest_singular_value(const Eigen::MatrixXd& m, std::uint64_t seed = 0);
double log_largest_singular_value(const Eigen::MatrixXcd& m, std::uint64_t seed = 0);

/// log of the discretized operator norm.
double numeric_norm(const KernelDiscretization& disc, std::uint64_t seed = 0);

/// log of the weighted Schur-test constant sqrt(alpha * beta) = alpha.
double schur_upper_bound(const Potential& pot, double lambda, int grid_n = 2000);

/// log ||v_lambda||^2 for the witness v_lambda = exp(f_lambda) on the right window.
double witness_lower_bound(const Potential& pot, double lambda);

/// Discrete relative residual || (-D + W - lambda) T v - v || / ||v|| with D the
/// centred first difference, on a grid of spacing rho / points_per_rho.
/// `test_fn` must vanish outside [-L + 1, L - 1].
double resolvent_identity_check(const Potential& pot, double lambda,
                                const std::function<double(double)>& test_fn, int points_per_rho = 40);

/// |log sigma_max(modulated) - log sigma_max(unmodulated)| where the kernel is
/// multiplied by exp(i beta (y - x)).
double modulation_invariance_check(const KernelDiscretization& disc, double beta, std::uint64_t seed = 0);

ResolventEstimate estimate_resolvent(const Potential& pot, double lambda, const EstimateOptions& opts = {});

}  // namespace airy
