#include "airy/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "airy/errors.hpp"
#include "airy/numerics.hpp"

namespace airy {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPowerRelTol = 1e-10;
constexpr int kPowerMaxIter = 10000;

double root_by_doubling(const std::function<double(double)>& g, double lo) {
    double hi = 2.0 * std::max(lo, 1.0);
    for (int i = 0; i < 1100 && g(hi) > 0.0; ++i) hi *= 2.0;
    return numerics::find_root(g, lo, hi);
}

// Radius where f_lambda has dropped kTruncationDepth below its peak on x > 0.
double truncation_radius(const Potential& pot, double lambda, double x_peak, double f_peak) {
    return root_by_doubling(
        [&](double x) { return f_lambda(pot, lambda, x) - (f_peak - kTruncationDepth); }, x_peak);
}

template <typename Matrix>
double power_iteration(const Matrix& m, std::uint64_t seed) {
    using Vector = Eigen::Matrix<typename Matrix::Scalar, Eigen::Dynamic, 1>;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    Vector v(m.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = dist(rng);
    v.normalize();

    double rq = 0.0;
    double prev = 0.0;
    for (int it = 1; it <= kPowerMaxIter; ++it) {
        const Vector mv = m * v;
        const Vector z = m.adjoint() * mv;
        prev = rq;
        rq = mv.squaredNorm();
        const double zn = z.norm();
        if (zn == 0.0) return kNegInf;
        v = z / zn;
        if (it > 1 && std::abs(rq - prev) <= kPowerRelTol * rq) return 0.5 * std::log(rq);
    }
    throw ConvergenceError(kPowerMaxIter, rq, prev);
}

}  // namespace

double asymptotic_norm(const SpectralProfile& prof) {
    return 0.5 * std::log(std::numbers::pi) - 0.5 * std::log(prof.wprime_at_xlambda) + 2.0 * prof.f_at_xlambda;
}

double closed_form_norm(const Potential& pot, double lambda) {
    const double p = pot.exponent();
    const double lead = 0.5 * std::log(std::numbers::pi / p);
    switch (pot.family()) {
        case Family::Pow:
            return lead + (1.0 - p) / (2.0 * p) * std::log(lambda) +
                   2.0 * p / (p + 1.0) * std::pow(lambda, (1.0 + p) / p);
        case Family::LogPow:
            return lead + 2.0 * p * std::sqrt(std::expm1(2.0 * lambda / p)) + lambda / (2.0 * p) -
                   p * std::numbers::pi;
        case Family::ExpPow: {
            const double ll = std::log(lambda);
            const double x = std::pow(ll, 1.0 / p);
            return lead - 0.5 * ll + (1.0 - p) / (2.0 * p) * std::log(ll) +
                   2.0 * lambda * (x - generalized_dawson(p, x));
        }
        case Family::Custom: break;
    }
    throw Error("closed_form_norm: no closed form for custom potentials");
}

KernelDiscretization discretize_kernel(const Potential& pot, double lambda, int points_per_rho) {
    if (points_per_rho < 10) throw std::invalid_argument("discretize_kernel: points_per_rho must be >= 10");

    double L = 0.0;
    double h_target = 0.0;
    if (lambda <= 0.0) {
        // f_lambda is decreasing with f(0) = 0; there is no turning point.
        L = truncation_radius(pot, lambda, 0.0, 0.0);
        h_target = std::min(1.0, lambda == 0.0 ? 1.0 : 1.0 / std::abs(lambda)) / points_per_rho;
    } else {
        const SpectralProfile prof = profile(pot, lambda);
        if (2.0 * prof.f_at_xlambda > kOverflowGuard) throw OverflowGuardError(lambda, 2.0 * prof.f_at_xlambda);
        L = truncation_radius(pot, lambda, prof.x_lambda, prof.f_at_xlambda);
        h_target = prof.rho / points_per_rho;
    }

    const auto intervals = static_cast<Eigen::Index>(std::ceil(2.0 * L / h_target));
    const Eigen::Index n = intervals + 1;
    KernelDiscretization disc;
    disc.lambda = lambda;
    disc.L = L;
    disc.spacing = 2.0 * L / static_cast<double>(intervals);
    disc.nodes.resize(n);
    disc.weights.assign(n, disc.spacing);
    disc.weights.front() = disc.weights.back() = 0.5 * disc.spacing;
    disc.f_values.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        disc.nodes[i] = i == intervals ? L : -L + disc.spacing * static_cast<double>(i);
        disc.f_values[i] = f_lambda(pot, lambda, disc.nodes[i]);
    }

    disc.log_kernel.setConstant(n, n, kNegInf);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) disc.log_kernel(i, j) = disc.f_values[j] - disc.f_values[i];
    return disc;
}

double log_kernel_peak(const KernelDiscretization& disc) {
    double peak = kNegInf;
    for (Eigen::Index j = 0; j < disc.log_kernel.cols(); ++j)
        for (Eigen::Index i = 0; i < disc.log_kernel.rows(); ++i)
            if (std::isfinite(disc.log_kernel(i, j))) peak = std::max(peak, disc.log_kernel(i, j));
    return peak;
}

Eigen::MatrixXd nystrom_matrix(const KernelDiscretization& disc, double log_scale) {
    const auto n = static_cast<Eigen::Index>(disc.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double swj = std::sqrt(disc.weights[j]);
        for (Eigen::Index i = 0; i < n; ++i)
            m(i, j) = std::sqrt(disc.weights[i]) * std::exp(disc.log_kernel(i, j) - log_scale) * swj;
    }
    return m;
}

double log_largest_singular_value(const Eigen::MatrixXd& m, std::uint64_t seed) {
    return power_iteration(m, seed);
}

double log_largest_singular_value(const Eigen::MatrixXcd& m, std::uint64_t seed) {
    return power_iteration(m, seed);
}

double numeric_norm(const KernelDiscretization& disc, std::uint64_t seed) {
    const double peak = log_kernel_peak(disc);
    if (!std::isfinite(peak)) return kNegInf;
    return peak + log_largest_singular_value(nystrom_matrix(disc, peak), seed);
}

double schur_upper_bound(const Potential& pot, double lambda, int grid_n) {
    if (grid_n < 2) throw std::invalid_argument("schur_upper_bound: grid_n must be >= 2");
    const SpectralProfile prof = profile(pot, lambda);
    const double xl = prof.x_lambda;
    const double xd = prof.window_hi();
    auto f = [&](double x) { return f_lambda(pot, lambda, x); };
    const double fa = f(xd);
    const double L = std::max(truncation_radius(pot, lambda, xl, prof.f_at_xlambda), xd);

    // log of the weights: log q(y) = f(clamp(y)), log p(x) = -f(clamp(x)).
    auto clamped_f = [&](double x) { return f(std::clamp(x, -xd, xd)); };
    auto log_integrand = [&](double y) { return f(y) + clamped_f(y); };

    std::vector<double> grid(grid_n);
    for (int i = 0; i < grid_n; ++i) grid[i] = -L + 2.0 * L * i / (grid_n - 1);
    for (double b : {prof.window_lo(), xl, xd}) {
        if (b < L) grid.push_back(b);
        if (-b > -L) grid.push_back(-b);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    numerics::QuadratureConfig cfg;
    cfg.rel_tol = 1e-11;
    cfg.abs_tol = 1e-300;

    // Tail beyond L: int_L^inf e^{f} <= e^{f(L)} / (W(L) - lambda) since W is
    // increasing there.
    const double log_gap = std::log(pot(L) - lambda);
    std::vector<double> tail(grid.size());
    tail.back() = f(L) + fa - log_gap;
    for (std::size_t k = grid.size() - 1; k-- > 0;) {
        const double a = grid[k];
        const double b = grid[k + 1];
        const double shift = std::max({log_integrand(a), log_integrand(0.5 * (a + b)), log_integrand(b)});
        const auto seg = numerics::integrate([&](double y) { return std::exp(log_integrand(y) - shift); }, a, b, cfg);
        tail[k] = numerics::log_add_exp(tail[k + 1], std::log(seg.value) + shift);
    }

    double alpha = kNegInf;
    for (std::size_t k = 0; k < grid.size(); ++k) alpha = std::max(alpha, -f(grid[k]) + tail[k] + clamped_f(grid[k]));

    // x > L: ratio <= e^{2 f(xd)} / (W(L) - lambda).
    const double right = 2.0 * fa - log_gap;
    // x < -L: the ratio splits into e^{-2 f(xd)} / (W(L) - lambda) plus a part
    // that decreases away from -L.
    const double left = numerics::log_add_exp(-2.0 * fa - log_gap, -f(grid.front()) + tail.front() + clamped_f(grid.front()));
    return std::max({alpha, right, left});
}

double witness_lower_bound(const Potential& pot, double lambda) {
    return laplace_integral(pot, lambda, 2.0, Side::Plus);
}

double resolvent_identity_check(const Potential& pot, double lambda, const std::function<double(double)>& test_fn,
                                int points_per_rho) {
    const KernelDiscretization disc = discretize_kernel(pot, lambda, points_per_rho);
    const auto n = static_cast<Eigen::Index>(disc.size());
    const double h = disc.spacing;

    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = test_fn(disc.nodes[i]);
        if (std::abs(disc.nodes[i]) > disc.L - 1.0 && v(i) != 0.0)
            throw std::invalid_argument("resolvent_identity_check: test function must vanish outside [-L+1, L-1]");
    }
    double vnorm2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) vnorm2 += disc.weights[i] * v(i) * v(i);
    if (vnorm2 == 0.0) return 0.0;

    // Trapezoid on [x_i, L]: the kernel's right limit on the diagonal is 1.
    Eigen::VectorXd u(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = 0.5 * h * v(i);
        for (Eigen::Index j = i + 1; j < n; ++j) s += disc.weights[j] * std::exp(disc.log_kernel(i, j)) * v(j);
        u(i) = s;
    }

    double rnorm2 = 0.0;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        const double du = (u(i + 1) - u(i - 1)) / (2.0 * h);
        const double r = -du + (pot(disc.nodes[i]) - lambda) * u(i) - v(i);
        rnorm2 += h * r * r;
    }
    return std::sqrt(rnorm2 / vnorm2);
}

double modulation_invariance_check(const KernelDiscretization& disc, double beta, std::uint64_t seed) {
    const double peak = log_kernel_peak(disc);
    const Eigen::MatrixXd base = nystrom_matrix(disc, peak);
    const auto n = base.rows();
    Eigen::MatrixXcd plain = base.cast<std::complex<double>>();
    Eigen::MatrixXcd modulated(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            modulated(i, j) = base(i, j) * std::polar(1.0, beta * (disc.nodes[j] - disc.nodes[i]));
    return std::abs(log_largest_singular_value(modulated, seed) - log_largest_singular_value(plain, seed));
}

ResolventEstimate estimate_resolvent(const Potential& pot, double lambda, const EstimateOptions& opts) {
    const SpectralProfile prof = profile(pot, lambda);
    ResolventEstimate est;
    est.lambda = lambda;
    est.x_lambda = prof.x_lambda;
    est.f_at_xlambda = prof.f_at_xlambda;
    est.log_asymptotic = asymptotic_norm(prof);
    est.log_schur_upper = schur_upper_bound(pot, lambda, opts.schur_grid_n);
    est.log_witness_lower = witness_lower_bound(pot, lambda);
    est.guard_tripped = 2.0 * prof.f_at_xlambda > kOverflowGuard;
    if (opts.numeric && !est.guard_tripped)
        est.log_numeric = numeric_norm(discretize_kernel(pot, lambda, opts.points_per_rho), opts.seed);
    return est;
}

}  // namespace airy
