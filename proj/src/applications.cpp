#include "airy/applications.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "airy/errors.hpp"
#include "airy/numerics.hpp"
#include "airy/resolvent.hpp"
#include "airy/spectral.hpp"

namespace airy {

namespace {

std::vector<double> geometric_samples(Range r, int n) {
    if (!(r.lo > 0.0) || !(r.hi >= r.lo)) throw std::invalid_argument("range must satisfy 0 < lo <= hi");
    if (n < 1) throw std::invalid_argument("need at least one sample");
    if (n == 1) return {r.lo};
    std::vector<double> xs(n);
    const double ratio = std::log(r.hi / r.lo);
    for (int i = 0; i < n; ++i) xs[i] = i == n - 1 ? r.hi : r.lo * std::exp(ratio * i / (n - 1));
    return xs;
}

void require_epsilon(double eps) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
}

double positive_log(double arg, const char* what) {
    const double l = std::log(arg);
    if (!(l > 0.0)) throw std::invalid_argument(std::string(what) + ": logarithm is not positive over the range");
    return l;
}

}  // namespace

std::string_view curve_kind_name(CurveKind k) noexcept {
    switch (k) {
        case CurveKind::SchrodingerRealAxis: return "schrodinger-real";
        case CurveKind::SchrodingerImagAxis: return "schrodinger-imag";
        case CurveKind::DampedWaveLog: return "damped-log";
        case CurveKind::DampedWavePow: return "damped-pow";
    }
    return "unknown";
}

double t_a_solve(double vp, double a) {
    if (!(vp > 0.0) || !(a > 0.0)) throw std::invalid_argument("t_a_solve: need vp > 0 and a > 0");
    return std::pow(2.0 * std::sqrt(a), 1.0 / (vp + 1.0));
}

LevelCurve schrodinger_real_axis_curve(double vp, double epsilon, Range a_range, int n) {
    require_epsilon(epsilon);
    LevelCurve curve;
    curve.kind = CurveKind::SchrodingerRealAxis;
    curve.epsilon = epsilon;
    const double e = vp / (vp + 1.0);
    const double pre = std::pow((vp + 1.0) / (2.0 * vp), e);
    for (double a : geometric_samples(a_range, n)) {
        const double v = std::pow(t_a_solve(vp, a), vp);
        curve.samples.push_back({a, pre * v * std::pow(positive_log(v / epsilon, "real-axis curve"), e)});
        if (vp == 2.0) curve.specialization.push_back(davies_real_axis_value(a, epsilon));
    }
    return curve;
}

double davies_real_axis_value(double a, double epsilon) {
    const double c = std::cbrt(a);
    return std::pow(1.5, 2.0 / 3.0) * c * std::pow(positive_log(c / epsilon, "Davies curve"), 2.0 / 3.0);
}

LevelCurve schrodinger_imag_axis_curve(const Potential& v, double epsilon, Range b_range, int n) {
    require_epsilon(epsilon);
    if (!v.is_builtin()) throw std::invalid_argument("imaginary-axis curve needs a built-in potential");
    LevelCurve curve;
    curve.kind = CurveKind::SchrodingerImagAxis;
    curve.epsilon = epsilon;
    const double pre = std::pow(0.75, 2.0 / 3.0);
    for (double b : geometric_samples(b_range, n)) {
        const double xb = turning_point(v, b);
        const double s = std::pow(v.eval(xb).dw, 2.0 / 3.0);
        curve.samples.push_back({b, pre * s * std::pow(positive_log(s / epsilon, "imaginary-axis curve"), 2.0 / 3.0)});
    }
    return curve;
}

LevelCurve damped_wave_curve(DampingKind kind, double parameter, double epsilon, Range b_range, int n) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(parameter > 0.0)) throw std::invalid_argument("damping parameter must be positive");
    LevelCurve curve;
    curve.kind = kind == DampingKind::Log ? CurveKind::DampedWaveLog : CurveKind::DampedWavePow;
    curve.epsilon = epsilon;
    if (kind == DampingKind::Log) {
        curve.note = "admissible for 0 < p < 1/2";
        for (double b : geometric_samples(b_range, n)) {
            const double inner = positive_log(2.0 * b / epsilon, "damped-wave curve");
            curve.samples.push_back({b, parameter * positive_log(inner, "damped-wave curve")});
        }
    } else {
        if (parameter != std::floor(parameter)) throw std::invalid_argument("Pow2n damping needs an integer n");
        curve.conjectured = true;
        const double two_n = 2.0 * parameter;
        const double e = two_n / (two_n + 1.0);
        const double pre = std::pow((two_n + 1.0) / (2.0 * two_n), e);
        for (double b : geometric_samples(b_range, n))
            curve.samples.push_back({b, pre * std::pow(positive_log(2.0 * b / epsilon, "damped-wave curve"), e)});
    }
    return curve;
}

double quadratic_family_norm(const Potential& damping, double c, double b) {
    if (b == 0.0) throw std::invalid_argument("quadratic_family_norm: b must be nonzero");
    return closed_form_norm(damping, c) - std::log(2.0 * std::abs(b));
}

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

std::vector<double> oscillator_eigs(double p, int grid_n, double L, int k) {
    const double h = 2.0 * L / (grid_n + 1);
    const double inv_h2 = 1.0 / (h * h);
    std::vector<double> diag(grid_n);
    std::vector<double> off(grid_n - 1, -inv_h2);
    for (int i = 0; i < grid_n; ++i) {
        const double x = -L + (i + 1) * h;
        diag[i] = 2.0 * inv_h2 + std::pow(std::abs(x), 2.0 * p) + 1.0;
    }
    return numerics::tridiag_eigs(diag, off, static_cast<std::size_t>(k));
}

}  // namespace

WeylFit weyl_fit(double p, int grid_n, double L, int k_max) {
    if (!(p > 0.0)) throw std::invalid_argument("weyl_fit: p must be positive");
    if (grid_n < 2000) throw std::invalid_argument("weyl_fit: grid_n must be >= 2000");
    if (k_max < 4 || k_max > grid_n) throw std::invalid_argument("weyl_fit: need 4 <= k_max <= grid_n");
    if (!(L > 0.0)) throw std::invalid_argument("weyl_fit: L must be positive");

    WeylFit fit;
    fit.p = p;
    fit.expected_slope = 2.0 * p / (p + 1.0);
    fit.eigenvalues = oscillator_eigs(p, grid_n, L, k_max);

    // One refinement pass: keep the top eigenfunction well inside the box.
    const double needed = 2.0 * std::pow(fit.eigenvalues.back(), 1.0 / (2.0 * p));
    if (L < needed) {
        L = needed;
        fit.eigenvalues = oscillator_eigs(p, grid_n, L, k_max);
    }
    fit.L = L;
    fit.k_first = std::max(1, k_max / 4);

    const std::vector<double> fine = oscillator_eigs(p, 2 * grid_n, L, k_max);
    for (int k = fit.k_first; k <= k_max; ++k) {
        const double shift = std::abs(fine[k - 1] - fit.eigenvalues[k - 1]) / fit.eigenvalues[k - 1];
        if (shift > 0.01)
            throw ResolutionError("weyl_fit: eigenvalue " + std::to_string(k) + " moves by " +
                                  std::to_string(100.0 * shift) + "% under grid doubling");
    }

    std::vector<double> lk, lmu;
    for (int k = fit.k_first; k <= k_max; ++k) {
        lk.push_back(std::log(static_cast<double>(k)));
        lmu.push_back(std::log(fit.eigenvalues[k - 1]));
    }
    fit.fitted_slope = least_squares_slope(lk, lmu);
    return fit;
}

CarlemanCheck carleman_exponent_check(double p) {
    if (!(p > 0.0)) throw std::invalid_argument("carleman_exponent_check: p must be positive");
    const double r_p = (1.0 + p) / (2.0 * p);
    CarlemanCheck out;
    out.resolvent_exponent = (p + 1.0) / p;
    out.carleman_exponent = 2.0 * r_p;

    const Potential pot = make_potential(Family::Pow, p);
    constexpr int kSamples = 50;
    std::vector<double> ll, lln;
    for (int i = 0; i < kSamples; ++i) {
        const double lambda = 10.0 * std::pow(10.0, static_cast<double>(i) / (kSamples - 1));
        ll.push_back(std::log(lambda));
        lln.push_back(std::log(closed_form_norm(pot, lambda)));
    }
    out.fitted_slope = least_squares_slope(ll, lln);
    return out;
}

}  // namespace airy
