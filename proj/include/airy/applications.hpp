#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "airy/potential.hpp"

namespace airy {

enum class CurveKind { SchrodingerRealAxis, SchrodingerImagAxis, DampedWaveLog, DampedWavePow };

std::string_view curve_kind_name(CurveKind k) noexcept;

struct CurveSample {
    double parameter = 0.0;
    double value = 0.0;
};

/// Sampled pseudospectral level curve. Every curve is the leading-order
/// formula only; the (1 + o(1)) factor is not modelled.
struct LevelCurve {
    CurveKind kind = CurveKind::SchrodingerRealAxis;
    double epsilon = 0.0;
    std::vector<CurveSample> samples;
    /// Davies form alongside the generic real-axis curve when V = x^2.
    std::vector<double> specialization;
    bool leading_order = true;
    bool conjectured = false;
    std::string note;
};

/// Parameter interval; samples are spaced geometrically.
struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

/// Positive root of t * V(t) = 2 sqrt(a) for V(t) = t^vp.
double t_a_solve(double vp, double a);

/// b(a) = ((p+1)/2p)^{p/(p+1)} V(t_a) log(V(t_a)/eps)^{p/(p+1)} for V = t^p.
LevelCurve schrodinger_real_axis_curve(double vp, double epsilon, Range a_range, int n);

/// Davies operator form b(a) = (3/2)^{2/3} a^{1/3} log(a^{1/3}/eps)^{2/3}.
double davies_real_axis_value(double a, double epsilon);

/// a(b) = (3/4)^{2/3} V'(x_b)^{2/3} log(V'(x_b)^{2/3}/eps)^{2/3}, V(x_b) = b.
LevelCurve schrodinger_imag_axis_curve(const Potential& v, double epsilon, Range b_range, int n);

enum class DampingKind { Log, Pow2n };

/// Damped-wave level curves c(b): Log(p) gives p log log(2b/eps); Pow2n(n)
/// gives the conjectured ((2n+1)/4n)^{2n/(2n+1)} log(2b/eps)^{2n/(2n+1)}.
LevelCurve damped_wave_curve(DampingKind kind, double parameter, double epsilon, Range b_range, int n);

/// log of the leading-order damped-wave resolvent: closed_form_norm(a, c) - log(2|b|).
double quadratic_family_norm(const Potential& damping, double c, double b);

struct WeylFit {
    double p = 0.0;
    std::vector<double> eigenvalues;  // mu_1 .. mu_kmax
    double fitted_slope = 0.0;
    double expected_slope = 0.0;      // 2p / (p + 1)
    double L = 0.0;                   // half-width actually used
    int k_first = 1;                  // first index entering the fit
};

/// Lowest eigenvalues of -d^2/dx^2 + |x|^{2p} + 1 on [-L, L] (Dirichlet,
/// grid_n interior points) and the least-squares slope of log mu_k against
/// log k over k in [k_max/4, k_max]. Throws ResolutionError if doubling
/// grid_n moves any fitted eigenvalue by more than 1%.
WeylFit weyl_fit(double p, int grid_n, double L, int k_max);

struct CarlemanCheck {
    double resolvent_exponent = 0.0;  // (p + 1) / p
    double carleman_exponent = 0.0;   // 2 r_p, r_p = (1 + p) / 2p
    double fitted_slope = 0.0;        // d log log ||R|| / d log lambda on [10, 100]
};

CarlemanCheck carleman_exponent_check(double p);

/// Least-squares slope of ys against xs.
double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace airy
