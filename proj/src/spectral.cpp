#include "airy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "airy/errors.hpp"
#include "airy/numerics.hpp"

namespace airy {

namespace {

constexpr int kMaxDoublings = 1100;

// Smallest X = start * 2^k with pred(X) true.
template <typename Pred>
double double_until(double start, Pred pred) {
    double x = start;
    for (int i = 0; i < kMaxDoublings && std::isfinite(x); ++i, x *= 2.0)
        if (pred(x)) return x;
    throw Error("no bracket found by doubling from " + std::to_string(start));
}

}  // namespace

double lambda_zero(const Potential& pot) {
    if (pot.is_builtin()) return pot(pot.x0());
    double sup = 0.0;
    for (int i = 0; i <= 200; ++i) sup = std::max(sup, pot(pot.x0() * i / 200.0));
    return sup;
}

double turning_point(const Potential& pot, double lambda) {
    const double lam0 = lambda_zero(pot);
    if (!(lambda > lam0)) throw BelowThresholdError(lambda, lam0);
    const double lo = pot.x0();
    const double hi = double_until(2.0 * lo, [&](double x) { return pot(x) >= lambda; });
    return numerics::find_root([&](double x) { return pot(x) - lambda; }, lo, hi);
}

double f_lambda(const Potential& pot, double lambda, double x) { return lambda * x - pot.integral(x); }

SpectralProfile profile(const Potential& pot, double lambda) {
    SpectralProfile prof;
    prof.lambda = lambda;
    prof.x_lambda = turning_point(pot, lambda);
    const double xl = prof.x_lambda;
    prof.f_at_xlambda = f_lambda(pot, lambda, xl);
    prof.wprime_at_xlambda = pot.eval(xl).dw;

    auto f = [&](double x) { return f_lambda(pot, lambda, x); };
    const double hi = double_until(2.0 * xl, [&](double x) { return f(x) < 0.0; });
    prof.x_lambda_0 = numerics::find_root(f, xl, hi);

    const double xnu = std::pow(xl, pot.nu());
    prof.delta_lambda = kWindowDelta / xnu;
    prof.rho = 1.0 / std::sqrt(prof.wprime_at_xlambda);
    prof.upsilon1 = xnu * prof.rho;
    return prof;
}

double laplace_integral(const Potential& pot, double lambda, double M, Side side) {
    const SpectralProfile prof = profile(pot, lambda);
    const double centre = side == Side::Plus ? prof.x_lambda : -prof.x_lambda;
    const double d = prof.delta_lambda;
    auto mf = [&](double u) { return M * f_lambda(pot, lambda, centre + u); };
    const double shift = std::max({mf(-d), mf(0.0), mf(d)});

    numerics::QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-300;
    const auto r = numerics::integrate([&](double u) { return std::exp(mf(u) - shift); }, -d, d, cfg);
    return std::log(r.value) + shift;
}

double laplace_asymptote(const SpectralProfile& prof, double M) {
    return 0.5 * std::log(2.0 * std::numbers::pi / M) - 0.5 * std::log(prof.wprime_at_xlambda) +
           M * prof.f_at_xlambda;
}

}  // namespace airy
