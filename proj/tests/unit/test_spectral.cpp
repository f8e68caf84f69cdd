#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "airy/errors.hpp"
#include "airy/spectral.hpp"

using namespace airy;

TEST_CASE("profile: pow:2 at lambda = 9") {
    const SpectralProfile p = profile(Potential::pow(2), 9.0);
    CHECK(p.x_lambda == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(p.f_at_xlambda == doctest::Approx(18.0).epsilon(1e-10));
    CHECK(p.wprime_at_xlambda == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(p.x_lambda_0 == doctest::Approx(std::sqrt(27.0)).epsilon(1e-10));
    CHECK(p.delta_lambda == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(p.rho == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-12));
    CHECK(p.upsilon1 == doctest::Approx(1.0 / (3.0 * std::sqrt(6.0))).epsilon(1e-12));
}

TEST_CASE("profile: logpow:1 and exppow:1 against quadrature oracles") {
    const SpectralProfile a = profile(Potential::log_pow(1), 2.0);
    CHECK(a.x_lambda == doctest::Approx(7.3210757428908109).epsilon(1e-11));
    CHECK(a.f_at_xlambda == doctest::Approx(5.8860312672809018).epsilon(1e-10));
    const SpectralProfile b = profile(Potential::exp_pow(1), 10.0);
    CHECK(b.x_lambda == doctest::Approx(std::log(10.0)).epsilon(1e-12));
    CHECK(b.f_at_xlambda == doctest::Approx(14.025850929940457).epsilon(1e-10));
    CHECK(b.delta_lambda == doctest::Approx(0.1).epsilon(1e-12));  // nu = 0
}

TEST_CASE("turning_point threshold") {
    CHECK(lambda_zero(Potential::pow(2)) == 1.0);
    CHECK(lambda_zero(Potential::exp_pow(1)) == doctest::Approx(std::exp(1.0)));
    CHECK_THROWS_AS(turning_point(Potential::pow(2), 1.0), BelowThresholdError);
    CHECK_THROWS_AS(turning_point(Potential::pow(2), 0.5), BelowThresholdError);
    try {
        turning_point(Potential::log_pow(1), 0.1);
    } catch (const BelowThresholdError& e) {
        CHECK(std::string(e.what()).find("below") != std::string::npos);
        CHECK(e.code() == "below_lambda0");
    }
}

TEST_CASE("profile invariants on random lambda (property)") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> lam(1.5, 200.0), ps(0.5, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double p = ps(gen);
        const Potential pots[] = {Potential::pow(p), Potential::log_pow(p), Potential::exp_pow(std::min(p, 2.0))};
        for (const Potential& pot : pots) {
            const double l = lam(gen);
            if (l <= lambda_zero(pot) * 1.01) continue;
            const SpectralProfile pr = profile(pot, l);
            CHECK(pot(pr.x_lambda) == doctest::Approx(l).epsilon(1e-10));
            CHECK(pr.f_at_xlambda > 0.0);
            CHECK(pr.x_lambda_0 > pr.x_lambda);
            CHECK(std::abs(f_lambda(pot, l, pr.x_lambda_0)) < 1e-8 * std::max(1.0, pr.f_at_xlambda));
            // f_lambda peaks at x_lambda
            CHECK(f_lambda(pot, l, pr.x_lambda) >= f_lambda(pot, l, pr.window_lo()));
            CHECK(f_lambda(pot, l, pr.x_lambda) >= f_lambda(pot, l, pr.window_hi()));
            CHECK(f_lambda(pot, l, -pr.x_lambda) == doctest::Approx(-pr.f_at_xlambda));
        }
    }
}

TEST_CASE("laplace_integral: pow:2, M = 2, lambda = 25 against quadrature oracle") {
    const Potential pot = Potential::pow(2);
    CHECK(laplace_integral(pot, 25.0, 2.0, Side::Plus) == doctest::Approx(166.06221035746428).epsilon(1e-12));
    CHECK(laplace_integral(pot, 25.0, 2.0, Side::Minus) == doctest::Approx(-165.52689517126101).epsilon(1e-9));
    const double asym = laplace_asymptote(profile(pot, 25.0), 2.0);
    const double expected = 0.5 * std::log(std::numbers::pi) - 0.5 * std::log(10.0) + 2.0 * (125.0 - 125.0 / 3.0);
    CHECK(asym == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("laplace ratio tends to one as lambda grows") {
    const Potential pot = Potential::pow(2);
    double prev = 1e9;
    for (double l : {4.0, 9.0, 25.0, 100.0, 400.0}) {
        const double gap = std::abs(laplace_integral(pot, l, 2.0, Side::Plus) - laplace_asymptote(profile(pot, l), 2.0));
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("small closed-form fixtures") {
    CHECK(turning_point(Potential::log_pow(1), 1.0) == doctest::Approx(std::sqrt(std::exp(2.0) - 1.0)).epsilon(1e-12));
    CHECK(f_lambda(Potential::pow(1), 2.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    const SpectralProfile p = profile(Potential::pow(2), 4.0);
    CHECK(p.x_lambda == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(p.f_at_xlambda == doctest::Approx(16.0 / 3.0).epsilon(1e-13));
    CHECK(p.wprime_at_xlambda == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(p.x_lambda_0 == doctest::Approx(std::sqrt(12.0)).epsilon(1e-11));
}

TEST_CASE("pow:1 at lambda = 2") {
    const SpectralProfile p = profile(Potential::pow(1), 2.0);
    CHECK(p.x_lambda == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(p.f_at_xlambda == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(p.x_lambda_0 == doctest::Approx(4.0).epsilon(1e-11));
}
