#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <random>

#include "airy/errors.hpp"
#include "airy/resolvent.hpp"

using namespace airy;

TEST_CASE("closed_form_norm matches asymptotic_norm for the built-in families") {
    const double log_sqrt_pi = 0.5 * std::log(std::numbers::pi);
    // pow:2, lambda = 9: x = 3, f = 18, W' = 6.
    CHECK(closed_form_norm(Potential::pow(2), 9.0) ==
          doctest::Approx(log_sqrt_pi - 0.5 * std::log(6.0) + 36.0).epsilon(1e-13));
    CHECK(asymptotic_norm(profile(Potential::pow(2), 9.0)) == doctest::Approx(35.676485208310673).epsilon(1e-12));
    CHECK(asymptotic_norm(profile(Potential::log_pow(1), 2.0)) == doctest::Approx(13.349048839192975).epsilon(1e-10));
    CHECK(asymptotic_norm(profile(Potential::exp_pow(1), 10.0)) == doctest::Approx(27.472774256308591).epsilon(1e-10));
    // Pow and ExpPow forms are exact rewrites of the asymptote.
    for (double l : {2.0, 5.0, 30.0}) {
        for (const Potential& pot : {Potential::pow(1), Potential::pow(3), Potential::exp_pow(1), Potential::exp_pow(2)}) {
            INFO(pot.spec(), " ", l);
            if (l <= lambda_zero(pot)) continue;
            CHECK(closed_form_norm(pot, l) == doctest::Approx(asymptotic_norm(profile(pot, l))).epsilon(1e-9));
        }
    }
}

TEST_CASE("LogPow closed form agrees with the asymptote only as lambda grows") {
    // It replaces atan(x_lambda) by pi/2 and x_lambda by exp(lambda/p).
    const Potential pot = Potential::log_pow(2);
    double prev = 1e9;
    for (double l : {2.0, 5.0, 10.0, 20.0, 40.0}) {
        const double gap = std::abs(closed_form_norm(pot, l) - asymptotic_norm(profile(pot, l)));
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-13 * closed_form_norm(pot, 40.0));
}

TEST_CASE("discretize_kernel layout") {
    const KernelDiscretization d = discretize_kernel(Potential::pow(1), 2.0, 20);
    const SpectralProfile pr = profile(Potential::pow(1), 2.0);
    REQUIRE(d.size() > 10);
    CHECK(d.spacing <= pr.rho / 20 + 1e-15);
    CHECK(d.nodes.front() == doctest::Approx(-d.L));
    CHECK(d.nodes.back() == doctest::Approx(d.L));
    CHECK(d.weights.front() == doctest::Approx(d.spacing / 2));
    CHECK(std::isinf(d.log_kernel(3, 3)));
    CHECK(std::isinf(d.log_kernel(4, 3)));
    CHECK(d.log_kernel(3, 4) == doctest::Approx(d.f_values[4] - d.f_values[3]));
    CHECK_THROWS_AS(discretize_kernel(Potential::pow(1), 2.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(discretize_kernel(Potential::pow(2), 100.0, 20), OverflowGuardError);
}

TEST_CASE("power iteration agrees with a dense SVD") {
    for (double l : {2.0, 3.0}) {
        const KernelDiscretization d = discretize_kernel(Potential::pow(1), l, 20);
        const double peak = log_kernel_peak(d);
        const Eigen::MatrixXd m = nystrom_matrix(d, peak);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        const double oracle = std::log(svd.singularValues()(0)) + peak;
        CHECK(numeric_norm(d, 0) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("numeric norm is seed-independent and deterministic") {
    const KernelDiscretization d = discretize_kernel(Potential::pow(1), 2.0, 20);
    const double a = numeric_norm(d, 0);
    CHECK(numeric_norm(d, 0) == a);
    CHECK(numeric_norm(d, 12345) == doctest::Approx(a).epsilon(1e-9));
}

TEST_CASE("frozen numeric gaps to the asymptote") {
    // pow:1 at lambda = 2, 3, 4 with 20 points per rho.
    const double gaps[] = {6.2e-4, 1.4e-6, 5e-10};
    int i = 0;
    for (double l : {2.0, 3.0, 4.0}) {
        const Potential pot = Potential::pow(1);
        const double gap = numeric_norm(discretize_kernel(pot, l, 20)) - asymptotic_norm(profile(pot, l));
        CHECK(std::abs(gap) == doctest::Approx(gaps[i++]).epsilon(0.1).scale(0.0));
    }
}

TEST_CASE("sandwich witness <= numeric <= schur (property over lambda)") {
    std::mt19937 gen(17);
    std::uniform_real_distribution<double> lam1(1.6, 4.5), lam2(3.0, 12.0);
    for (int i = 0; i < 6; ++i) {
        for (auto [pot, l] : {std::pair{Potential::pow(1), lam1(gen)}, std::pair{Potential::pow(2), lam2(gen)}}) {
            const ResolventEstimate e = estimate_resolvent(pot, l);
            INFO(pot.spec(), " lambda=", l);
            REQUIRE(e.log_numeric.has_value());
            CHECK(e.log_witness_lower <= *e.log_numeric + 1e-6);
            CHECK(*e.log_numeric <= e.log_schur_upper + 1e-6);
        }
    }
}

TEST_CASE("upper and lower gaps shrink with lambda") {
    const Potential pot = Potential::pow(2);
    double up = 1e9, lo = 1e9;
    for (double l : {4.0, 6.25, 9.0, 16.0}) {
        const double a = asymptotic_norm(profile(pot, l));
        const double u = schur_upper_bound(pot, l) - a;
        const double w = a - witness_lower_bound(pot, l);
        CHECK(u > 0.0);
        CHECK(w > 0.0);
        CHECK(u < up);
        CHECK(w < lo);
        up = u;
        lo = w;
    }
}

TEST_CASE("guard skips the numeric norm") {
    const ResolventEstimate e = estimate_resolvent(Potential::pow(2), 100.0);
    CHECK(e.guard_tripped);
    CHECK_FALSE(e.log_numeric.has_value());
    CHECK(std::isfinite(e.log_schur_upper));
}

TEST_CASE("accretive regime: norm at most 1/|lambda|") {
    for (double l : {-1.0, -2.0, -5.0}) {
        const double n = numeric_norm(discretize_kernel(Potential::pow(2), l, 20));
        CHECK(n <= -std::log(-l) + 1e-3);
    }
}

TEST_CASE("modulation leaves the norm unchanged") {
    const KernelDiscretization d = discretize_kernel(Potential::pow(1), 2.0, 20);
    CHECK(modulation_invariance_check(d, 0.0) == 0.0);
    CHECK(modulation_invariance_check(d, 1.0) <= 1e-6);
    CHECK(modulation_invariance_check(d, 10.0) <= 1e-6);
}

TEST_CASE("resolvent identity residual is second order") {
    auto bump = [](double x) { return std::abs(x) <= 4.0 ? std::exp(-x * x) : 0.0; };
    const Potential pot = Potential::pow(1);
    const double r1 = resolvent_identity_check(pot, 3.0, bump, 20);
    const double r2 = resolvent_identity_check(pot, 3.0, bump, 40);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.15));
    CHECK_THROWS_AS(resolvent_identity_check(pot, 3.0, [](double) { return 1.0; }, 20), std::invalid_argument);
}

TEST_CASE("closed_form_norm fixtures") {
    CHECK(closed_form_norm(Potential::pow(1), 2.0) == doctest::Approx(4.0 + 0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
    const double l = 9.0;
    const double expected = 0.5 * std::log(std::numbers::pi / 2.0) - 0.25 * std::log(l) + 4.0 / 3.0 * std::pow(l, 1.5);
    CHECK(closed_form_norm(Potential::pow(2), l) == doctest::Approx(expected).epsilon(1e-14));
    CHECK_THROWS_AS(closed_form_norm(Potential::custom("c", [](double x) { return Derivatives{x * x, 2 * x, 2}; }, 1.0, -1.0), 4.0), Error);
}
