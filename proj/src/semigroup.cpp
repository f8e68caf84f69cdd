#include "airy/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "airy/errors.hpp"
#include "airy/spectral.hpp"

namespace airy {

std::vector<double> UniformGrid::nodes() const {
    std::vector<double> xs(size);
    for (std::size_t i = 0; i < size; ++i) xs[i] = node(i);
    return xs;
}

double semigroup_exponent(const Potential& pot, double t, double x) {
    return -(pot.integral(x + t) - pot.integral(x));
}

double semigroup_t0(const Potential& pot) {
    if (pot.is_builtin()) return 0.0;
    const double sup = lambda_zero(pot);
    double x1 = pot.x0();
    for (int i = 0; i < 1100 && !(pot(x1) > sup); ++i) x1 *= 1.01;
    return 2.0 * x1;
}

std::vector<double> apply_semigroup(const Potential& pot, double t, const UniformGrid& grid,
                                    std::span<const double> f) {
    if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be nonnegative");
    if (f.size() != grid.size) throw std::invalid_argument("apply_semigroup: sample count does not match grid");
    const double steps = t / grid.spacing;
    const double shift = std::round(steps);
    if (std::abs(steps - shift) > 1e-9 * std::max(1.0, steps))
        throw GridAlignmentError("apply_semigroup: t is not a multiple of the grid spacing; regrid so that t/h is an integer");

    const auto s = static_cast<std::size_t>(shift);
    std::vector<double> out(grid.size, 0.0);
    for (std::size_t i = 0; i + s < grid.size; ++i) {
        const double x = grid.node(i);
        out[i] = std::exp(semigroup_exponent(pot, t, x)) * f[i + s];
    }
    return out;
}

double semigroup_norm(const Potential& pot, double t) {
    if (t < 0.0) throw std::invalid_argument("semigroup_norm: t must be nonnegative");
    if (t < semigroup_t0(pot)) throw Error("semigroup_norm: t is below the validity threshold t0");
    return -2.0 * pot.integral(0.5 * t);
}

double norm_maximizer(const Potential& pot, double t, int grid_n) {
    if (grid_n < 1000) throw std::invalid_argument("norm_maximizer: grid_n must be >= 1000");
    const double lo = -t - 5.0 * pot.x0();
    const double hi = 5.0 * pot.x0();
    double best_x = lo;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_n; ++i) {
        const double x = lo + (hi - lo) * i / (grid_n - 1);
        const double g = semigroup_exponent(pot, t, x);
        if (g > best) {
            best = g;
            best_x = x;
        }
    }
    return best_x;
}

SemigroupEstimate estimate_semigroup(const Potential& pot, double t, int grid_n) {
    return {t, semigroup_norm(pot, t), norm_maximizer(pot, t, grid_n), semigroup_t0(pot)};
}

}  // namespace airy
