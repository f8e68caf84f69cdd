#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "airy/potential.hpp"

namespace airy {

/// Uniform grid start + i * spacing, i = 0 .. size - 1.
struct UniformGrid {
    double start = 0.0;
    double spacing = 1.0;
    std::size_t size = 0;

    [[nodiscard]] double node(std::size_t i) const noexcept { return start + spacing * static_cast<double>(i); }
    [[nodiscard]] std::vector<double> nodes() const;
};

struct SemigroupEstimate {
    double t = 0.0;
    double log_norm = 0.0;
    double maximizer = 0.0;
    double t0 = 0.0;
};

/// Exponent of the semigroup weight: g_t(x) = -int_x^{x+t} W.
double semigroup_exponent(const Potential& pot, double t, double x);

/// Threshold of validity of the norm formula: 0 for the built-in families;
/// for custom weights 2 x1 with W(x1) above sup W on [-x0, x0].
double semigroup_t0(const Potential& pot);

/// (S_t f)(x) = exp(g_t(x)) f(x + t) on the grid; f is taken as zero past the
/// right end. Throws GridAlignmentError unless t is a multiple of the spacing.
std::vector<double> apply_semigroup(const Potential& pot, double t, const UniformGrid& grid,
                                    std::span<const double> f);

/// log ||S_t|| = -2 int_0^{t/2} W.
double semigroup_norm(const Potential& pot, double t);

/// Grid argmax of g_t over [-t - 5 x0, 5 x0] with grid_n points.
double norm_maximizer(const Potential& pot, double t, int grid_n = 4001);

SemigroupEstimate estimate_semigroup(const Potential& pot, double t, int grid_n = 4001);

}  // namespace airy
