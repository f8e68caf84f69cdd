#include "airy/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "airy/errors.hpp"

namespace airy::numerics {

namespace {

constexpr int kInitialPanels = 16;

struct SimpsonState {
    const ScalarFn& f;
    bool converged = true;
    double error = 0.0;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(SimpsonState& st, double a, double b, double fa, double fm, double fb, double whole,
             double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;

    if (std::abs(delta) <= 15.0 * eps) {
        st.error += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    if (depth <= 0 || lm <= a || rm >= b) {
        st.converged = false;
        st.error += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return adapt(st, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adapt(st, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace

Integral integrate(const ScalarFn& f, double a, double b, const QuadratureConfig& cfg) {
    if (a == b) return {};
    if (a > b) {
        Integral r = integrate(f, b, a, cfg);
        r.value = -r.value;
        return r;
    }

    const double h = (b - a) / kInitialPanels;
    double xs[2 * kInitialPanels + 1];
    double fs[2 * kInitialPanels + 1];
    for (int i = 0; i <= 2 * kInitialPanels; ++i) {
        xs[i] = (i == 2 * kInitialPanels) ? b : a + 0.5 * h * i;
        fs[i] = f(xs[i]);
    }

    double coarse = 0.0;
    double panel[kInitialPanels];
    for (int p = 0; p < kInitialPanels; ++p) {
        panel[p] = simpson(xs[2 * p], xs[2 * p + 2], fs[2 * p], fs[2 * p + 1], fs[2 * p + 2]);
        coarse += panel[p];
    }

    const double eps = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(coarse)) / kInitialPanels;
    SimpsonState st{f};
    double total = 0.0;
    for (int p = 0; p < kInitialPanels; ++p) {
        total += adapt(st, xs[2 * p], xs[2 * p + 2], fs[2 * p], fs[2 * p + 1], fs[2 * p + 2],
                       panel[p], eps, cfg.max_depth);
    }
    return {total, st.error, st.converged};
}

double find_root(const ScalarFn& f, double lo, double hi, const RootConfig& cfg) {
    if (lo > hi) std::swap(lo, hi);
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) throw BracketError(flo, fhi);

    const double lo0 = lo;
    const double hi0 = hi;
    for (int it = 0; it < cfg.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
        if (hi - lo <= cfg.rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
    }

    // Secant polish from the final bracket; keep whichever iterate has the
    // smallest residual and never leave the original bracket.
    double x0 = lo, f0 = flo;
    double x1 = hi, f1 = fhi;
    double best = std::abs(flo) <= std::abs(fhi) ? lo : hi;
    double fbest = std::min(std::abs(flo), std::abs(fhi));
    for (int step = 0; step < 5 && f1 != f0; ++step) {
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!std::isfinite(x2) || x2 < lo0 || x2 > hi0) break;
        const double f2 = f(x2);
        if (std::abs(f2) < fbest) {
            best = x2;
            fbest = std::abs(f2);
        }
        if (f2 == 0.0) break;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    return best;
}

std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double shift) {
    constexpr double pivmin = std::numeric_limits<double>::min();
    std::size_t count = 0;
    double q = 0.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        q = i == 0 ? diag[0] - shift : diag[i] - shift - offdiag[i - 1] * offdiag[i - 1] / q;
        // A zero pivot is perturbed to a tiny negative value before counting.
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> tridiag_eigs(std::span<const double> diag, std::span<const double> offdiag,
                                 std::size_t k) {
    const std::size_t n = diag.size();
    if (k > n) throw Error("tridiag_eigs: requested " + std::to_string(k) + " eigenvalues of a " +
                           std::to_string(n) + "x" + std::to_string(n) + " matrix");
    if (n > 0 && offdiag.size() + 1 != n) throw Error("tridiag_eigs: off-diagonal length must be n-1");
    if (k == 0) return {};

    // Gershgorin interval and infinity norm.
    double glo = std::numeric_limits<double>::infinity();
    double ghi = -glo;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(offdiag[i]);
        glo = std::min(glo, diag[i] - r);
        ghi = std::max(ghi, diag[i] + r);
        norm = std::max(norm, std::abs(diag[i]) + r);
    }
    if (norm == 0.0) return std::vector<double>(k, 0.0);

    const double tol = 4.0 * std::numeric_limits<double>::epsilon() * norm;
    glo -= tol;
    ghi += tol;

    std::vector<double> eigs(k);
    double floor = glo;
    for (std::size_t j = 0; j < k; ++j) {
        double lo = floor;
        double hi = ghi;
        for (int it = 0; it < 200 && hi - lo > tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sturm_count(diag, offdiag, mid) > j)
                hi = mid;
            else
                lo = mid;
        }
        eigs[j] = 0.5 * (lo + hi);
        floor = lo;
    }
    return eigs;
}

double log_add_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

double log_sum_exp(std::span<const double> values) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values) m = std::max(m, v);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double v : values) s += std::exp(v - m);
    return m + std::log(s);
}

}  // namespace airy::numerics
