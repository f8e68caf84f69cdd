#include "airy/errors.hpp"

#include <cstdio>

namespace airy {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

BracketError::BracketError(double lo, double hi)
    : Error("invalid bracket: f(a)=" + fmt_double(lo) + " and f(b)=" + fmt_double(hi) +
            " have the same sign"),
      f_lo(lo),
      f_hi(hi) {}

BelowThresholdError::BelowThresholdError(double lam, double lam0)
    : Error("lambda=" + fmt_double(lam) + " is below λ₀ for this family (lambda0=" + fmt_double(lam0) +
            ")"),
      lambda(lam),
      lambda_zero(lam0) {}

OverflowGuardError::OverflowGuardError(double lam, double tf)
    : Error("overflow guard: 2*f(x_lambda)=" + fmt_double(tf) + " exceeds 300 at lambda=" +
            fmt_double(lam) + "; use the bound-only estimates (asymptotic, Schur, witness)"),
      lambda(lam),
      two_f(tf) {}

ConvergenceError::ConvergenceError(int iters, double last_q, double prev_q)
    : Error("power iteration did not converge after " + std::to_string(iters) +
            " iterations; last Rayleigh quotients " + fmt_double(prev_q) + ", " + fmt_double(last_q)),
      iterations(iters),
      last(last_q),
      previous(prev_q) {}

}  // namespace airy
