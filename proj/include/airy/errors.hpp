#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace airy {

/// Base class for every error raised by the library. `code()` is a short,
/// stable identifier used by the CLI's machine-parsable error line.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual std::string_view code() const noexcept { return "error"; }
};

class BadSpecError : public Error {
public:
    using Error::Error;
    [[nodiscard]] std::string_view code() const noexcept override { return "bad_spec"; }
};

class BracketError : public Error {
public:
    BracketError(double f_lo, double f_hi);
    [[nodiscard]] std::string_view code() const noexcept override { return "invalid_bracket"; }

    double f_lo;
    double f_hi;
};

// Spectral parameter is too small for the turning point to exist.
class BelowThresholdError : public Error {
public:
    BelowThresholdError(double lambda, double lambda_zero);
    [[nodiscard]] std::string_view code() const noexcept override { return "below_lambda0"; }

    double lambda;
    double lambda_zero;
};

class OverflowGuardError : public Error {
public:
    OverflowGuardError(double lambda, double two_f);
    [[nodiscard]] std::string_view code() const noexcept override { return "overflow_guard"; }

    double lambda;
    double two_f;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(int iterations, double last, double previous);
    [[nodiscard]] std::string_view code() const noexcept override { return "no_convergence"; }

    int iterations;
    double last;
    double previous;
};

class GridAlignmentError : public Error {
public:
    using Error::Error;
    [[nodiscard]] std::string_view code() const noexcept override { return "grid_alignment"; }
};

class ResolutionError : public Error {
public:
    using Error::Error;
    [[nodiscard]] std::string_view code() const noexcept override { return "resolution"; }
};

/// Output could not be written.
class IoError : public Error {
public:
    using Error::Error;
    [[nodiscard]] std::string_view code() const noexcept override { return "io_error"; }
};

}  // namespace airy
