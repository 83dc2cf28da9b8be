#pragma once

#include <stdexcept>
#include <string>

namespace jcqt {

/// Base of every error raised by the library. The CLI maps the three
/// subclasses onto exit codes 1, 2 and 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied input was violated.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed (non-convergence, degenerate state, NaN).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Jacobi sweeps exhausted before the off-diagonal fell below tolerance.
class ConvergenceError : public NumericError {
public:
    ConvergenceError(const std::string& what, double residual)
        : NumericError(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// The spectral QFI engine needs distinct eigenvalues.
class DegenerateSpectrumError : public NumericError {
public:
    DegenerateSpectrumError(const std::string& what, double gap)
        : NumericError(what), gap_(gap) {}

    double gap() const noexcept { return gap_; }

private:
    double gap_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace jcqt
