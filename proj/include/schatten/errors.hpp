#pragma once

#include <stdexcept>
#include <string>

namespace schatten {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes or family sizes do not line up.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Input outside the mathematical domain of an operation (non-Hermitian, non-PSD, p out of range).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Jacobi sweeps exhausted before the off-diagonal mass fell below threshold.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double off_diagonal)
        : Error(what), off_diagonal_(off_diagonal) {}

    double off_diagonal() const noexcept { return off_diagonal_; }

private:
    double off_diagonal_;
};

/// A Gram matrix produced an eigenvalue too negative to be roundoff.
class NumericalConsistencyError : public Error {
public:
    using Error::Error;
};

/// A claim's hypothesis (e.g. equal family sums) is not met by the input.
class PreconditionError : public Error {
public:
    PreconditionError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Malformed spec, plan or parameter set.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Least-squares design matrix is singular or too ill-conditioned to trust.
class RankDeficiencyError : public Error {
public:
    using Error::Error;
};

} // namespace schatten
