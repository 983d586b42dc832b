#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfaff {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch, non-square input, or a size guard that was exceeded.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Non-finite entry handed to a matrix constructor.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// eig_normal was given a matrix that is not normal within tolerance.
class NotNormalError : public Error {
public:
    NotNormalError(const std::string& what, double residual) : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A^T A* != A A^dagger within tolerance.
class NotConjugateNormalError : public Error {
public:
    NotConjugateNormalError(const std::string& what, double residual) : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Unpaired complex cluster or odd-multiplicity negative-real cluster in the spectrum of A A*.
class SpectralConsistencyError : public Error {
public:
    using Error::Error;
};

/// A A* has a positive real eigenvalue while A is non-singular, so the
/// generalized Pfaffian is not defined.
class PfaffianUndefinedError : public Error {
public:
    using Error::Error;
};

/// Operation requires a non-singular matrix.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// An internal postcondition (reconstruction, unitarity) failed numerically.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double residual) : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Malformed matrix or spectrum document. `line` is 1-based; `offset` is the
/// byte offset into the input (0 when unknown).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t offset)
        : Error(what), line_(line), offset_(offset) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t line_;
    std::size_t offset_;
};

}  // namespace pfaff
