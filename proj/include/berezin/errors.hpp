#pragma once

#include <stdexcept>
#include <string>

namespace berezin {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: inadmissible parameters, dimension mismatch, points outside
/// the open ball, out-of-range indices.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a pole of the Gamma function (or a quantity built from it).
class PoleError : public Error {
public:
    using Error::Error;
};

/// A series whose convergence condition fails (e.g. 2F1 at x = 1 with
/// Re(c - a - b) <= 0).
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// Numerical non-convergence: a quadrature that does not settle under
/// refinement, or an integrand that has not decayed at the truncation point.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A quantity that must be real came out with a significant imaginary part.
class RealnessError : public Error {
public:
    using Error::Error;
};

/// Two independent evaluation routes disagree beyond tolerance.
class RouteMismatchError : public Error {
public:
    using Error::Error;
};

} // namespace berezin
