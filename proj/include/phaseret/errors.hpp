#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace phaseret {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// exp() of a primary factor or product would leave the double range.
class RangeError : public Error {
public:
    RangeError(const std::string& what, double exponent)
        : Error(what + " (exponent magnitude " + std::to_string(exponent) + ")"), exponent_(exponent) {}
    double exponent() const noexcept { return exponent_; }

private:
    double exponent_;
};

/// Evaluation requested at (or within the hit threshold of) a root / pole of log.
class SingularInputError : public Error {
public:
    using Error::Error;
};

/// Omitted orbit roots are not all outside max(2|z|, R_min).
class InsufficientTruncationError : public Error {
public:
    using Error::Error;
};

/// A multiset fails a required symmetry; carries a witness point.
class SymmetryViolationError : public Error {
public:
    SymmetryViolationError(const std::string& what, std::complex<double> witness)
        : Error(what + " (witness " + std::to_string(witness.real()) + (witness.imag() < 0 ? "" : "+") +
                std::to_string(witness.imag()) + "i)"),
          witness_(witness) {}
    std::complex<double> witness() const noexcept { return witness_; }

private:
    std::complex<double> witness_;
};

/// Partial sums of a series that should converge failed the Cauchy test.
class DivergenceAlarm : public Error {
public:
    using Error::Error;
};

/// Generator inputs violate a coefficient constraint of the requested pair kind.
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// Numerical transform cannot resolve the request (window too small, |z| too large, ...).
class ResolutionError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace phaseret
