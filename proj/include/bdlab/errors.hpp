#pragma once

#include <stdexcept>
#include <string>

namespace bdlab {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mathematical-domain violation (pole, argument out of range, division by zero).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The requested computation cannot reach its target at the supplied precision.
/// Carries the precision (decimal digits) that would be required.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& what, long required_digits)
        : Error(what), required_digits(required_digits) {}
    long required_digits;
};

/// An iterative scheme hit its term or iteration ceiling. Carries the best
/// estimate so the caller can decide whether it is usable.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::string best_estimate, long steps)
        : Error(what), best_estimate(std::move(best_estimate)), steps(steps) {}
    std::string best_estimate;
    long steps;
};

/// The eta-series prefactor 1 - 2^{1-s} vanishes too close to s; the caller
/// must use a different representation or height.
class RepresentationError : public Error {
public:
    using Error::Error;
};

/// Newton refinement converged to a different zero than the seed suggested.
class WrongZeroError : public Error {
public:
    using Error::Error;
};

/// A refined zero's real part deviates from 1/2 beyond tolerance. Never
/// swallowed: carries all data needed to report the candidate.
class OffCriticalLineError : public Error {
public:
    OffCriticalLineError(const std::string& what, std::string gamma, std::string deviation)
        : Error(what), gamma(std::move(gamma)), deviation(std::move(deviation)) {}
    std::string gamma;
    std::string deviation;
};

/// Parse failure in an input stream or file; line is 1-based.
class FormatError : public Error {
public:
    FormatError(const std::string& what, long line) : Error(what), line(line) {}
    long line;
};

/// Persistent-file version not supported by this build.
class VersionError : public Error {
public:
    using Error::Error;
};

/// Checkpoint does not belong to the configured experiment.
class FingerprintMismatchError : public Error {
public:
    using Error::Error;
};

}  // namespace bdlab
