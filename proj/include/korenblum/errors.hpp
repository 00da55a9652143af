#pragma once

#include <stdexcept>
#include <string>

namespace korenblum {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad decimal string, a outside [0,1), K < 1, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// p(r) = r + a r^{n+1} - a - r^n has no sign change strictly inside (0,1).
class NoInteriorRoot : public Error {
public:
    using Error::Error;
};

/// A pole of f/g or a zero of g (other than the origin) lies in the closed unit disk.
class HypothesisViolated : public Error {
public:
    using Error::Error;
};

/// Sampled |f| exceeded |g| somewhere on the annulus.
class DominationViolated : public Error {
public:
    using Error::Error;
};

/// Doubling the quadrature grid moved the value by more than the allowed amount.
class NonConvergence : public Error {
public:
    using Error::Error;
};

class InvalidBracket : public Error {
public:
    using Error::Error;
};

/// A difference enclosure still straddles zero after escalating the truncation index.
class AmbiguousSign : public Error {
public:
    using Error::Error;
};

class CertificationFailed : public Error {
public:
    using Error::Error;
};

} // namespace korenblum
