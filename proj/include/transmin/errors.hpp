#pragma once

#include <stdexcept>
#include <string>

namespace transmin {

// Base for every error raised by the library. Callers that only need to know
// "the computation could not be carried out" catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of an elementary function, a profile, or an
// integrand (zero radicand, vanishing denominator, ln of a non-positive value).
class DomainError : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

// EG - F^2 below the nondegeneracy margin; in Minkowski space this also covers
// points where the surface fails to be spacelike.
class DegenerateSurface : public Error {
public:
    using Error::Error;
};

class UnknownCase : public Error {
public:
    using Error::Error;
};

class IllConditionedFit : public Error {
public:
    using Error::Error;
};

class ParameterConstraintViolation : public Error {
public:
    using Error::Error;
};

class EmptyDomain : public Error {
public:
    using Error::Error;
};

class BlowUp : public Error {
public:
    using Error::Error;
};

class InvalidStep : public Error {
public:
    using Error::Error;
};

class DomainMismatch : public Error {
public:
    using Error::Error;
};

} // namespace transmin
