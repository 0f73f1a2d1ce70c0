#pragma once

#include <stdexcept>
#include <string>

namespace upsilon {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Quadrature failed to reach the requested tolerance within its budget.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double value, double error_estimate)
        : Error(what), value(value), error_estimate(error_estimate) {}
    double value;
    double error_estimate;
};

/// A declared endpoint exponent implies a divergent integral.
class DivergentHint : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Stable index outside (0,1).
class IndexError : public Error {
public:
    using Error::Error;
};

/// Fractional moment requested at or beyond the divergence boundary.
class MomentDiverges : public Error {
public:
    using Error::Error;
};

class ParamError : public Error {
public:
    using Error::Error;
};

/// Transforming a measure outside the transform's domain.
class NotInDomain : public Error {
public:
    using Error::Error;
};

/// Malformed measure description.
class SpecError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Declared dilation-measure metadata failed its spot check.
class MetadataError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// The two sides of a composition identity disagreed on domain membership.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

} // namespace upsilon
