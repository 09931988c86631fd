#pragma once

#include <stdexcept>
#include <string>

namespace pnls {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Array lengths or grids that do not match.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Inconsistent parameters (odd p, padding, scheme compatibility).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Direct-sum or enumeration work above the configured bound.
class CostError : public Error {
public:
    CostError(const std::string& what, double estimate)
        : Error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

// Something that must be impossible happened.
class InvariantError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

class AlignmentError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace pnls
