#ifndef HEAVYTAIL_ERRORS_HPP
#define HEAVYTAIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heavytail {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Requested moment order is at or beyond the tail index.
class MomentDiverges : public DomainError {
public:
    explicit MomentDiverges(const std::string& what) : DomainError(what) {}
};

/// An Edgeworth polynomial was requested beyond the available cumulant order.
class InsufficientCumulants : public DomainError {
public:
    explicit InsufficientCumulants(const std::string& what) : DomainError(what) {}
};

/// Adaptive quadrature hit its panel limit before reaching the tolerance.
class QuadratureNonConvergence : public std::runtime_error {
public:
    explicit QuadratureNonConvergence(const std::string& what)
        : std::runtime_error(what) {}
};

/// Malformed spec file or command-line configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace heavytail

#endif
