#pragma once

#include <stdexcept>
#include <string>

namespace bss {

// Input lies outside the mathematical domain of an operation
// (e.g. a memory kernel evaluated at t <= 0, or a time off the grid).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// A type or model invariant is violated; the message names the invariant.
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& msg) : std::invalid_argument(msg) {}
};

// A numerical procedure failed (non-convergent quadrature, Cholesky failure
// after jitter escalation, non-finite intermediate).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bss
