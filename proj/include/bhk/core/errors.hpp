#pragma once

#include <stdexcept>
#include <string>

namespace bhk {

// Input is mathematically outside the supported class (circle poles, circle
// zeros, coefficients that do not split over the Gaussian rationals).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A requested construction has no algorithm in this library.
class Unsupported : public DomainError {
public:
    explicit Unsupported(const std::string& what) : DomainError(what) {}
};

// Malformed document or entry text.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// An exact certificate failed. Always an engine bug, never bad input.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

} // namespace bhk
