#pragma once

#include <stdexcept>
#include <string>

namespace sepcov {

// Argument outside a transform's domain (inside a support interval,
// at a pole, or an invalid model parameter).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Every polynomial coefficient fell below the trim threshold.
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

// No candidate root survived the physicality filters; carries the full
// root list in the message for diagnosis.
class SelectionError : public std::runtime_error {
public:
    explicit SelectionError(const std::string& what) : std::runtime_error(what) {}
};

// Inverse Cauchy transform: no real root beyond the support edge.
class NoRootError : public std::runtime_error {
public:
    explicit NoRootError(const std::string& what) : std::runtime_error(what) {}
};

// Inverse Cauchy transform: several roots survived all filters.
class AmbiguityError : public std::runtime_error {
public:
    explicit AmbiguityError(const std::string& what) : std::runtime_error(what) {}
};

// Density grid failed to bracket the spectral support (mass < 0.9).
class GridError : public std::runtime_error {
public:
    explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

// A density curve's mass is too far from 1 to renormalize.
class MassError : public std::runtime_error {
public:
    explicit MassError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sepcov
