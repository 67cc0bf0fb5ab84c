#pragma once

#include <stdexcept>
#include <string>

namespace nqa {

/// Input outside the mathematical domain of an operation (|m| > j, y <= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A kernel was evaluated exactly on its p = p' singularity.
class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A requested bound state is not present in a computed spectrum.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A vector that must be normalized has zero norm.
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed run configuration, state label or preset.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace nqa
