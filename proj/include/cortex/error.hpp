#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cortex {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed document (bad JSON, wrong field types).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A document parsed but broke one or more invariants. Carries every
/// violation message, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> problems);

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Invalid parameters: weights off the simplex, sigma <= 0, etc.
class ConfigError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace cortex
