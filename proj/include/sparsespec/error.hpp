#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparsespec {

enum class ErrorCode {
    argument = 1,
    range = 2,
    domain = 3,
    overflow = 4,
    config = 5,
    numeric = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error(ErrorCode::argument, what) {}
};

class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error(ErrorCode::range, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

/// Raised when a propagation step leaves the representable range.
/// `index()` is the first lattice index whose data could not be formed.
class OverflowError : public Error {
public:
    OverflowError(std::size_t index, const std::string& what)
        : Error(ErrorCode::overflow, what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

}  // namespace sparsespec
