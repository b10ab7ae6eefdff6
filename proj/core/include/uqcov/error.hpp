#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uqcov {

// Argument outside the support of a density or the open cube side of a transform.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Invalid parameters or incompatible combinations (raised at construction time).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Non-finite integrand value at a cubature node.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace uqcov
