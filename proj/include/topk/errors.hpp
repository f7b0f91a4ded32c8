#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topk {

/// Precondition violated by otherwise well-formed input (k out of range, m mismatch, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed election file. line() is 1-based, 0 when not attributable to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A rule string that does not follow the rule grammar.
class RuleSyntaxError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested operation is not defined for this rule (e.g. score ratio of Ranked Pairs).
class UnsupportedRuleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A pathological-profile construction whose parameters make it inapplicable.
class ConstructionError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace topk
