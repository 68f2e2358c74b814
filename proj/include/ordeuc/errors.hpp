// errors.hpp: exception types shared across the library, each carrying a
// stable machine-readable code that the CLI maps to exit statuses.
#pragma once

#include <stdexcept>
#include <string>

namespace ordeuc {

// Violation of an operation's domain precondition (zero divisor, norm of
// zero, out-of-range generator subscript, ...).
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Raised when a factorization cannot be certified within the configured
// search budget.  Callers must treat this as "unknown", never as "irreducible".
class FactorizationIncomplete : public DomainError {
public:
    explicit FactorizationIncomplete(const std::string& msg)
        : DomainError("factorization-incomplete", msg) {}
};

// Malformed textual input; `pos` is the byte offset of the offending token.
class ParseError : public DomainError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : DomainError("parse", msg + " (at position " + std::to_string(pos) + ")"),
          pos_(pos) {}

    std::size_t pos() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

}  // namespace ordeuc
