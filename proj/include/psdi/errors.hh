#pragma once

#include <stdexcept>
#include <string>

namespace psdi {

/// Raised when an enumeration would exceed the desk-scale size guards.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A solver's precondition on the input language does not hold. `witness`
/// carries a human-readable dump of the offending application when known.
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(const std::string & what, std::string witness = {}) :
        std::runtime_error(what), witness_(std::move(witness))
    {
    }

    const std::string & witness() const noexcept { return witness_; }

private:
    std::string witness_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string & what) :
        std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace psdi
