#pragma once

#include <stdexcept>
#include <string>

namespace hb {

// Base class for everything the library throws.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Syntax error in the text format, with a 1-based line number.
class parse_error : public error {
public:
    parse_error(int line, const std::string& what)
        : error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

// A backtracking search or an enumeration ran past its node budget.
class resource_limit_error : public error {
public:
    using error::error;
};

// Precondition failure of a move (split/attach/contract/diagnostic).
// The code is a short machine-readable reason, e.g. "pole-occupied".
class move_error : public error {
public:
    move_error(const std::string& code, const std::string& what)
        : error(code + ": " + what), code_(code) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// A validated model failed a constraint the classification theorem
// guarantees.  Indicates a bug, never a user error.
class theorem_violation_error : public error {
public:
    using error::error;
};

// Two internal computations that must agree disagreed.
class internal_error : public error {
public:
    using error::error;
};

} // namespace hb
