#pragma once

#include <stdexcept>
#include <string>

namespace bittp {

/// Raised when an input file (instance, tour, front) is malformed.
/// `line` is 1-based; 0 means the error is not tied to a specific line
/// (e.g. the file could not be opened).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Raised when a documented runtime contract is violated (infeasible plan
/// passed to evaluate, front member outside the reference box, enumeration
/// limits exceeded, ...). Distinct from std::invalid_argument, which is
/// reserved for malformed configuration.
class ContractError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bittp
