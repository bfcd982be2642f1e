#pragma once

#include <stdexcept>
#include <string>

namespace dtsolve {

/// Malformed input file or stream. Carries a 1-based line number when known.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Caller violated a precondition (bad index, mismatched sizes, ...).
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured exploration cap was exceeded; the computation aborted
/// rather than returning an unproven answer.
class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dtsolve
