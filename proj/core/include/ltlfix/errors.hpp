#pragma once

#include <stdexcept>
#include <string>

namespace ltlfix {

// Malformed LTL text. `pos` is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, size_t pos)
        : std::runtime_error(std::move(msg)), pos_(pos) {}
    size_t pos() const noexcept { return pos_; }

private:
    size_t pos_;
};

// Malformed specification file. `line` is 1-based, 0 if unknown.
class SpecFormatError : public std::runtime_error {
public:
    SpecFormatError(std::string msg, int line = 0)
        : std::runtime_error(std::move(msg)), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

// A computation blew a structural budget (automaton state cap, matrix size,
// subprocess timeout). Callers that can degrade gracefully catch this;
// the CLI maps it to exit code 3.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// External realizability backend failed outright (spawn failure, bad output).
class BackendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ltlfix
