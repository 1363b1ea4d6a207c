#ifndef ALOGLAB_ERRORS_HPP
#define ALOGLAB_ERRORS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace aloglab {

struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int column = 1;
};

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, SourceSpan span)
        : Error("parse error at line " + std::to_string(span.line) + ", column " +
                std::to_string(span.column) + ": " + msg),
          span_(span) {}
    const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class GroundingError : public Error {
public:
    using Error::Error;
};

class EvalError : public Error {
public:
    using Error::Error;
};

class ArithmeticOverflow : public EvalError {
public:
    using EvalError::EvalError;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

struct IntRange {
    long long min = 0;
    long long max = 0;
};

// Resource limits for the exponential checks. Exceeding one raises CapExceeded
// instead of silently approximating.
struct Caps {
    int max_minimality_atoms = 20;       // subset search in minimal-model checks
    int max_completion_atoms = 16;       // completions in strong sat/refutation and
                                         // aggregate-solution checks
    std::uint64_t max_candidates = 1ull << 20;  // enumeration candidate space
};

}  // namespace aloglab

#endif
