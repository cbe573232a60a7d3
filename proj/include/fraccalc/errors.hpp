#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fraccalc {

/// Malformed expression source. Carries the byte offset of the offending
/// token and a description of what the parser expected there.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t offset, const std::string& expected)
        : std::runtime_error("syntax error at offset " + std::to_string(offset) +
                             ": expected " + expected),
          offset_(offset), expected_(expected) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

/// Runtime evaluation failure: unbound variable, log/sqrt of a negative
/// argument, 0^negative, division by zero, non-differentiable node.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented operation precondition was violated (g changes sign,
/// mesh mismatch, order outside the supported range, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure: no witness bracketed, series did not converge,
/// non-finite values produced mid-computation.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fraccalc
