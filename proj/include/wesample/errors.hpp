#pragma once

#include <stdexcept>
#include <string>

namespace wesample {

struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidNodeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Thrown when the next neighbor query would exceed the oracle's unique-node
// budget. Samplers catch this to terminate an experiment with a partial report.
struct BudgetExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DeadEndError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotIrreducibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateChainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, long line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    long line;
};

} // namespace wesample
