#pragma once

#include <stdexcept>
#include <string>

namespace resgap {

// Raised when an operation is called outside its stated domain.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when a table build would exceed the configured memory cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when I_f(ell) vanishes; the theorem requires I_f != 0.
struct DegenerateWeightError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& msg, double best, double est)
        : std::runtime_error(msg), best_value(best), best_estimate(est) {}
    double best_value;
    double best_estimate;
};

// Zero-table parse failure; line is 1-based.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line_no)
        : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"),
          line(line_no) {}
    std::size_t line;
};

// Query interval not covered by the ingested table.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

}  // namespace resgap
