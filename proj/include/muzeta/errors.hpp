// errors.hpp
//
// Exception types shared by all muzeta components.  Every failure mode is a
// subclass of muzeta::error so callers can catch the library as a whole or
// pick out specific conditions (capacity, parse, convergence, ...).

#pragma once

#include <stdexcept>
#include <string>

namespace muzeta {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A request exceeds a documented capacity (sieve limit, embedded table size).
struct capacity_error : error {
    using error::error;
};

// An argument violates a documented precondition.
struct precondition_error : error {
    using error::error;
};

// Input outside the mathematical domain of an operation (pole, even zeta index).
struct domain_error : error {
    using error::error;
};

// Input outside the supported numerical range of an operation.
struct range_error : error {
    using error::error;
};

// Text input that cannot be parsed; carries a 1-based line number.
struct format_error : error {
    format_error(const std::string& msg, long line)
        : error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
    long line_number;
};

// Structurally valid input whose values violate a data invariant.
struct data_error : error {
    using error::error;
};

// An iterative method failed to converge within its budget.
struct convergence_error : error {
    using error::error;
};

// A zeta derivative vanished where a simple zero was expected; almost always
// means the input ordinate is not actually a zero.
struct simplicity_error : error {
    using error::error;
};

// A numerical procedure produced an unusable result (NaN, failed tolerance).
struct numerical_error : error {
    using error::error;
};

// Classification cannot be decided beyond numerical doubt.
struct indeterminate_error : error {
    using error::error;
};

}  // namespace muzeta
