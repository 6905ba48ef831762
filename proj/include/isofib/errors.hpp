#pragma once

#include <stdexcept>
#include <string>

namespace isofib {

// Bad user input: malformed config, inconsistent presentation parameters,
// invalid vectors. CLI exit code 1.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

// A cross-module consistency check failed. This never indicates bad input;
// it indicates a bug in the pipeline. CLI exit code 2.
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Enumeration exceeded its configured node budget.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace isofib
