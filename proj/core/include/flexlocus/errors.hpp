#pragma once

#include <stdexcept>
#include <string>

namespace flexlocus {

// Bad input or violated precondition. CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Inconsistency that should not happen on valid input (failed interpolation
// re-check, unsolvable extraction system). CLI maps this to exit code 3.
class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace flexlocus
