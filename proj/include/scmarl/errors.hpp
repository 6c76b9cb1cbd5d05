#pragma once

#include <stdexcept>
#include <string>

namespace scmarl {

// A caller broke a documented precondition (out-of-range action, shape
// mismatch, ...). These are programming errors, not runtime conditions.
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Invalid configuration value; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scmarl
