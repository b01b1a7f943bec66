#pragma once

#include <stdexcept>
#include <string>

namespace axswirl {

// Invalid user-supplied parameters (grid extents, scenario fields, ...).
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite samples or out-of-domain numeric arguments.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, int iterations = 0)
        : std::runtime_error(what), iterations_(iterations) {}
    int iterations() const noexcept { return iterations_; }

private:
    int iterations_;
};

} // namespace axswirl
