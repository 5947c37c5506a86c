#pragma once

#include <stdexcept>
#include <string>

namespace asnp {

// Violated mathematical precondition (CLI exit code 2).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested work exceeds a configured enumeration or memory guard (exit code 3).
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace asnp
