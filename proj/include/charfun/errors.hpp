// errors.hpp -- error types shared across the toolkit.
#pragma once

#include <stdexcept>
#include <string>

namespace charfun {

// Bad parameters, malformed configs, shapes violating invariants. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical certification or verification did not hold. CLI exit code 1.
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace charfun
