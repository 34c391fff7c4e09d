#pragma once

#include <stdexcept>
#include <string>

namespace achow {

// Malformed user input: bad expression, bad session file, bad dimensions.
struct InputError : std::runtime_error {
    int line = -1;
    int col = -1;
    explicit InputError(const std::string& msg, int line_ = -1, int col_ = -1)
        : std::runtime_error(msg), line(line_), col(col_) {}
};

// A mathematical precondition was violated (zero denominator, pole of order
// two where a simple pole is required, non-squarefree modulus, ...).
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The computation is beyond what the tool solves automatically (a face factor
// nonlinear in both parameters, a point that cannot be canonicalized, ...).
// CLI maps this to exit code 3.
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace achow
