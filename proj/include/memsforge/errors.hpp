#pragma once

#include <stdexcept>

namespace memsforge {

// Contract violations: bad parameters, malformed states, out-of-range inputs.
// Mapped to CLI exit code 2.
struct contract_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configuration an operation does not cover (e.g. the Bloch right-hand side
// called with dephasing or squeezing enabled). Mapped to CLI exit code 2.
struct unsupported_config_error : contract_error {
    using contract_error::contract_error;
};

// Numerical breakdown: eigensolver non-convergence, PSD failure, step-size
// instability, Fock truncation overflow. Mapped to CLI exit code 3.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace memsforge
