#pragma once

#include <stdexcept>
#include <string>

namespace lindsym {

// Thrown when operands disagree on the number of sites / basis length.
struct dimension_error : std::runtime_error {
    explicit dimension_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a request exceeds a configured size cap (enumeration, dense
// reconstruction, full superoperator construction).
struct resource_limit_error : std::runtime_error {
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown during reduced-generator assembly when an output pair maps to an
// orbit that is missing from a sealed basis.
struct assembly_error : std::runtime_error {
    explicit assembly_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when no null vector exists within tolerance.
struct no_steady_state_error : std::runtime_error {
    explicit no_steady_state_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the solver cannot reach the requested residual.
struct convergence_error : std::runtime_error {
    double residual;
    convergence_error(const std::string& what, double res)
        : std::runtime_error(what), residual(res) {}
};

// Thrown when a self-consistency assertion fails at runtime (e.g. the uniform
// magnetization check).
struct internal_consistency_error : std::runtime_error {
    explicit internal_consistency_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown for malformed configuration files or flag values.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lindsym
