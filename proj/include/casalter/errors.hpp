#pragma once

#include <stdexcept>
#include <string>

namespace casalter {

// Config-file / CLI argument problems. Exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Matsubara sum (or other iterative scheme) failed to reach the requested
// tolerance within its budget. Exit code 3. Carries human-readable
// diagnostics in what().
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, int n_reached, double tail_estimate)
        : std::runtime_error(what), n_reached(n_reached), tail_estimate(tail_estimate) {}
    int n_reached;
    double tail_estimate;
};

}  // namespace casalter
