#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace inext {

struct NuOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exact-beam kinematics require |w_x| < 1 pointwise.
struct SlopeTooLarge : std::domain_error {
    using std::domain_error::domain_error;
};

struct UnsupportedMode : std::logic_error {
    using std::logic_error::logic_error;
};

struct NewtonDivergence : std::runtime_error {
    NewtonDivergence(const std::string& msg, std::vector<double> residual_trace = {})
        : std::runtime_error(msg), trace(std::move(residual_trace)) {}
    std::vector<double> trace;  // residual norm per iteration
};

struct ProjectionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContinuationStall : std::runtime_error {
    ContinuationStall(const std::string& msg, double last_converged)
        : std::runtime_error(msg), last_converged_load(last_converged) {}
    double last_converged_load;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace inext
