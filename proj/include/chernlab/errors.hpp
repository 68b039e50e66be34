#pragma once

#include <stdexcept>
#include <string>

namespace chernlab {

/// Invalid user-supplied parameter (bad size, negative radius, unknown name).
struct parameter_error : std::invalid_argument {
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Geometric impossibility: window too small, patch leaves the window, corner
/// too far from the center.
struct geometry_error : std::runtime_error {
    explicit geometry_error(const std::string& what) : std::runtime_error(what) {}
};

/// A documented operator contract was violated by the input (e.g. a matrix
/// that must be Hermitian is not).
struct contract_violation : std::runtime_error {
    explicit contract_violation(const std::string& what) : std::runtime_error(what) {}
};

/// A routine's stated precondition does not hold for these inputs.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

/// An analytic hypothesis required by a bound check fails on the given data.
struct hypothesis_error : std::runtime_error {
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

/// The requested spectral cut passes through (or too close to) an eigenvalue.
struct degenerate_cut_error : std::runtime_error {
    explicit degenerate_cut_error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix that must be invertible for the computation is singular at the
/// working precision.
struct singularity_error : std::runtime_error {
    explicit singularity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Requested accuracy cannot be certified (cutoff too small for the tail).
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

/// File or stream failure while reading configs or writing reports.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace chernlab
