#pragma once

#include <Eigen/Dense>

#include "chernlab/domains.hpp"
#include "chernlab/hamiltonians.hpp"

namespace chernlab {

/// A two-phase operator glued along a domain boundary.
struct InterfaceOperator {
    Eigen::MatrixXcd matrix;   // the glued operator on the window
    Eigen::MatrixXcd coupling; // the off-domain cross terms (matrix minus both restrictions)
    TorusWindow window;
    std::string domain_label;
};

/// Glue op_in on the domain to op_out on its complement, keeping the in-phase
/// hopping across the boundary:
///   1_D op_in 1_D + 1_Dc op_out 1_Dc + 1_D op_in 1_Dc + 1_Dc op_in 1_D.
/// For strip-family domains the window must satisfy n >= 4(2L+1).
InterfaceOperator assemble_interface(const StencilOperator& op_in, const StencilOperator& op_out,
                                     const Domain& d, const TorusWindow& w);

/// The edge operator of the two chiral phases at strength s: the plus-phase
/// Hamiltonian with the imaginary term flipped outside the domain,
///   H_plus - 2 1_Dc S 1_Dc.
InterfaceOperator assemble_haldane_edge(double s, const Domain& d, const TorusWindow& w);

struct InterfaceDecayReport {
    double nu = 0.0;
    double worst_ratio = 0.0; // max over (x, y) of |E(x,y)| nu e^{2 nu dist(x, boundary)}
    Site worst_row{0, 0};
    Site worst_col{0, 0};
    bool pass = false;
};

/// Check the coupling-term envelope |E(x,y)| <= nu^-1 e^{-2 nu d(x, bd D)}
/// entrywise over 2x2 site blocks (spectral norms).
InterfaceDecayReport verify_interface_decay(const InterfaceOperator& op, const Domain& d, double nu);

} // namespace chernlab
