#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "chernlab/lattice.hpp"

namespace chernlab {

/// Spectral norm of a 2x2 block in closed form (largest singular value).
template <typename Derived>
double block_spectral_norm(const Eigen::MatrixBase<Derived>& K) {
    const double fro2 = K.squaredNorm();
    const double det2 = std::norm(K.determinant());
    const double disc = std::max(fro2 * fro2 - 4.0 * det2, 0.0);
    return std::sqrt(0.5 * (fro2 + std::sqrt(disc)));
}

/// View of the 2x2 orbital block of M coupling window sites x (row) and y (col).
inline Eigen::Matrix2cd site_block(const Eigen::MatrixXcd& M, const TorusWindow& w,
                                   const Site& x, const Site& y) {
    return M.block<2, 2>(w.index(x, Orbital::A), w.index(y, Orbital::A));
}

} // namespace chernlab
