#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chernlab/hamiltonians.hpp"
#include "chernlab/lattice.hpp"

namespace chernlab {

/// One verified inequality. Comparisons switch to log space when both sides
/// fall below 1e-18, so deep-tail checks stay meaningful.
struct BoundCheck {
    std::string name;
    std::string params;
    double lhs = 0.0;
    double rhs = 0.0;
    double log_lhs = 0.0;
    double log_rhs = 0.0;
    bool pass = false;

    double ratio() const { return std::exp(log_lhs - log_rhs); }
};

BoundCheck make_check(const std::string& name, const std::string& params, double lhs, double rhs);
BoundCheck make_check_log(const std::string& name, const std::string& params, double log_lhs,
                          double log_rhs);

/// Geometric-sum envelopes used everywhere downstream: the one-dimensional
/// exponential sum against 2/a, its separable square against 4/a^2, and the
/// radius-R tail against (8/a^2) e^{-aR}. Partial sums run to the cutoff and
/// the exact geometric remainder is added to the left side, so the cutoff
/// never flatters a check; cutoff must be at least 40/a.
std::vector<BoundCheck> verify_sum_bounds(double a, double R, double cutoff);

/// Stencil norm bounds at decay rate nu: the assembled operator norm on a
/// 24-window torus against 4/nu^3, and for each alpha the chained weighted
/// hopping-sum comparisons S_alpha/alpha <= S_nu/nu <= 16/nu^4.
std::vector<BoundCheck> verify_norm_bounds(const StencilOperator& op, double nu,
                                           const std::vector<double>& alphas);

/// Convolution envelopes at rate beta: for each sample (x, w) the
/// double-lattice seven-exponent sum against (4/beta)^4 e^{-beta(|x|+|w|)},
/// plus the single-line sum against (4/beta) e^{-beta |t|}. The double sum
/// factorizes over coordinates; every factor carries its exact geometric
/// tail. Cutoff must be at least 40/beta.
std::vector<BoundCheck> verify_conv_bound(double beta, const std::vector<std::pair<Site, Site>>& samples,
                                          double cutoff);

/// Off-diagonal resolvent envelope at energy z: every site block of
/// (H - z)^{-1} is checked against e^{-alpha d} / (Delta - S_alpha), where
/// Delta = dist(z, spectrum) and S_alpha is the alpha-weighted hopping sum of
/// H on the window. Requires 0 < alpha < 2 nu and Delta > S_alpha.
BoundCheck verify_resolvent_bound(const Eigen::MatrixXcd& H, const TorusWindow& w, cplx z,
                                  double alpha, double nu);

/// The full default sweep: sum bounds over a in {0.1, 0.25, 0.5, 1} and
/// R in {5, 10, 20}, convolution bounds over the same rates with 16 seeded
/// sample pairs, and the chained norm bounds for the chiral model.
std::vector<BoundCheck> default_bound_sweep(std::uint64_t seed = 0x5eed);

} // namespace chernlab
