#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chernlab/hamiltonians.hpp"
#include "chernlab/lattice.hpp"

namespace chernlab {

/// Pair of half-space step switches meeting at a corner site: the first
/// switch turns on where the corner-relative first coordinate is
/// nonnegative, the second where the second coordinate is.
struct SwitchPair {
    Site corner{0, 0};

    bool switch1(const TorusWindow& w, const Site& x) const {
        return w.wrap_rel(x - corner).x1 >= 0;
    }
    bool switch2(const TorusWindow& w, const Site& x) const {
        return w.wrap_rel(x - corner).x2 >= 0;
    }
};

struct ConductanceReport {
    Site corner{0, 0};
    int truncation_radius = 0;
    std::int64_t patch_sites = 0;
    double sigma = 0.0;
    int sigma_rounded = 0;
    double rounding_defect = 0.0;
};

/// Real-space conductance of a projector: the switch-commutator trace
/// -2 pi i tr(P [[P, S1], [P, S2]]) restricted to the corner patch of l1
/// radius R_tr (the diagonal is summed over the patch only). The patch is
/// centered between lattice sites so all four quadrants contribute equally.
/// Requires R_tr in [1, n/4].
ConductanceReport sigma_realspace(const Eigen::MatrixXcd& P, const TorusWindow& w,
                                  const SwitchPair& sw, int R_tr, bool swap_switches = false);

/// Chern number of the lower band over an N x N momentum grid, by plaquette
/// link phases. The orientation is fixed so the result matches
/// sigma_realspace on the same model. Throws singularity_error when the
/// bands touch on the grid.
int chern_fhs(const std::function<Eigen::Matrix2cd(double, double)>& symbol, int grid_n);
int chern_fhs(const BlochSymbol& sym, int grid_n);

struct TranslationReport {
    int truncation_radius = 0;
    std::vector<std::pair<Site, double>> sigmas;
    double max_deviation = 0.0; // largest pairwise difference
};

/// Conductance at several switch corners; all corners must lie within n/8
/// (sup metric) of the window origin.
TranslationReport translation_invariance_check(const Eigen::MatrixXcd& P, const TorusWindow& w,
                                               const std::vector<Site>& corners, int R_tr);

struct TrilinearReport {
    double lhs = 0.0;       // |tr A0 [A1, S1] [A2, S2]|
    double rhs = 0.0;       // C^3 2^16 beta^-6 (e^{-beta r} + sqrt(eps))
    double eps = 0.0;
    int small_factor = -1;  // which A_k realized the near-zero hypothesis
    bool pass = false;
};

/// Certified smallness of the switch-commutator trace: all three kernels
/// must obey |A_j(x,y)| <= C e^{-2 beta d(x,y)}, and at least one must be
/// bounded by C * eps on the ball of radius 2r about the origin (both
/// hypotheses are scanned entrywise; violations raise precondition_error
/// naming the offending entry). The switches sit at the origin corner.
TrilinearReport trilinear_trace_bound(const Eigen::MatrixXcd& A0, const Eigen::MatrixXcd& A1,
                                      const Eigen::MatrixXcd& A2, const TorusWindow& w,
                                      double C, double beta, int r, double eps);

} // namespace chernlab
