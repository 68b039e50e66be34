#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "chernlab/domains.hpp"
#include "chernlab/hamiltonians.hpp"

namespace chernlab {

/// Full Hermitian eigendecomposition, eigenvalues ascending.
struct SpectralData {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;

    Eigen::Index dim() const { return eigenvalues.size(); }

    /// max |H v_i - lambda_i v_i| over all columns.
    double residual(const Eigen::MatrixXcd& H) const;
    /// max |V^* V - I| entry.
    double unitarity_defect() const;
};

/// Dense Hermitian eigensolve. The input must be Hermitian to within 1e-10
/// (max entry of M - M^*); it is symmetrized before factorization.
SpectralData eig_hermitian(const Eigen::MatrixXcd& M);

/// Eigenvalues alone, same contract, cheaper.
Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXcd& M);

struct Projector {
    Eigen::MatrixXcd matrix;
    Eigen::Index rank = 0;
    double cut = 0.0;
};

/// Orthogonal projector onto the eigenspaces strictly below the cut.
/// Refuses cuts closer than 1e-9 to an eigenvalue.
Projector spectral_projector(const SpectralData& sd, double cut);

/// Distance from the query energy to the spectrum.
double gap_at(const SpectralData& sd, double energy);
double gap_at(const Eigen::VectorXd& eigenvalues, double energy);

struct DensityReport {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;          // eigenvalues inside [lo, hi]
    double density = 0.0;   // largest distance from a point of the window to those eigenvalues
    double ball_radius = 0.0;
    double coefficient = 0.0; // density * R / ln R when a radius is given
};

/// How densely the spectrum fills the energy window [lo, hi]: the largest
/// gap radius (end gaps count at full width, interior gaps at half width);
/// an empty intersection gives the full window length.
DensityReport delta_density(const Eigen::VectorXd& eigenvalues, double lo, double hi,
                            double ball_radius = 0.0);

enum class ProbeKind { projector, resolvent };

struct DecayFit {
    ProbeKind kind;
    double fit_rate = 0.0;      // slope of -log max-magnitude per unit distance
    double fit_prefactor = 0.0;
    double bound_rate = 0.0;    // certified exponent
    double bound_prefactor = 0.0;
    bool pointwise_ok = false;  // every distance bin obeys prefactor * e^{-rate d}
    std::vector<double> max_by_distance;
};

/// Measure the off-diagonal decay of a spectral projector (cut = re(energy),
/// needs gap >= delta at the cut) or a resolvent at z = energy (needs
/// dist(z, spectrum) above the kernel's alpha-weighted hopping sum, with
/// alpha = 2^-5 nu^4 delta). Magnitudes are 2x2 site-block spectral norms
/// binned by torus distance; the log-linear fit runs on distances [2, n/4].
DecayFit decay_probe(const Eigen::MatrixXcd& H, const TorusWindow& w, ProbeKind kind,
                     cplx energy, double nu, double delta);

/// Apply the inverse of a translation-invariant model through its momentum
/// representation. Throws singularity_error if a band magnitude on the grid
/// is below 1e-12.
Eigen::VectorXcd fourier_apply_inverse(const BlochSymbol& sym, const Eigen::VectorXcd& u,
                                       const TorusWindow& w);

/// Dense inverse of a translation-invariant model on the window, built from
/// the momentum-space inverse by discrete Fourier transform.
Eigen::MatrixXcd dense_inverse_from_symbol(const BlochSymbol& sym, const TorusWindow& w);

struct StripRatioReport {
    double L = 0.0;
    double s = 0.0;
    int n = 0;
    int trials = 0;
    double max_ratio = 0.0; // max over trials of |H^{-1} u| / |u|
    double bound = 0.0;     // C0 L^{1/3} s^{-2/3}
    bool pass = false;
};

/// Sample the chiral-model inverse against random inputs supported on the
/// strip |x2| <= L. Requires n >= 4(2L+1) and L >= 1; pass C0 > 0 to reuse a
/// precomputed constant (otherwise a 512-point grid survey supplies it).
StripRatioReport strip_inverse_ratio(double L, double s, int n, int trials,
                                     std::uint64_t seed, double C0 = 0.0);

struct MarginReport {
    double s = 0.0;
    double norm = 0.0;               // |2 H_plus^{-1} 1_Dc S 1_Dc|
    double margin = 0.0;             // 1 - norm
    double min_spec_plus = 0.0;      // smallest band magnitude of the bulk model on the window
    double min_singular_bound = 0.0; // margin * min_spec_plus when the margin is positive
};

/// Invertibility margin of the edge operator against the bulk model:
/// norm of 2 H_plus^{-1} (1_Dc S 1_Dc) measured as a largest singular value.
MarginReport invertibility_margin(double s, const Domain& d, const TorusWindow& w);

struct ProjectorComparison {
    double eps_measured = 0.0; // max block difference of the inputs on the larger ball
    double max_diff = 0.0;     // max block difference of the projectors on the smaller ball
    double bound = 0.0;
    bool hypotheses_ok = false;
    bool pass = false;
};

/// Compare spectral projectors of two Hamiltonians that agree to eps on the
/// ball of radius 4r about the origin: the projector difference on the ball
/// of radius 2r is checked against (C/delta^6)(e^{-delta r / C} + eps) with
/// C = 2^35 nu^-20. Both spectra need a gap of at least delta at the cut.
ProjectorComparison compare_projectors(const Eigen::MatrixXcd& H1, const Eigen::MatrixXcd& H2,
                                       const TorusWindow& w, double cut, double delta,
                                       double nu, int r);

} // namespace chernlab
