#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chernlab/lattice.hpp"

namespace chernlab {

using cplx = std::complex<double>;

enum class ModelKind {
    wallace_h0,    // nearest-neighbor two-orbital hopping
    haldane_plus,  // hopping plus the imaginary next-neighbor term
    haldane_minus, // hopping minus the imaginary next-neighbor term
    imaginary_s,   // the imaginary next-neighbor term alone
};

ModelKind parse_model(const std::string& name);
std::string model_name(ModelKind kind);

/// One hopping amplitude: <x, to | H | x + disp, from> = amp for every x.
struct Hop {
    Site disp;
    Orbital from = Orbital::A;
    Orbital to = Orbital::A;
    cplx amp;
};

/// A finite translation-invariant stencil on the two-orbital lattice.
struct StencilOperator {
    std::vector<Hop> hops;
    std::string label;

    std::int64_t range() const {
        std::int64_t r = 0;
        for (const Hop& h : hops) r = std::max(r, l1_norm(h.disp));
        return r;
    }
};

StencilOperator build_model(ModelKind kind, double s);
StencilOperator scale_stencil(const StencilOperator& op, double factor);

/// Hops aggregated into one 2x2 block per displacement, [to][from] indexing.
std::vector<std::pair<Site, Eigen::Matrix2cd>> displacement_blocks(const StencilOperator& op);

using SiteMask = std::function<bool(const Site&)>;

/// Dense matrix of the stencil on the window, with optional site masks
/// applied on the left and right (realizing 1_A H 1_B). Null masks pass
/// everything.
Eigen::MatrixXcd assemble(const StencilOperator& op, const TorusWindow& w,
                          const SiteMask& left = {}, const SiteMask& right = {});

/// Momentum-space data of a translation-invariant model at fixed s.
struct BlochSymbol {
    ModelKind kind;
    double s = 0.0;
    std::vector<std::pair<Site, Eigen::Matrix2cd>> blocks;
};

BlochSymbol make_symbol(ModelKind kind, double s);

struct SymbolValue {
    Eigen::Matrix2cd m;
    cplx omega;    // 1 + e^{i xi1} + e^{i xi2}
    double eta;    // sin xi1 - sin xi2 + sin(xi2 - xi1)
    double lambda; // spectral radius of m (bands are +/- lambda)
};

SymbolValue symbol_eval(const BlochSymbol& sym, double xi1, double xi2);

/// Smallest band magnitude over the n-point momentum grid xi_k = 2 pi k / n.
double symbol_grid_min(const BlochSymbol& sym, int grid_n);
double symbol_grid_max(const BlochSymbol& sym, int grid_n);

struct ModelConstants {
    int grid_n = 0;
    double s_used = 0.0;
    double lambda0 = 0.0;      // min over grid of sqrt(4 eta^2 + |omega|^2)
    double mu0 = 0.0;          // min over grid (two cone-nearest points removed) of |omega| / dist to cones
    double C0 = 0.0;           // 2^{13/6} pi^{2/3} mu0^{-2/3} lambda0^{-2/3}
    double rho0 = 0.0;         // 6^{-3} C0^{-3}
    double min_lambda_s = 0.0; // min over grid of the band magnitude at s_used
    bool gap_bound_ok = false; // min_lambda_s >= lambda0 * s_used - 1e-12
};

/// Brillouin-zone grid survey of the model constants. The grid is
/// xi_k = -pi + 2 pi k / grid_n per axis; grid_n must be at least 128.
ModelConstants model_constants(int grid_n, double s);

struct ShortRangeCertificate {
    double nu = 0.0;
    double alpha = 0.0;
    bool hop_bounds_ok = false;  // every |K_d| <= nu^-1 e^{-2 nu |d|}
    bool ratio_ok = false;       // S_alpha / alpha <= 16 / nu^4
    bool pass = false;
    double max_violation = 0.0;  // max over d of |K_d| - nu^-1 e^{-2 nu |d|}
    Site worst_disp{0, 0};
    double S_alpha = 0.0;        // sum_d |K_d| (e^{alpha |d|} - 1), exact
    double S_nu = 0.0;
    double norm_bound = 0.0;     // 4 / nu^3
};

/// Certify the exponential short-range envelope of a stencil. Block
/// magnitudes are 2x2 spectral norms. Requires nu > 0 and 0 < alpha <= nu.
ShortRangeCertificate shortrange_certificate(const StencilOperator& op, double nu, double alpha);

} // namespace chernlab
