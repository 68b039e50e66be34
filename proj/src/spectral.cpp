#include "chernlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chernlab/blocks.hpp"
#include "chernlab/prng.hpp"

#ifdef CHERNLAB_USE_LAPACKE
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace chernlab {

namespace {

constexpr cplx I{0.0, 1.0};

void require_hermitian(Eigen::MatrixXcd& M) {
    if (M.rows() != M.cols())
        throw parameter_error("eig_hermitian: matrix must be square");
    double defect = 0.0;
    for (Eigen::Index j = 0; j < M.cols(); ++j)
        for (Eigen::Index i = 0; i <= j; ++i)
            defect = std::max(defect, std::abs(M(i, j) - std::conj(M(j, i))));
    if (defect > 1e-10)
        throw contract_violation("eig_hermitian: input deviates from Hermitian by " +
                                 std::to_string(defect));
    M = 0.5 * (M + M.adjoint()).eval();
}

#ifdef CHERNLAB_USE_LAPACKE
void lapack_eig(Eigen::MatrixXcd& A, Eigen::VectorXd& w, bool vectors) {
    const lapack_int n = static_cast<lapack_int>(A.rows());
    w.resize(n);
    lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'L', n,
                                     A.data(), n, w.data());
    if (info != 0)
        throw std::runtime_error("eig_hermitian: zheevd failed with info = " + std::to_string(info));
}
#endif

struct SymbolInverseGrid {
    int n = 0;
    std::vector<Eigen::Matrix2cd> minv; // k1 + n * k2
};

SymbolInverseGrid build_symbol_inverse(const BlochSymbol& sym, int n) {
    SymbolInverseGrid grid;
    grid.n = n;
    grid.minv.resize(static_cast<std::size_t>(n) * n);
    const double step = 2.0 * M_PI / n;
    for (int k2 = 0; k2 < n; ++k2) {
        for (int k1 = 0; k1 < n; ++k1) {
            SymbolValue v = symbol_eval(sym, k1 * step, k2 * step);
            if (v.lambda < 1e-12)
                throw singularity_error("symbol is singular on the momentum grid at k = (" +
                                        std::to_string(k1) + ", " + std::to_string(k2) + ")");
            grid.minv[static_cast<std::size_t>(k1) + static_cast<std::size_t>(n) * k2] =
                v.m.inverse();
        }
    }
    return grid;
}

Eigen::MatrixXcd dft_matrix(int n) {
    Eigen::MatrixXcd F(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            F(j, k) = std::exp(-2.0 * M_PI * I * (double(j) * double(k) / n));
    return F;
}

Eigen::VectorXcd apply_symbol_inverse(const SymbolInverseGrid& grid, const Eigen::VectorXcd& u) {
    const int n = grid.n;
    const Eigen::MatrixXcd F = dft_matrix(n);
    Eigen::MatrixXcd G[2];
    for (int o = 0; o < 2; ++o) {
        G[o].resize(n, n);
        for (int u2 = 0; u2 < n; ++u2)
            for (int u1 = 0; u1 < n; ++u1)
                G[o](u1, u2) = u[o + 2 * (u1 + static_cast<std::int64_t>(n) * u2)];
        G[o] = (F * G[o] * F.transpose()).eval();
    }
    for (int k2 = 0; k2 < n; ++k2) {
        for (int k1 = 0; k1 < n; ++k1) {
            const Eigen::Matrix2cd& Minv =
                grid.minv[static_cast<std::size_t>(k1) + static_cast<std::size_t>(n) * k2];
            Eigen::Vector2cd mixed = Minv * Eigen::Vector2cd(G[0](k1, k2), G[1](k1, k2));
            G[0](k1, k2) = mixed(0);
            G[1](k1, k2) = mixed(1);
        }
    }
    Eigen::VectorXcd out(2 * static_cast<std::int64_t>(n) * n);
    const Eigen::MatrixXcd Fc = F.conjugate();
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (int o = 0; o < 2; ++o) {
        Eigen::MatrixXcd back = Fc * G[o] * Fc.transpose();
        for (int u2 = 0; u2 < n; ++u2)
            for (int u1 = 0; u1 < n; ++u1)
                out[o + 2 * (u1 + static_cast<std::int64_t>(n) * u2)] = back(u1, u2) * scale;
    }
    return out;
}

} // namespace

double SpectralData::residual(const Eigen::MatrixXcd& H) const {
    Eigen::MatrixXcd R = H * eigenvectors - eigenvectors * eigenvalues.asDiagonal();
    return R.cwiseAbs().maxCoeff();
}

double SpectralData::unitarity_defect() const {
    Eigen::MatrixXcd G = eigenvectors.adjoint() * eigenvectors;
    G -= Eigen::MatrixXcd::Identity(G.rows(), G.cols());
    return G.cwiseAbs().maxCoeff();
}

SpectralData eig_hermitian(const Eigen::MatrixXcd& M) {
    SpectralData sd;
    sd.eigenvectors = M;
    require_hermitian(sd.eigenvectors);
#ifdef CHERNLAB_USE_LAPACKE
    lapack_eig(sd.eigenvectors, sd.eigenvalues, true);
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sd.eigenvectors);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver did not converge");
    sd.eigenvalues = es.eigenvalues();
    sd.eigenvectors = es.eigenvectors();
#endif
    return sd;
}

Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXcd& M) {
    Eigen::MatrixXcd A = M;
    require_hermitian(A);
#ifdef CHERNLAB_USE_LAPACKE
    Eigen::VectorXd w;
    lapack_eig(A, w, false);
    return w;
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues_only: eigensolver did not converge");
    return es.eigenvalues();
#endif
}

Projector spectral_projector(const SpectralData& sd, double cut) {
    Projector p;
    p.cut = cut;
    const Eigen::Index dim = sd.dim();
    Eigen::Index below = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (std::abs(sd.eigenvalues(i) - cut) < 1e-9)
            throw degenerate_cut_error("spectral_projector: cut " + std::to_string(cut) +
                                       " is within 1e-9 of eigenvalue " +
                                       std::to_string(sd.eigenvalues(i)));
        if (sd.eigenvalues(i) < cut) ++below;
    }
    p.rank = below;
    if (below == 0) {
        p.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    } else if (below == dim) {
        p.matrix = Eigen::MatrixXcd::Identity(dim, dim);
    } else {
        const auto V = sd.eigenvectors.leftCols(below);
        p.matrix.noalias() = V * V.adjoint();
    }
    return p;
}

double gap_at(const Eigen::VectorXd& eigenvalues, double energy) {
    if (eigenvalues.size() == 0)
        throw parameter_error("gap_at: empty spectrum");
    return (eigenvalues.array() - energy).abs().minCoeff();
}

double gap_at(const SpectralData& sd, double energy) { return gap_at(sd.eigenvalues, energy); }

DensityReport delta_density(const Eigen::VectorXd& eigenvalues, double lo, double hi,
                            double ball_radius) {
    if (!(lo < hi)) throw parameter_error("delta_density: window must satisfy lo < hi");
    DensityReport rep;
    rep.lo = lo;
    rep.hi = hi;
    rep.ball_radius = ball_radius;
    std::vector<double> inside;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        if (eigenvalues(i) >= lo && eigenvalues(i) <= hi) inside.push_back(eigenvalues(i));
    std::sort(inside.begin(), inside.end());
    rep.count = static_cast<int>(inside.size());
    if (inside.empty()) {
        rep.density = hi - lo;
    } else {
        double worst = std::max(inside.front() - lo, hi - inside.back());
        for (std::size_t i = 1; i < inside.size(); ++i)
            worst = std::max(worst, 0.5 * (inside[i] - inside[i - 1]));
        rep.density = worst;
    }
    if (ball_radius > 1.0) rep.coefficient = rep.density * ball_radius / std::log(ball_radius);
    return rep;
}

DecayFit decay_probe(const Eigen::MatrixXcd& H, const TorusWindow& w, ProbeKind kind,
                     cplx energy, double nu, double delta) {
    if (!(nu > 0.0) || !(delta > 0.0))
        throw parameter_error("decay_probe: nu and delta must be positive");
    if (H.rows() != w.dim())
        throw parameter_error("decay_probe: matrix size does not match the window");
    DecayFit fit;
    fit.kind = kind;

    const SpectralData sd = eig_hermitian(H);
    Eigen::MatrixXcd K;
    if (kind == ProbeKind::projector) {
        const double cut = energy.real();
        if (gap_at(sd, cut) < delta)
            throw precondition_error("decay_probe: spectral gap at the cut is below delta");
        K = spectral_projector(sd, cut).matrix;
        const double C = 32.0 / std::pow(nu, 4);
        fit.bound_prefactor = C / delta;
        fit.bound_rate = delta / C;
    } else {
        const double alpha = std::pow(nu, 4) * delta / 32.0;
        double dist = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < sd.dim(); ++i)
            dist = std::min(dist, std::abs(cplx(sd.eigenvalues(i), 0.0) - energy));
        // alpha-weighted hopping sum of the kernel itself, sup over rows.
        double S_alpha = 0.0;
        const auto sites = w.sites();
        for (const Site& x : sites) {
            double row = 0.0;
            for (const Site& y : sites) {
                const double d = static_cast<double>(w.torus_l1(x, y));
                if (d == 0.0) continue;
                row += block_spectral_norm(site_block(H, w, x, y)) * (std::exp(alpha * d) - 1.0);
            }
            S_alpha = std::max(S_alpha, row);
        }
        if (dist <= S_alpha)
            throw hypothesis_error("decay_probe: dist(z, spectrum) = " + std::to_string(dist) +
                                   " does not exceed the hopping sum " + std::to_string(S_alpha));
        Eigen::MatrixXcd scaled = sd.eigenvectors;
        for (Eigen::Index i = 0; i < sd.dim(); ++i)
            scaled.col(i) /= (cplx(sd.eigenvalues(i), 0.0) - energy);
        K.noalias() = scaled * sd.eigenvectors.adjoint();
        fit.bound_prefactor = 1.0 / (dist - S_alpha);
        fit.bound_rate = alpha;
    }

    const int n = w.n();
    fit.max_by_distance.assign(static_cast<std::size_t>(n) + 1, 0.0);
    const auto sites = w.sites();
    for (const Site& x : sites) {
        for (const Site& y : sites) {
            const auto d = static_cast<std::size_t>(w.torus_l1(x, y));
            fit.max_by_distance[d] =
                std::max(fit.max_by_distance[d], block_spectral_norm(site_block(K, w, x, y)));
        }
    }

    // Least-squares line through (d, log max) on the calibrated distance window.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int d = 2; d <= n / 4; ++d) {
        const double m = fit.max_by_distance[static_cast<std::size_t>(d)];
        if (m <= 0.0) continue;
        const double ld = std::log(m);
        sx += d; sy += ld; sxx += double(d) * d; sxy += d * ld;
        ++count;
    }
    if (count >= 2) {
        const double denom = count * sxx - sx * sx;
        const double slope = (count * sxy - sx * sy) / denom;
        fit.fit_rate = -slope;
        fit.fit_prefactor = std::exp((sy - slope * sx) / count);
    }

    fit.pointwise_ok = true;
    for (std::size_t d = 0; d < fit.max_by_distance.size(); ++d) {
        const double cap = fit.bound_prefactor * std::exp(-fit.bound_rate * double(d));
        if (fit.max_by_distance[d] > cap * (1.0 + 1e-9)) fit.pointwise_ok = false;
    }
    return fit;
}

Eigen::VectorXcd fourier_apply_inverse(const BlochSymbol& sym, const Eigen::VectorXcd& u,
                                       const TorusWindow& w) {
    if (u.size() != w.dim())
        throw parameter_error("fourier_apply_inverse: vector size does not match the window");
    return apply_symbol_inverse(build_symbol_inverse(sym, w.n()), u);
}

Eigen::MatrixXcd dense_inverse_from_symbol(const BlochSymbol& sym, const TorusWindow& w) {
    const int n = w.n();
    const SymbolInverseGrid grid = build_symbol_inverse(sym, n);
    const Eigen::MatrixXcd Fc = dft_matrix(n).conjugate();
    const double scale = 1.0 / (static_cast<double>(n) * n);

    // Inverse transform each of the four orbital components to displacement space.
    Eigen::MatrixXcd kappa[2][2];
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            Eigen::MatrixXcd comp(n, n);
            for (int k2 = 0; k2 < n; ++k2)
                for (int k1 = 0; k1 < n; ++k1)
                    comp(k1, k2) =
                        grid.minv[static_cast<std::size_t>(k1) + static_cast<std::size_t>(n) * k2](a, b);
            kappa[a][b] = (Fc * comp * Fc.transpose()) * scale;
        }
    }

    Eigen::MatrixXcd out(w.dim(), w.dim());
    for (int y2 = 0; y2 < n; ++y2) {
        for (int y1 = 0; y1 < n; ++y1) {
            const std::int64_t col = 2 * (y1 + static_cast<std::int64_t>(n) * y2);
            for (int x2 = 0; x2 < n; ++x2) {
                const int d2 = (x2 - y2 + n) % n;
                for (int x1 = 0; x1 < n; ++x1) {
                    const int d1 = (x1 - y1 + n) % n;
                    const std::int64_t row = 2 * (x1 + static_cast<std::int64_t>(n) * x2);
                    out(row, col) = kappa[0][0](d1, d2);
                    out(row, col + 1) = kappa[0][1](d1, d2);
                    out(row + 1, col) = kappa[1][0](d1, d2);
                    out(row + 1, col + 1) = kappa[1][1](d1, d2);
                }
            }
        }
    }
    return out;
}

StripRatioReport strip_inverse_ratio(double L, double s, int n, int trials, std::uint64_t seed,
                                     double C0) {
    if (L < 1.0) throw parameter_error("strip_inverse_ratio: L must be at least 1");
    if (!(s > 0.0)) throw parameter_error("strip_inverse_ratio: s must be positive");
    if (trials < 1) throw parameter_error("strip_inverse_ratio: trials must be positive");
    if (n < 4.0 * (2.0 * L + 1.0))
        throw precondition_error("strip_inverse_ratio: window n = " + std::to_string(n) +
                                 " is below 4(2L+1)");
    StripRatioReport rep;
    rep.L = L;
    rep.s = s;
    rep.n = n;
    rep.trials = trials;

    const TorusWindow w(n);
    const SymbolInverseGrid grid = build_symbol_inverse(make_symbol(ModelKind::haldane_plus, s), n);
    Prng rng(seed);
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXcd u = Eigen::VectorXcd::Zero(w.dim());
        for (const Site& x : w.sites()) {
            if (std::abs(static_cast<double>(x.x2)) > L) continue;
            u[w.index(x, Orbital::A)] = rng.gaussian();
            u[w.index(x, Orbital::B)] = rng.gaussian();
        }
        const double nu = u.norm();
        if (nu == 0.0) continue;
        rep.max_ratio = std::max(rep.max_ratio, apply_symbol_inverse(grid, u).norm() / nu);
    }

    if (!(C0 > 0.0)) C0 = model_constants(512, s).C0;
    rep.bound = C0 * std::cbrt(L) * std::pow(s, -2.0 / 3.0);
    rep.pass = rep.max_ratio <= rep.bound;
    return rep;
}

MarginReport invertibility_margin(double s, const Domain& d, const TorusWindow& w) {
    if (!(s > 0.0)) throw parameter_error("invertibility_margin: s must be positive");
    MarginReport rep;
    rep.s = s;
    const SiteMask outside = [&d](const Site& x) { return !d.contains(x); };
    const Eigen::MatrixXcd flipped =
        assemble(build_model(ModelKind::imaginary_s, s), w, outside, outside);
    const BlochSymbol sym = make_symbol(ModelKind::haldane_plus, s);
    Eigen::MatrixXcd K;
    K.noalias() = 2.0 * (dense_inverse_from_symbol(sym, w) * flipped);
    Eigen::MatrixXcd G;
    G.noalias() = K.adjoint() * K;
    const Eigen::VectorXd evs = eigenvalues_only(G);
    rep.norm = std::sqrt(std::max(evs.maxCoeff(), 0.0));
    rep.margin = 1.0 - rep.norm;
    rep.min_spec_plus = symbol_grid_min(sym, w.n());
    rep.min_singular_bound = rep.margin > 0.0 ? rep.margin * rep.min_spec_plus : 0.0;
    return rep;
}

ProjectorComparison compare_projectors(const Eigen::MatrixXcd& H1, const Eigen::MatrixXcd& H2,
                                       const TorusWindow& w, double cut, double delta,
                                       double nu, int r) {
    if (r < 1) throw parameter_error("compare_projectors: r must be positive");
    if (4 * r > w.margin())
        throw geometry_error("compare_projectors: ball of radius 4r leaves the window");
    if (!(nu > 0.0) || !(delta > 0.0))
        throw parameter_error("compare_projectors: nu and delta must be positive");

    ProjectorComparison cmp;
    const SpectralData sd1 = eig_hermitian(H1);
    const SpectralData sd2 = eig_hermitian(H2);
    if (gap_at(sd1, cut) < delta || gap_at(sd2, cut) < delta)
        throw precondition_error("compare_projectors: a spectral gap of at least delta is "
                                 "required at the cut for both inputs");
    const Eigen::MatrixXcd P1 = spectral_projector(sd1, cut).matrix;
    const Eigen::MatrixXcd P2 = spectral_projector(sd2, cut).matrix;

    const auto outer = ball_sites({0, 0}, 4 * r);
    for (const Site& x : outer)
        for (const Site& y : outer)
            cmp.eps_measured = std::max(
                cmp.eps_measured,
                block_spectral_norm(site_block(H1, w, x, y) - site_block(H2, w, x, y)));

    const auto inner = ball_sites({0, 0}, 2 * r);
    for (const Site& x : inner)
        for (const Site& y : inner)
            cmp.max_diff = std::max(
                cmp.max_diff,
                block_spectral_norm(site_block(P1, w, x, y) - site_block(P2, w, x, y)));

    const double C = std::pow(2.0, 35) * std::pow(nu, -20);
    cmp.bound = C / std::pow(delta, 6) * (std::exp(-delta * r / C) + cmp.eps_measured);
    cmp.hypotheses_ok = true;
    cmp.pass = cmp.max_diff <= cmp.bound;
    return cmp;
}

} // namespace chernlab
