#include "chernlab/conductance.hpp"

#include <cmath>
#include <string>

#include "chernlab/blocks.hpp"

namespace chernlab {

namespace {

std::string site_str(const Site& s) {
    return "(" + std::to_string(s.x1) + ", " + std::to_string(s.x2) + ")";
}

/// Indices (both orbitals) of the half-integer-centered corner patch.
std::vector<Eigen::Index> patch_indices(const TorusWindow& w, const Site& corner, int R_tr) {
    std::vector<Eigen::Index> idx;
    for (const Site& x : w.sites()) {
        const Site r = w.wrap_rel(x - corner);
        if (std::abs(2 * r.x1 + 1) + std::abs(2 * r.x2 + 1) <= 2 * R_tr) {
            idx.push_back(w.index(x, Orbital::A));
            idx.push_back(w.index(x, Orbital::B));
        }
    }
    return idx;
}

Eigen::VectorXd switch_diagonal(const TorusWindow& w, const SwitchPair& sw, bool second) {
    Eigen::VectorXd diag(w.dim());
    for (const Site& x : w.sites()) {
        const double v = (second ? sw.switch2(w, x) : sw.switch1(w, x)) ? 1.0 : 0.0;
        diag[w.index(x, Orbital::A)] = v;
        diag[w.index(x, Orbital::B)] = v;
    }
    return diag;
}

} // namespace

ConductanceReport sigma_realspace(const Eigen::MatrixXcd& P, const TorusWindow& w,
                                  const SwitchPair& sw, int R_tr, bool swap_switches) {
    if (P.rows() != w.dim() || P.cols() != w.dim())
        throw parameter_error("sigma_realspace: projector size does not match the window");
    if (R_tr < 1) throw parameter_error("sigma_realspace: R_tr must be at least 1");
    if (4 * R_tr > w.n())
        throw geometry_error("sigma_realspace: R_tr = " + std::to_string(R_tr) +
                             " exceeds n/4 for n = " + std::to_string(w.n()));

    ConductanceReport rep;
    rep.corner = sw.corner;
    rep.truncation_radius = R_tr;

    Eigen::VectorXd l1 = switch_diagonal(w, sw, false);
    Eigen::VectorXd l2 = switch_diagonal(w, sw, true);
    if (swap_switches) std::swap(l1, l2);

    const std::vector<Eigen::Index> patch = patch_indices(w, sw.corner, R_tr);
    rep.patch_sites = static_cast<std::int64_t>(patch.size()) / 2;
    const auto p = static_cast<Eigen::Index>(patch.size());
    const Eigen::Index dim = w.dim();

    // B1 = [P, S1] entrywise; columns/rows of B2 = [P, S2] are sliced on demand.
    Eigen::MatrixXcd B1(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        B1.col(j) = P.col(j) * l1[j] - l1.asDiagonal() * P.col(j);

    Eigen::MatrixXcd B2cols(dim, p);
    for (Eigen::Index a = 0; a < p; ++a) {
        const Eigen::Index c = patch[static_cast<std::size_t>(a)];
        B2cols.col(a) = P.col(c) * l2[c] - l2.asDiagonal() * P.col(c);
    }

    Eigen::MatrixXcd Gc;
    Gc.noalias() = B1 * B2cols; // (B1 B2) on patch columns
    B2cols.resize(0, 0);

    Eigen::MatrixXcd B1rows(p, dim);
    Eigen::MatrixXcd Prows(p, dim);
    for (Eigen::Index a = 0; a < p; ++a) {
        B1rows.row(a) = B1.row(patch[static_cast<std::size_t>(a)]);
        Prows.row(a) = P.row(patch[static_cast<std::size_t>(a)]);
    }
    B1.resize(0, 0);

    // (B1 B2) on patch rows, without materializing B2:
    // B1 P S2 - (B1 S2) P restricted to the patch rows.
    Eigen::MatrixXcd Gr(p, dim);
    Gr.noalias() = B1rows * P;
    Gr = Gr * l2.asDiagonal();
    B1rows = B1rows * l2.asDiagonal();
    Gr.noalias() -= B1rows * P;
    B1rows.resize(0, 0);

    cplx trace = 0.0;
    for (Eigen::Index a = 0; a < p; ++a)
        trace += (Prows.row(a) * Gc.col(a)).value();
    trace -= (Prows.array() * Gr.array().conjugate()).sum();

    rep.sigma = 2.0 * M_PI * trace.imag(); // real part of -2 pi i tr(...)
    rep.sigma_rounded = static_cast<int>(std::lround(rep.sigma));
    rep.rounding_defect = std::abs(rep.sigma - rep.sigma_rounded);
    return rep;
}

int chern_fhs(const std::function<Eigen::Matrix2cd(double, double)>& symbol, int grid_n) {
    if (grid_n < 3) throw parameter_error("chern_fhs: grid_n must be at least 3");
    const double step = 2.0 * M_PI / grid_n;
    std::vector<Eigen::Vector2cd> lower(static_cast<std::size_t>(grid_n) * grid_n);
    for (int k2 = 0; k2 < grid_n; ++k2) {
        for (int k1 = 0; k1 < grid_n; ++k1) {
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(symbol(k1 * step, k2 * step));
            if (es.eigenvalues()(1) - es.eigenvalues()(0) < 1e-12)
                throw singularity_error("chern_fhs: bands touch at grid point (" +
                                        std::to_string(k1) + ", " + std::to_string(k2) + ")");
            lower[static_cast<std::size_t>(k1) + static_cast<std::size_t>(grid_n) * k2] =
                es.eigenvectors().col(0);
        }
    }
    auto at = [&](int k1, int k2) -> const Eigen::Vector2cd& {
        return lower[static_cast<std::size_t>((k1 + grid_n) % grid_n) +
                     static_cast<std::size_t>(grid_n) * ((k2 + grid_n) % grid_n)];
    };
    auto link = [&](int k1, int k2, int d1, int d2) {
        const cplx u = at(k1, k2).dot(at(k1 + d1, k2 + d2));
        if (std::abs(u) < 1e-12)
            throw singularity_error("chern_fhs: vanishing link at grid point (" +
                                    std::to_string(k1) + ", " + std::to_string(k2) + ")");
        return u;
    };
    double total = 0.0;
    for (int k2 = 0; k2 < grid_n; ++k2) {
        for (int k1 = 0; k1 < grid_n; ++k1) {
            const cplx loop = link(k1, k2, 1, 0) * link(k1 + 1, k2, 0, 1) *
                              std::conj(link(k1, k2 + 1, 1, 0)) * std::conj(link(k1, k2, 0, 1));
            total += std::arg(loop);
        }
    }
    // The plaquette sum is traversed with the orientation matching the
    // switch-commutator trace sign.
    const double c = -total / (2.0 * M_PI);
    const int rounded = static_cast<int>(std::lround(c));
    if (std::abs(c - rounded) > 1e-6)
        throw std::runtime_error("chern_fhs: plaquette sum is not an integer multiple of 2 pi");
    return rounded;
}

int chern_fhs(const BlochSymbol& sym, int grid_n) {
    return chern_fhs(
        [&sym](double xi1, double xi2) { return symbol_eval(sym, xi1, xi2).m; }, grid_n);
}

TranslationReport translation_invariance_check(const Eigen::MatrixXcd& P, const TorusWindow& w,
                                               const std::vector<Site>& corners, int R_tr) {
    if (corners.size() < 2)
        throw parameter_error("translation_invariance_check: need at least two corners");
    for (const Site& c : corners) {
        if (8 * linf_norm(w.wrap_rel(c - w.origin())) > w.n())
            throw precondition_error("translation_invariance_check: corner " + site_str(c) +
                                     " lies farther than n/8 from the window origin");
    }
    TranslationReport rep;
    rep.truncation_radius = R_tr;
    for (const Site& c : corners)
        rep.sigmas.emplace_back(c, sigma_realspace(P, w, SwitchPair{c}, R_tr).sigma);
    for (std::size_t i = 0; i < rep.sigmas.size(); ++i)
        for (std::size_t j = i + 1; j < rep.sigmas.size(); ++j)
            rep.max_deviation = std::max(
                rep.max_deviation, std::abs(rep.sigmas[i].second - rep.sigmas[j].second));
    return rep;
}

TrilinearReport trilinear_trace_bound(const Eigen::MatrixXcd& A0, const Eigen::MatrixXcd& A1,
                                      const Eigen::MatrixXcd& A2, const TorusWindow& w,
                                      double C, double beta, int r, double eps) {
    if (!(C > 0.0) || !(beta > 0.0))
        throw parameter_error("trilinear_trace_bound: C and beta must be positive");
    if (r < 1) throw parameter_error("trilinear_trace_bound: r must be at least 1");
    if (eps < 0.0) throw parameter_error("trilinear_trace_bound: eps must be nonnegative");
    if (2 * r > w.margin())
        throw geometry_error("trilinear_trace_bound: ball of radius 2r leaves the window");
    const Eigen::MatrixXcd* ops[3] = {&A0, &A1, &A2};
    for (const auto* op : ops)
        if (op->rows() != w.dim() || op->cols() != w.dim())
            throw parameter_error("trilinear_trace_bound: operator size does not match the window");

    TrilinearReport rep;
    rep.eps = eps;

    const auto sites = w.sites();
    for (int j = 0; j < 3; ++j) {
        for (const Site& x : sites) {
            for (const Site& y : sites) {
                const double cap =
                    C * std::exp(-2.0 * beta * static_cast<double>(w.torus_l1(x, y)));
                const double mag = block_spectral_norm(site_block(*ops[j], w, x, y));
                if (mag > cap * (1.0 + 1e-12) + 1e-300)
                    throw precondition_error(
                        "trilinear_trace_bound: factor " + std::to_string(j) + " violates the "
                        "decay hypothesis at (" + site_str(x) + ", " + site_str(y) + "): |block| = " +
                        std::to_string(mag) + " > " + std::to_string(cap));
            }
        }
    }

    const auto ball = ball_sites({0, 0}, 2 * r);
    for (int j = 0; j < 3 && rep.small_factor < 0; ++j) {
        double worst = 0.0;
        for (const Site& x : ball)
            for (const Site& y : ball)
                worst = std::max(worst, block_spectral_norm(site_block(*ops[j], w, x, y)));
        if (worst <= C * eps * (1.0 + 1e-12)) rep.small_factor = j;
    }
    if (rep.small_factor < 0)
        throw precondition_error("trilinear_trace_bound: no factor is bounded by C * eps on the "
                                 "ball of radius 2r");

    const SwitchPair sw{{0, 0}};
    const Eigen::VectorXd l1 = switch_diagonal(w, sw, false);
    const Eigen::VectorXd l2 = switch_diagonal(w, sw, true);
    Eigen::MatrixXcd M1(w.dim(), w.dim()), M2(w.dim(), w.dim());
    for (Eigen::Index j = 0; j < w.dim(); ++j) {
        M1.col(j) = A1.col(j) * l1[j] - l1.asDiagonal() * A1.col(j);
        M2.col(j) = A2.col(j) * l2[j] - l2.asDiagonal() * A2.col(j);
    }
    Eigen::MatrixXcd G;
    G.noalias() = M1 * M2;
    const cplx trace = (A0.array() * G.transpose().array()).sum();

    rep.lhs = std::abs(trace);
    rep.rhs = std::pow(C, 3) * std::pow(2.0, 16) / std::pow(beta, 6) *
              (std::exp(-beta * r) + std::sqrt(eps));
    rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-12);
    return rep;
}

} // namespace chernlab
