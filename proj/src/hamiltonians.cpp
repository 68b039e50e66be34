#include "chernlab/hamiltonians.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace chernlab {

namespace {

constexpr cplx I{0.0, 1.0};

void add_hopping_term(std::vector<Hop>& hops) {
    // <x, A | H | x+d, B> = 1 for d in {(0,0), (-1,0), (0,-1)} and the
    // Hermitian partners.
    for (Site d : {Site{0, 0}, Site{-1, 0}, Site{0, -1}})
        hops.push_back({d, Orbital::B, Orbital::A, 1.0});
    for (Site d : {Site{0, 0}, Site{1, 0}, Site{0, 1}})
        hops.push_back({d, Orbital::A, Orbital::B, 1.0});
}

void add_imaginary_term(std::vector<Hop>& hops, double s) {
    struct Entry { Site d; double sign; };
    static const Entry entries[] = {
        {{1, 0}, +1.0},  {{-1, 0}, -1.0},
        {{0, -1}, +1.0}, {{0, 1}, -1.0},
        {{-1, 1}, +1.0}, {{1, -1}, -1.0},
    };
    for (const Entry& e : entries) {
        hops.push_back({e.d, Orbital::A, Orbital::A, e.sign * s * I});
        hops.push_back({e.d, Orbital::B, Orbital::B, -e.sign * s * I});
    }
}

} // namespace

ModelKind parse_model(const std::string& name) {
    if (name == "wallace_h0") return ModelKind::wallace_h0;
    if (name == "haldane_plus") return ModelKind::haldane_plus;
    if (name == "haldane_minus") return ModelKind::haldane_minus;
    if (name == "imaginary_s") return ModelKind::imaginary_s;
    throw parameter_error("parse_model: unknown model '" + name + "'");
}

std::string model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::wallace_h0: return "wallace_h0";
        case ModelKind::haldane_plus: return "haldane_plus";
        case ModelKind::haldane_minus: return "haldane_minus";
        case ModelKind::imaginary_s: return "imaginary_s";
    }
    return "unknown";
}

StencilOperator build_model(ModelKind kind, double s) {
    StencilOperator op;
    op.label = model_name(kind);
    switch (kind) {
        case ModelKind::wallace_h0:
            add_hopping_term(op.hops);
            break;
        case ModelKind::haldane_plus:
            add_hopping_term(op.hops);
            add_imaginary_term(op.hops, s);
            break;
        case ModelKind::haldane_minus:
            add_hopping_term(op.hops);
            add_imaginary_term(op.hops, -s);
            break;
        case ModelKind::imaginary_s:
            add_imaginary_term(op.hops, s);
            break;
    }
    return op;
}

StencilOperator scale_stencil(const StencilOperator& op, double factor) {
    StencilOperator out = op;
    for (Hop& h : out.hops) h.amp *= factor;
    return out;
}

std::vector<std::pair<Site, Eigen::Matrix2cd>> displacement_blocks(const StencilOperator& op) {
    std::map<Site, Eigen::Matrix2cd> acc;
    for (const Hop& h : op.hops) {
        auto it = acc.try_emplace(h.disp, Eigen::Matrix2cd::Zero()).first;
        it->second(static_cast<int>(h.to), static_cast<int>(h.from)) += h.amp;
    }
    return {acc.begin(), acc.end()};
}

Eigen::MatrixXcd assemble(const StencilOperator& op, const TorusWindow& w,
                          const SiteMask& left, const SiteMask& right) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(w.dim(), w.dim());
    const auto window_sites = w.sites();
    for (const Site& x : window_sites) {
        if (left && !left(x)) continue;
        for (const Hop& h : op.hops) {
            Site y = w.canonical(x + h.disp);
            if (right && !right(y)) continue;
            M(w.index(x, h.to), w.index(y, h.from)) += h.amp;
        }
    }
    return M;
}

BlochSymbol make_symbol(ModelKind kind, double s) {
    return {kind, s, displacement_blocks(build_model(kind, s))};
}

SymbolValue symbol_eval(const BlochSymbol& sym, double xi1, double xi2) {
    SymbolValue v;
    v.m.setZero();
    for (const auto& [d, K] : sym.blocks)
        v.m += K * std::exp(I * (xi1 * double(d.x1) + xi2 * double(d.x2)));
    v.omega = 1.0 + std::exp(I * xi1) + std::exp(I * xi2);
    v.eta = std::sin(xi1) - std::sin(xi2) + std::sin(xi2 - xi1);
    // The symbol is traceless Hermitian, so the bands are +/- lambda with
    // lambda^2 = m00^2 + |m01|^2.
    v.lambda = std::sqrt(std::norm(v.m(0, 0)) + std::norm(v.m(0, 1)));
    return v;
}

double symbol_grid_min(const BlochSymbol& sym, int grid_n) {
    if (grid_n < 1) throw parameter_error("symbol_grid_min: grid_n must be positive");
    double best = std::numeric_limits<double>::infinity();
    const double step = 2.0 * M_PI / grid_n;
    for (int k1 = 0; k1 < grid_n; ++k1)
        for (int k2 = 0; k2 < grid_n; ++k2)
            best = std::min(best, symbol_eval(sym, k1 * step, k2 * step).lambda);
    return best;
}

double symbol_grid_max(const BlochSymbol& sym, int grid_n) {
    if (grid_n < 1) throw parameter_error("symbol_grid_max: grid_n must be positive");
    double best = 0.0;
    const double step = 2.0 * M_PI / grid_n;
    for (int k1 = 0; k1 < grid_n; ++k1)
        for (int k2 = 0; k2 < grid_n; ++k2)
            best = std::max(best, symbol_eval(sym, k1 * step, k2 * step).lambda);
    return best;
}

ModelConstants model_constants(int grid_n, double s) {
    if (grid_n < 128)
        throw parameter_error("model_constants: grid_n must be at least 128, got " + std::to_string(grid_n));
    ModelConstants mc;
    mc.grid_n = grid_n;
    mc.s_used = s;

    const double step = 2.0 * M_PI / grid_n;
    const double cone = 2.0 * M_PI / 3.0;
    const double cones[2][2] = {{cone, -cone}, {-cone, cone}};
    const BlochSymbol sym = make_symbol(ModelKind::haldane_plus, s);

    // Locate the grid point nearest each cone first; those two points are
    // excluded from the mu0 minimum (the ratio degenerates to 0/0 there).
    long long skip[2] = {-1, -1};
    for (int c = 0; c < 2; ++c) {
        double best = std::numeric_limits<double>::infinity();
        for (int k1 = 0; k1 < grid_n; ++k1) {
            double xi1 = -M_PI + k1 * step;
            for (int k2 = 0; k2 < grid_n; ++k2) {
                double xi2 = -M_PI + k2 * step;
                double d1 = xi1 - cones[c][0], d2 = xi2 - cones[c][1];
                double dd = d1 * d1 + d2 * d2;
                if (dd < best) {
                    best = dd;
                    skip[c] = static_cast<long long>(k1) * grid_n + k2;
                }
            }
        }
    }

    double lambda0 = std::numeric_limits<double>::infinity();
    double mu0 = std::numeric_limits<double>::infinity();
    double min_lambda_s = std::numeric_limits<double>::infinity();
    for (int k1 = 0; k1 < grid_n; ++k1) {
        double xi1 = -M_PI + k1 * step;
        for (int k2 = 0; k2 < grid_n; ++k2) {
            double xi2 = -M_PI + k2 * step;
            SymbolValue v = symbol_eval(sym, xi1, xi2);
            lambda0 = std::min(lambda0, std::sqrt(4.0 * v.eta * v.eta + std::norm(v.omega)));
            min_lambda_s = std::min(min_lambda_s, v.lambda);
            long long id = static_cast<long long>(k1) * grid_n + k2;
            if (id == skip[0] || id == skip[1]) continue;
            double dist = std::numeric_limits<double>::infinity();
            for (const auto& cpt : cones) {
                double d1 = xi1 - cpt[0], d2 = xi2 - cpt[1];
                dist = std::min(dist, std::hypot(d1, d2));
            }
            mu0 = std::min(mu0, std::abs(v.omega) / dist);
        }
    }

    mc.lambda0 = lambda0;
    mc.mu0 = mu0;
    mc.C0 = std::pow(2.0, 13.0 / 6.0) * std::pow(M_PI, 2.0 / 3.0) *
            std::pow(mu0, -2.0 / 3.0) * std::pow(lambda0, -2.0 / 3.0);
    mc.rho0 = std::pow(6.0, -3.0) * std::pow(mc.C0, -3.0);
    mc.min_lambda_s = min_lambda_s;
    mc.gap_bound_ok = min_lambda_s >= lambda0 * s - 1e-12;
    return mc;
}

ShortRangeCertificate shortrange_certificate(const StencilOperator& op, double nu, double alpha) {
    if (!(nu > 0.0)) throw parameter_error("shortrange_certificate: nu must be positive");
    if (!(alpha > 0.0) || alpha > nu)
        throw parameter_error("shortrange_certificate: alpha must lie in (0, nu]");
    ShortRangeCertificate cert;
    cert.nu = nu;
    cert.alpha = alpha;
    cert.norm_bound = 4.0 / std::pow(nu, 3);
    cert.max_violation = -std::numeric_limits<double>::infinity();
    cert.hop_bounds_ok = true;

    for (const auto& [d, K] : displacement_blocks(op)) {
        double mag = K.jacobiSvd().singularValues()(0);
        double dist = static_cast<double>(l1_norm(d));
        double envelope = std::exp(-2.0 * nu * dist) / nu;
        double violation = mag - envelope;
        if (violation > cert.max_violation) {
            cert.max_violation = violation;
            cert.worst_disp = d;
        }
        if (violation > 1e-12) cert.hop_bounds_ok = false;
        cert.S_alpha += mag * (std::exp(alpha * dist) - 1.0);
        cert.S_nu += mag * (std::exp(nu * dist) - 1.0);
    }
    if (op.hops.empty()) cert.max_violation = 0.0;

    cert.ratio_ok = cert.S_alpha / alpha <= 16.0 / std::pow(nu, 4) + 1e-12;
    cert.pass = cert.hop_bounds_ok && cert.ratio_ok;
    return cert;
}

} // namespace chernlab
