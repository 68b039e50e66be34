#include "chernlab/interface.hpp"

#include <cmath>

#include "chernlab/blocks.hpp"

namespace chernlab {

namespace {

// A strip wraps into an annulus with two circular interface components
// (rows {c-L-1, c-L} and {c+L, c+L+1}). They stay disjoint exactly when the
// strip and its complement each span at least two rows.
void check_strip_window(const Domain& d, const TorusWindow& w) {
    if (d.shape != Shape::strip && d.shape != Shape::half_strip) return;
    const double lo = d.params.c - d.params.L;
    const double hi = d.params.c + d.params.L;
    const std::int64_t strip_rows =
        static_cast<std::int64_t>(std::floor(hi)) - static_cast<std::int64_t>(std::ceil(lo)) + 1;
    const std::int64_t comp_rows = w.n() - strip_rows;
    if (strip_rows < 2 || comp_rows < 2)
        throw geometry_error("interface window too small: the strip with L = " +
                             std::to_string(d.params.L) + " spans " +
                             std::to_string(strip_rows) + " of " + std::to_string(w.n()) +
                             " rows, so its two interface components touch");
}

} // namespace

InterfaceOperator assemble_interface(const StencilOperator& op_in, const StencilOperator& op_out,
                                     const Domain& d, const TorusWindow& w) {
    check_strip_window(d, w);
    InterfaceOperator out{Eigen::MatrixXcd::Zero(w.dim(), w.dim()),
                          Eigen::MatrixXcd::Zero(w.dim(), w.dim()), w, d.label};
    for (const Site& x : w.sites()) {
        const bool in_x = d.contains(x);
        for (const Hop& h : op_in.hops) {
            Site y = w.canonical(x + h.disp);
            const bool in_y = d.contains(y);
            if (in_x && in_y) {
                out.matrix(w.index(x, h.to), w.index(y, h.from)) += h.amp;
            } else if (in_x != in_y) {
                out.matrix(w.index(x, h.to), w.index(y, h.from)) += h.amp;
                out.coupling(w.index(x, h.to), w.index(y, h.from)) += h.amp;
            }
        }
        for (const Hop& h : op_out.hops) {
            Site y = w.canonical(x + h.disp);
            if (!in_x && !d.contains(y))
                out.matrix(w.index(x, h.to), w.index(y, h.from)) += h.amp;
        }
    }
    return out;
}

InterfaceOperator assemble_haldane_edge(double s, const Domain& d, const TorusWindow& w) {
    check_strip_window(d, w);
    InterfaceOperator out{assemble(build_model(ModelKind::haldane_plus, s), w),
                          Eigen::MatrixXcd::Zero(w.dim(), w.dim()), w, d.label};
    const StencilOperator imag = build_model(ModelKind::imaginary_s, s);
    const StencilOperator plus = build_model(ModelKind::haldane_plus, s);
    for (const Site& x : w.sites()) {
        const bool in_x = d.contains(x);
        for (const Hop& h : imag.hops) {
            Site y = w.canonical(x + h.disp);
            if (!in_x && !d.contains(y))
                out.matrix(w.index(x, h.to), w.index(y, h.from)) -= 2.0 * h.amp;
        }
        for (const Hop& h : plus.hops) {
            Site y = w.canonical(x + h.disp);
            if (in_x != d.contains(y))
                out.coupling(w.index(x, h.to), w.index(y, h.from)) += h.amp;
        }
    }
    return out;
}

InterfaceDecayReport verify_interface_decay(const InterfaceOperator& op, const Domain& d, double nu) {
    if (!(nu > 0.0)) throw parameter_error("verify_interface_decay: nu must be positive");
    InterfaceDecayReport rep;
    rep.nu = nu;
    const TorusWindow& w = op.window;
    const std::vector<int> dist = dist_to_boundary(d, w);
    const auto sites = w.sites();
    for (const Site& x : sites) {
        const double scale = nu * std::exp(2.0 * nu * dist[static_cast<std::size_t>(w.index(x, Orbital::A) / 2)]);
        for (const Site& y : sites) {
            const Eigen::Matrix2cd blk = site_block(op.coupling, w, x, y);
            if (blk.squaredNorm() == 0.0) continue;
            const double ratio = block_spectral_norm(blk) * scale;
            if (ratio > rep.worst_ratio) {
                rep.worst_ratio = ratio;
                rep.worst_row = x;
                rep.worst_col = y;
            }
        }
    }
    rep.pass = rep.worst_ratio <= 1.0 + 1e-12;
    return rep;
}

} // namespace chernlab
