#include "chernlab/bounds.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>

#include "chernlab/blocks.hpp"
#include "chernlab/prng.hpp"
#include "chernlab/spectral.hpp"

namespace chernlab {

namespace {

constexpr double kLogSwitch = 1e-18;

std::string fmt_params(const char* fmt, ...) {
    char buf[160];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

/// Exact 1D sum g(t) = sum_s e^{-2b(|t-s| + |s|)}: partial sum to the cutoff
/// plus a rigorous geometric remainder.
double line_conv_sum(double b, std::int64_t t, std::int64_t cut) {
    double sum = 0.0;
    for (std::int64_t s = -cut; s <= cut; ++s)
        sum += std::exp(-2.0 * b * (std::abs(double(t - s)) + std::abs(double(s))));
    // |t - s| >= |s| - |t| for the discarded |s| > cut >= |t| terms.
    const double q2 = std::exp(-4.0 * b);
    sum += 2.0 * std::exp(2.0 * b * std::abs(double(t))) * std::pow(q2, double(cut + 1)) / (1.0 - q2);
    return sum;
}

} // namespace

BoundCheck make_check(const std::string& name, const std::string& params, double lhs, double rhs) {
    BoundCheck c;
    c.name = name;
    c.params = params;
    c.lhs = lhs;
    c.rhs = rhs;
    c.log_lhs = lhs > 0.0 ? std::log(lhs) : -std::numeric_limits<double>::infinity();
    c.log_rhs = rhs > 0.0 ? std::log(rhs) : -std::numeric_limits<double>::infinity();
    if (lhs < kLogSwitch && rhs < kLogSwitch)
        c.pass = c.log_lhs <= c.log_rhs + 1e-9;
    else
        c.pass = lhs <= rhs + 1e-12;
    return c;
}

BoundCheck make_check_log(const std::string& name, const std::string& params, double log_lhs,
                          double log_rhs) {
    BoundCheck c;
    c.name = name;
    c.params = params;
    c.log_lhs = log_lhs;
    c.log_rhs = log_rhs;
    c.lhs = std::exp(log_lhs);
    c.rhs = std::exp(log_rhs);
    if (c.lhs < kLogSwitch && c.rhs < kLogSwitch)
        c.pass = log_lhs <= log_rhs + 1e-9;
    else
        c.pass = c.lhs <= c.rhs + 1e-12;
    return c;
}

std::vector<BoundCheck> verify_sum_bounds(double a, double R, double cutoff) {
    if (!(a > 0.0)) throw parameter_error("verify_sum_bounds: a must be positive");
    if (!(R >= 1.0)) throw parameter_error("verify_sum_bounds: R must be at least 1");
    if (cutoff < 40.0 / a)
        throw precision_error("verify_sum_bounds: cutoff below 40/a cannot certify the tail");
    const auto cut = static_cast<std::int64_t>(cutoff);
    const double q = std::exp(-2.0 * a);

    double line = 1.0;
    for (std::int64_t s = 1; s <= cut; ++s) line += 2.0 * std::pow(q, double(s));
    line += 2.0 * std::pow(q, double(cut + 1)) / (1.0 - q);

    std::vector<BoundCheck> out;
    out.push_back(make_check("line_sum", fmt_params("a=%g", a), line, 2.0 / a));
    out.push_back(make_check("plane_sum", fmt_params("a=%g", a), line * line, 4.0 / (a * a)));

    // Radial tail: N(r) = 4r sites at l1 radius r >= 1.
    const auto r0 = static_cast<std::int64_t>(std::ceil(R));
    double tail = 0.0;
    for (std::int64_t r = r0; r <= cut; ++r) tail += 4.0 * double(r) * std::pow(q, double(r));
    // sum_{r > cut} r q^r = q^{cut+1} ((cut+1) - cut q) / (1-q)^2, exactly.
    tail += 4.0 * std::pow(q, double(cut + 1)) * ((double(cut) + 1.0) - double(cut) * q) /
            ((1.0 - q) * (1.0 - q));
    out.push_back(make_check("plane_tail", fmt_params("a=%g,R=%g", a, R), tail,
                             8.0 / (a * a) * std::exp(-a * R)));
    return out;
}

std::vector<BoundCheck> verify_norm_bounds(const StencilOperator& op, double nu,
                                           const std::vector<double>& alphas) {
    const ShortRangeCertificate base = shortrange_certificate(op, nu, nu);
    if (!base.hop_bounds_ok)
        throw precondition_error("verify_norm_bounds: stencil violates the short-range envelope "
                                 "(worst excess " + std::to_string(base.max_violation) + ")");
    std::vector<BoundCheck> out;

    const TorusWindow w(24);
    const Eigen::VectorXd evs = eigenvalues_only(assemble(op, w));
    const double norm = std::max(std::abs(evs.minCoeff()), std::abs(evs.maxCoeff()));
    out.push_back(make_check("operator_norm", fmt_params("nu=%g,n=24", nu), norm,
                             4.0 / std::pow(nu, 3)));

    for (double alpha : alphas) {
        const ShortRangeCertificate cert = shortrange_certificate(op, nu, alpha);
        out.push_back(make_check("hop_sum_ratio", fmt_params("nu=%g,alpha=%g", nu, alpha),
                                 cert.S_alpha / alpha, cert.S_nu / nu));
        out.push_back(make_check("hop_sum_cap", fmt_params("nu=%g,alpha=%g", nu, alpha),
                                 cert.S_nu / nu, 16.0 / std::pow(nu, 4)));
    }
    return out;
}

std::vector<BoundCheck> verify_conv_bound(double beta,
                                          const std::vector<std::pair<Site, Site>>& samples,
                                          double cutoff) {
    if (!(beta > 0.0)) throw parameter_error("verify_conv_bound: beta must be positive");
    if (cutoff < 40.0 / beta)
        throw precision_error("verify_conv_bound: cutoff below 40/beta cannot certify the tail");
    const auto cut = static_cast<std::int64_t>(cutoff);
    std::vector<BoundCheck> out;

    for (const auto& [x, wsite] : samples) {
        // sum over y, z of e^{-2b(|x-y| + |y2-z2| + |y1| + |z1| + |z1-w1| + |z2| + |w2|)}
        // factorizes into first-coordinate sums in y1 and z1, a coupled
        // second-coordinate double sum, and the bare |w2| factor.
        const double A = line_conv_sum(beta, x.x1, cut);       // y1 part
        const double B = line_conv_sum(beta, wsite.x1, cut);   // z1 part

        double mid = 0.0;
        for (std::int64_t y2 = -cut; y2 <= cut; ++y2)
            mid += std::exp(-2.0 * beta * std::abs(double(x.x2 - y2))) *
                   line_conv_sum(beta, y2, cut);
        // Discarded |y2| > cut: e^{-2b|x2-y2|} <= e^{2b|x2|} q^{|y2|} with
        // q = e^{-2b}, and the inner sum never exceeds its value at 0.
        const double q = std::exp(-2.0 * beta);
        mid += line_conv_sum(beta, 0, cut) * std::exp(2.0 * beta * std::abs(double(x.x2))) * 2.0 *
               std::pow(q, double(cut + 1)) / (1.0 - q);

        const double log_lhs = std::log(A) + std::log(B) + std::log(mid) -
                               2.0 * beta * std::abs(double(wsite.x2));
        const double log_rhs = 4.0 * std::log(4.0 / beta) -
                               beta * double(l1_norm(x) + l1_norm(wsite));
        out.push_back(make_check_log(
            "conv_plane",
            fmt_params("beta=%g,x=(%lld,%lld),w=(%lld,%lld)", beta, static_cast<long long>(x.x1),
                       static_cast<long long>(x.x2), static_cast<long long>(wsite.x1),
                       static_cast<long long>(wsite.x2)),
            log_lhs, log_rhs));

        const std::int64_t t = x.x1;
        out.push_back(make_check("conv_line", fmt_params("beta=%g,t=%lld", beta,
                                                         static_cast<long long>(t)),
                                 line_conv_sum(beta, t, cut),
                                 4.0 / beta * std::exp(-beta * std::abs(double(t)))));
    }
    return out;
}

BoundCheck verify_resolvent_bound(const Eigen::MatrixXcd& H, const TorusWindow& w, cplx z,
                                  double alpha, double nu) {
    if (!(nu > 0.0)) throw parameter_error("verify_resolvent_bound: nu must be positive");
    if (!(alpha > 0.0) || !(alpha < 2.0 * nu))
        throw parameter_error("verify_resolvent_bound: alpha must lie in (0, 2 nu)");
    if (H.rows() != w.dim())
        throw parameter_error("verify_resolvent_bound: matrix size does not match the window");

    const SpectralData sd = eig_hermitian(H);
    double dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < sd.dim(); ++i)
        dist = std::min(dist, std::abs(cplx(sd.eigenvalues(i), 0.0) - z));

    const auto sites = w.sites();
    double S_alpha = 0.0;
    for (const Site& xs : sites) {
        double row = 0.0;
        for (const Site& ys : sites) {
            const double d = static_cast<double>(w.torus_l1(xs, ys));
            if (d == 0.0) continue;
            row += block_spectral_norm(site_block(H, w, xs, ys)) * (std::exp(alpha * d) - 1.0);
        }
        S_alpha = std::max(S_alpha, row);
    }
    if (dist <= S_alpha)
        throw hypothesis_error("verify_resolvent_bound: dist(z, spectrum) = " +
                               std::to_string(dist) + " does not exceed the hopping sum " +
                               std::to_string(S_alpha));

    Eigen::MatrixXcd scaled = sd.eigenvectors;
    for (Eigen::Index i = 0; i < sd.dim(); ++i)
        scaled.col(i) /= (cplx(sd.eigenvalues(i), 0.0) - z);
    Eigen::MatrixXcd R;
    R.noalias() = scaled * sd.eigenvectors.adjoint();

    double worst = 0.0;
    for (const Site& xs : sites)
        for (const Site& ys : sites)
            worst = std::max(worst, block_spectral_norm(site_block(R, w, xs, ys)) *
                                        std::exp(alpha * double(w.torus_l1(xs, ys))));
    return make_check("resolvent_decay",
                      fmt_params("z=%g%+gi,alpha=%g,nu=%g,n=%d", z.real(), z.imag(), alpha, nu,
                                 w.n()),
                      worst, 1.0 / (dist - S_alpha));
}

std::vector<BoundCheck> default_bound_sweep(std::uint64_t seed) {
    std::vector<BoundCheck> out;
    const double rates[] = {0.1, 0.25, 0.5, 1.0};
    const double radii[] = {5.0, 10.0, 20.0};

    for (double a : rates) {
        const double cutoff = std::max(40.0 / a, 64.0);
        for (double R : radii) {
            auto checks = verify_sum_bounds(a, R, cutoff);
            out.insert(out.end(), checks.begin(), checks.end());
        }
    }

    Prng rng(seed);
    std::vector<std::pair<Site, Site>> samples;
    for (int i = 0; i < 16; ++i) {
        auto coord = [&rng]() {
            return static_cast<std::int64_t>(std::floor(rng.uniform() * 61.0)) - 30;
        };
        samples.push_back({Site{coord(), coord()}, Site{coord(), coord()}});
    }
    for (double beta : rates) {
        auto checks = verify_conv_bound(beta, samples, std::max(40.0 / beta, 64.0));
        out.insert(out.end(), checks.begin(), checks.end());
    }

    const double nu = 0.25;
    auto norms = verify_norm_bounds(build_model(ModelKind::haldane_plus, 0.5), nu, {nu / 2, nu});
    out.insert(out.end(), norms.begin(), norms.end());
    return out;
}

} // namespace chernlab
