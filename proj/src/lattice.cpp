#include "chernlab/lattice.hpp"

#include <string>

namespace chernlab {

std::vector<Site> ball_sites(const Site& center, std::int64_t r) {
    if (r < 0) throw parameter_error("ball_sites: radius must be nonnegative, got " + std::to_string(r));
    std::vector<Site> out;
    out.reserve(static_cast<std::size_t>(2 * r * r + 2 * r + 1));
    for (std::int64_t d2 = -r; d2 <= r; ++d2) {
        std::int64_t span = r - (d2 < 0 ? -d2 : d2);
        for (std::int64_t d1 = -span; d1 <= span; ++d1)
            out.push_back({center.x1 + d1, center.x2 + d2});
    }
    return out;
}

TorusWindow::TorusWindow(int n, Site origin) : n_(n), origin_(origin) {
    if (n < 5) throw parameter_error("TorusWindow: n must be at least 5, got " + std::to_string(n));
    if (n > 128) throw parameter_error("TorusWindow: n must be at most 128, got " + std::to_string(n));
}

std::int64_t TorusWindow::hmod(std::int64_t v) const {
    std::int64_t m = v % n_;
    return m < 0 ? m + n_ : m;
}

Site TorusWindow::wrap_rel(const Site& rel) const {
    std::int64_t half = n_ / 2;
    return {hmod(rel.x1 + half) - half, hmod(rel.x2 + half) - half};
}

std::int64_t TorusWindow::index(const Site& s, Orbital orb) const {
    std::int64_t u1 = hmod(s.x1 - origin_.x1);
    std::int64_t u2 = hmod(s.x2 - origin_.x2);
    return static_cast<std::int64_t>(orb) + 2 * (u1 + n_ * u2);
}

Site TorusWindow::site_of_index(std::int64_t idx) const {
    std::int64_t cell = idx / 2;
    std::int64_t u1 = cell % n_;
    std::int64_t u2 = cell / n_;
    std::int64_t half = n_ / 2;
    return {origin_.x1 + hmod(u1 + half) - half, origin_.x2 + hmod(u2 + half) - half};
}

std::int64_t TorusWindow::torus_l1(const Site& a, const Site& b) const {
    Site w = wrap_rel(a - b);
    std::int64_t d1 = w.x1 < 0 ? -w.x1 : w.x1;
    std::int64_t d2 = w.x2 < 0 ? -w.x2 : w.x2;
    if (n_ - d1 < d1) d1 = n_ - d1;
    if (n_ - d2 < d2) d2 = n_ - d2;
    return d1 + d2;
}

std::vector<Site> TorusWindow::sites() const {
    std::vector<Site> out;
    out.reserve(static_cast<std::size_t>(site_count()));
    for (std::int64_t i = 0; i < dim(); i += 2) out.push_back(site_of_index(i));
    return out;
}

} // namespace chernlab
