#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "chernlab/errors.hpp"

namespace chernlab {

/// A point of the square lattice in plane coordinates.
struct Site {
    std::int64_t x1 = 0;
    std::int64_t x2 = 0;

    friend bool operator==(const Site& a, const Site& b) = default;
    friend auto operator<=>(const Site& a, const Site& b) = default;
    friend Site operator+(const Site& a, const Site& b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
    friend Site operator-(const Site& a, const Site& b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
};

enum class Orbital : int { A = 0, B = 1 };

/// l1 (taxicab) distance in the plane.
inline std::int64_t l1_distance(const Site& a, const Site& b) {
    auto d1 = a.x1 - b.x1;
    auto d2 = a.x2 - b.x2;
    return (d1 < 0 ? -d1 : d1) + (d2 < 0 ? -d2 : d2);
}

inline std::int64_t l1_norm(const Site& a) { return l1_distance(a, Site{0, 0}); }

inline std::int64_t linf_norm(const Site& a) {
    auto d1 = a.x1 < 0 ? -a.x1 : a.x1;
    auto d2 = a.x2 < 0 ? -a.x2 : a.x2;
    return d1 > d2 ? d1 : d2;
}

/// All sites within l1 distance r of center, row-major order.
/// Throws parameter_error for negative r.
std::vector<Site> ball_sites(const Site& center, std::int64_t r);

/// An n-by-n periodified window of the lattice, two orbitals per site.
///
/// Relative coordinates wrap into [-floor(n/2), ceil(n/2)-1] per axis. Storage
/// order interleaves orbitals fastest: index = orbital + 2*(u1 + n*u2) with
/// u_i the representative of x_i - origin_i in [0, n).
class TorusWindow {
  public:
    TorusWindow(int n, Site origin = {0, 0});

    int n() const { return n_; }
    const Site& origin() const { return origin_; }
    std::int64_t site_count() const { return std::int64_t(n_) * n_; }
    std::int64_t dim() const { return 2 * site_count(); }

    /// Largest radius r such that a ball B_r fits in the window without
    /// self-overlap under wrapping.
    int margin() const { return (n_ - 1) / 2; }

    /// Torus l1 diameter surrogate used when a distance is undefined
    /// (e.g. distance to an empty boundary).
    int diameter() const { return n_; }

    /// Wrap a relative displacement componentwise into the window range.
    Site wrap_rel(const Site& rel) const;

    /// The window representative of an absolute site (origin + wrapped offset).
    Site canonical(const Site& s) const { return origin_ + wrap_rel(s - origin_); }

    std::int64_t index(const Site& s, Orbital orb) const;
    Site site_of_index(std::int64_t idx) const;
    Orbital orbital_of_index(std::int64_t idx) const {
        return static_cast<Orbital>(idx & 1);
    }

    /// l1 distance on the torus: minimum over wrapped representatives.
    std::int64_t torus_l1(const Site& a, const Site& b) const;

    /// All window sites in storage order (canonical representatives).
    std::vector<Site> sites() const;

  private:
    int n_;
    Site origin_;
    std::int64_t hmod(std::int64_t v) const; // representative in [0, n)
};

} // namespace chernlab

template <> struct std::hash<chernlab::Site> {
    std::size_t operator()(const chernlab::Site& s) const noexcept {
        std::uint64_t a = static_cast<std::uint64_t>(s.x1);
        std::uint64_t b = static_cast<std::uint64_t>(s.x2);
        std::uint64_t h = a * 0x9e3779b97f4a7c15ULL;
        h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};
