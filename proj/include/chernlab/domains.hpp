#pragma once

#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "chernlab/lattice.hpp"

namespace chernlab {

enum class Shape {
    half_plane, // x1 >= 0
    quadrant,   // x1 >= 0 and x2 >= 0
    strip,      // |x2 - c| <= L
    half_strip, // x1 >= 0 and |x2 - c| <= L
    parabola,   // x2 >= x1^2
    full,
    empty,
    custom,
};

/// Shape parameters. L is the strip half-width, c the strip center line;
/// members is the explicit site set for custom domains.
struct DomainParams {
    double L = 0.0;
    double c = 0.0;
    std::vector<Site> members;
};

/// A subset of the lattice given by a membership predicate over plane
/// coordinates. The predicate is exact (no window clipping); windowed
/// operations evaluate it at canonical window sites.
struct Domain {
    std::function<bool(const Site&)> member;
    Shape shape = Shape::custom;
    DomainParams params;
    std::string label;

    bool contains(const Site& s) const { return member(s); }
};

Domain make_domain(Shape shape, const DomainParams& params = {});

/// Parse a CLI-style descriptor: "halfplane", "quadrant", "strip:L=2",
/// "strip:L=2,c=-0.5", "halfstrip:L=3", "parabola", "full", "empty",
/// "custom:FILE". Throws parameter_error on anything else.
Domain parse_domain(const std::string& descriptor);

/// Load a custom domain from a text file of "x1 x2" lines ('#' comments).
Domain load_domain_file(const std::string& path);

/// Two-sided boundary within the window: canonical sites with a 4-neighbor
/// (evaluated unclipped in the plane) on the other side of the membership
/// predicate. Symmetric between a domain and its complement by construction.
std::vector<Site> boundary_sites(const Domain& d, const TorusWindow& w);

struct FillingReport {
    int radius = 0;          // largest r with some ball B_r(c), c in the window, inside the domain
    bool any_ball_fits = false; // false iff not even a single site of the domain lies in the window
    Site witness_center{0, 0};
};

/// Largest l1-ball radius realized inside the domain with the center ranging
/// over the window; capped at the window margin.
FillingReport filling_radius(const Domain& d, const TorusWindow& w);

/// Exact l1 distance (torus metric) from every window site to the two-sided
/// interface of the domain as realized on the window, including the wrap seam
/// of domains unbounded along an axis. Indexed by window cell (site index
/// / 2). A seamless domain (full or empty) gives every site the diameter.
std::vector<int> dist_to_boundary(const Domain& d, const TorusWindow& w);

} // namespace chernlab
