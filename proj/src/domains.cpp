#include "chernlab/domains.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <memory>
#include <sstream>

namespace chernlab {

namespace {

std::string shape_label(Shape s, const DomainParams& p) {
    char buf[96];
    switch (s) {
        case Shape::half_plane: return "halfplane";
        case Shape::quadrant: return "quadrant";
        case Shape::strip:
            std::snprintf(buf, sizeof buf, "strip:L=%g,c=%g", p.L, p.c);
            return buf;
        case Shape::half_strip:
            std::snprintf(buf, sizeof buf, "halfstrip:L=%g,c=%g", p.L, p.c);
            return buf;
        case Shape::parabola: return "parabola";
        case Shape::full: return "full";
        case Shape::empty: return "empty";
        case Shape::custom: return "custom";
    }
    return "unknown";
}

} // namespace

Domain make_domain(Shape shape, const DomainParams& params) {
    Domain d;
    d.shape = shape;
    d.params = params;
    d.label = shape_label(shape, params);
    const double L = params.L;
    const double c = params.c;
    switch (shape) {
        case Shape::half_plane:
            d.member = [](const Site& s) { return s.x1 >= 0; };
            break;
        case Shape::quadrant:
            d.member = [](const Site& s) { return s.x1 >= 0 && s.x2 >= 0; };
            break;
        case Shape::strip:
            if (L < 0) throw parameter_error("make_domain: strip half-width L must be nonnegative");
            d.member = [L, c](const Site& s) { return std::abs(double(s.x2) - c) <= L; };
            break;
        case Shape::half_strip:
            if (L < 0) throw parameter_error("make_domain: strip half-width L must be nonnegative");
            d.member = [L, c](const Site& s) {
                return s.x1 >= 0 && std::abs(double(s.x2) - c) <= L;
            };
            break;
        case Shape::parabola:
            d.member = [](const Site& s) { return s.x2 >= s.x1 * s.x1; };
            break;
        case Shape::full:
            d.member = [](const Site&) { return true; };
            break;
        case Shape::empty:
            d.member = [](const Site&) { return false; };
            break;
        case Shape::custom: {
            auto set = std::make_shared<std::unordered_set<Site>>(params.members.begin(),
                                                                  params.members.end());
            d.member = [set](const Site& s) { return set->count(s) > 0; };
            break;
        }
    }
    return d;
}

Domain parse_domain(const std::string& descriptor) {
    auto colon = descriptor.find(':');
    std::string head = descriptor.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : descriptor.substr(colon + 1);

    if (head == "halfplane") return make_domain(Shape::half_plane);
    if (head == "quadrant") return make_domain(Shape::quadrant);
    if (head == "parabola") return make_domain(Shape::parabola);
    if (head == "full") return make_domain(Shape::full);
    if (head == "empty") return make_domain(Shape::empty);
    if (head == "custom") {
        if (rest.empty()) throw parameter_error("parse_domain: custom needs a file path, e.g. custom:sites.txt");
        return load_domain_file(rest);
    }
    if (head == "strip" || head == "halfstrip") {
        DomainParams p;
        bool have_L = false;
        std::stringstream ss(rest);
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw parameter_error("parse_domain: expected key=value in '" + kv + "'");
            std::string key = kv.substr(0, eq);
            double val;
            try {
                val = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw parameter_error("parse_domain: bad number in '" + kv + "'");
            }
            if (key == "L") { p.L = val; have_L = true; }
            else if (key == "c") p.c = val;
            else throw parameter_error("parse_domain: unknown strip key '" + key + "'");
        }
        if (!have_L) throw parameter_error("parse_domain: " + head + " requires L=..., got '" + descriptor + "'");
        return make_domain(head == "strip" ? Shape::strip : Shape::half_strip, p);
    }
    throw parameter_error("parse_domain: unknown domain descriptor '" + descriptor + "'");
}

Domain load_domain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("load_domain_file: cannot open '" + path + "'");
    DomainParams p;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::int64_t a, b;
        if (ss >> a >> b) {
            std::string extra;
            if (ss >> extra)
                throw io_error("load_domain_file: trailing tokens at " + path + ":" + std::to_string(lineno));
            p.members.push_back({a, b});
        } else if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
            throw io_error("load_domain_file: expected 'x1 x2' at " + path + ":" + std::to_string(lineno));
        }
    }
    Domain d = make_domain(Shape::custom, p);
    d.label = "custom:" + path;
    return d;
}

std::vector<Site> boundary_sites(const Domain& d, const TorusWindow& w) {
    static const Site steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    std::vector<Site> out;
    for (const Site& s : w.sites()) {
        bool in = d.contains(s);
        for (const Site& step : steps) {
            if (d.contains(s + step) != in) {
                out.push_back(s);
                break;
            }
        }
    }
    return out;
}

FillingReport filling_radius(const Domain& d, const TorusWindow& w) {
    FillingReport rep;
    auto centers = w.sites();
    auto fits = [&](const Site& c, int r) {
        for (const Site& s : ball_sites(c, r))
            if (!d.contains(s)) return false;
        return true;
    };
    // Monotone in r, so a binary search over the exists-a-center predicate works.
    int lo = -1, hi = w.margin();
    auto any_fit = [&](int r, Site* witness) {
        for (const Site& c : centers) {
            if (fits(c, r)) {
                if (witness) *witness = c;
                return true;
            }
        }
        return false;
    };
    Site witness{0, 0};
    if (!any_fit(0, &witness)) {
        rep.radius = 0;
        rep.any_ball_fits = false;
        return rep;
    }
    lo = 0;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        Site ws{0, 0};
        if (any_fit(mid, &ws)) {
            lo = mid;
            witness = ws;
        } else {
            hi = mid - 1;
        }
    }
    rep.radius = lo;
    rep.any_ball_fits = true;
    rep.witness_center = witness;
    return rep;
}

std::vector<int> dist_to_boundary(const Domain& d, const TorusWindow& w) {
    const int n = w.n();
    std::vector<int> dist(static_cast<std::size_t>(w.site_count()), w.diameter());
    std::deque<std::int64_t> queue;
    // Source cells are the interface as realized on the window: membership is
    // evaluated at canonical representatives, so a domain unbounded along an
    // axis also contributes its wrap seam. Windowed operators couple across
    // that seam, and this field is what their decay is measured against.
    // (boundary_sites keeps plane semantics for geometry reporting.)
    const std::vector<Site> sites = w.sites();
    static const Site steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const Site& s : sites) {
        const bool inside = d.contains(s);
        bool seam = false;
        for (const Site& st : steps)
            if (d.contains(w.canonical(s + st)) != inside) { seam = true; break; }
        if (!seam) continue;
        std::int64_t cell = w.index(s, Orbital::A) / 2;
        if (dist[cell] != 0) {
            dist[cell] = 0;
            queue.push_back(cell);
        }
    }
    if (queue.empty()) return dist;
    // Multi-source BFS over the 4-neighbor torus graph gives exact l1 distance.
    while (!queue.empty()) {
        std::int64_t cell = queue.front();
        queue.pop_front();
        std::int64_t u1 = cell % n, u2 = cell / n;
        const std::int64_t nb[4] = {
            (u1 + 1) % n + n * u2,
            (u1 + n - 1) % n + n * u2,
            u1 + n * ((u2 + 1) % n),
            u1 + n * ((u2 + n - 1) % n),
        };
        for (std::int64_t v : nb) {
            if (dist[v] > dist[cell] + 1) {
                dist[v] = dist[cell] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

} // namespace chernlab
