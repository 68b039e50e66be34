#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "chernlab/bounds.hpp"
#include "chernlab/prng.hpp"
#include "chernlab/spectral.hpp"

using namespace chernlab;

namespace {

constexpr cplx I{0.0, 1.0};

double coth(double a) { return std::cosh(a) / std::sinh(a); }

/// Brute-force double-lattice sum with seven exponents, boxed at +-box.
double brute_conv_plane(double b, Site x, Site w, std::int64_t box) {
    double total = 0.0;
    for (std::int64_t y1 = -box; y1 <= box; ++y1)
        for (std::int64_t y2 = -box; y2 <= box; ++y2)
            for (std::int64_t z1 = -box; z1 <= box; ++z1)
                for (std::int64_t z2 = -box; z2 <= box; ++z2) {
                    const double e = std::abs(double(x.x1 - y1)) + std::abs(double(x.x2 - y2)) +
                                     std::abs(double(y2 - z2)) + std::abs(double(y1)) +
                                     std::abs(double(z1)) + std::abs(double(z1 - w.x1)) +
                                     std::abs(double(z2)) + std::abs(double(w.x2));
                    total += std::exp(-2.0 * b * e);
                }
    return total;
}

const BoundCheck& find_check(const std::vector<BoundCheck>& checks, const std::string& name) {
    for (const BoundCheck& c : checks)
        if (c.name == name) return c;
    REQUIRE(false);
    return checks.front();
}

} // namespace

TEST_CASE("geometric_line_sums_match_the_hyperbolic_cotangent") {
    const auto at1 = verify_sum_bounds(1.0, 5.0, 64.0);
    const BoundCheck& line1 = find_check(at1, "line_sum");
    CHECK(line1.lhs == doctest::Approx(coth(1.0)).epsilon(1e-12));
    CHECK(line1.rhs == 2.0);
    CHECK(line1.pass);
    const BoundCheck& plane1 = find_check(at1, "plane_sum");
    CHECK(plane1.lhs == doctest::Approx(coth(1.0) * coth(1.0)).epsilon(1e-12));
    CHECK(plane1.rhs == 4.0);
    CHECK(plane1.pass);

    const auto at01 = verify_sum_bounds(0.1, 5.0, 400.0);
    const BoundCheck& line01 = find_check(at01, "line_sum");
    CHECK(line01.lhs == doctest::Approx(coth(0.1)).epsilon(1e-12));
    CHECK(line01.rhs == 20.0);
    CHECK(line01.pass);

    CHECK_THROWS_AS(verify_sum_bounds(0.0, 5.0, 400.0), parameter_error);
    CHECK_THROWS_AS(verify_sum_bounds(1.0, 0.5, 64.0), parameter_error);
    CHECK_THROWS_AS(verify_sum_bounds(1.0, 5.0, 30.0), precision_error);
}

TEST_CASE("plane_tail_respects_its_exponential_envelope") {
    const auto checks = verify_sum_bounds(0.5, 10.0, 80.0);
    const BoundCheck& tail = find_check(checks, "plane_tail");

    double oracle = 0.0;
    const double q = std::exp(-1.0);
    for (std::int64_t r = 10; r <= 4000; ++r) oracle += 4.0 * double(r) * std::pow(q, double(r));
    CHECK(tail.lhs == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(tail.rhs == doctest::Approx(32.0 * std::exp(-5.0)).epsilon(1e-12));
    CHECK(tail.pass);
}

TEST_CASE("check_comparisons_switch_to_log_space_for_deep_tails") {
    CHECK(make_check("t", "", 1.0, 1.0).pass);
    CHECK_FALSE(make_check("t", "", 1.0 + 1e-6, 1.0).pass);
    CHECK(make_check("t", "", 1e-30, 2e-30).pass);
    CHECK_FALSE(make_check("t", "", 2e-30, 1e-30).pass);

    const BoundCheck logc = make_check_log("t", "", -200.0, -199.0);
    CHECK(logc.pass);
    CHECK(logc.ratio() == doctest::Approx(std::exp(-1.0)));
    CHECK_FALSE(make_check_log("t", "", -199.0, -200.0).pass);
}

TEST_CASE("stencil_norm_chain_holds_for_the_chiral_model") {
    const double nu = 0.25;
    const auto checks =
        verify_norm_bounds(build_model(ModelKind::haldane_plus, 0.5), nu, {nu / 2.0, nu});
    CHECK(checks.size() == 5);
    for (const BoundCheck& c : checks) CHECK(c.pass);

    const BoundCheck& norm = find_check(checks, "operator_norm");
    CHECK(norm.lhs > 3.0);
    CHECK(norm.lhs < 4.5);
    CHECK(norm.rhs == doctest::Approx(256.0));

    for (const BoundCheck& c : checks)
        if (c.name == "hop_sum_cap") CHECK(c.rhs == doctest::Approx(4096.0));

    CHECK_THROWS_AS(
        verify_norm_bounds(scale_stencil(build_model(ModelKind::wallace_h0, 0.0), 10.0), nu, {nu}),
        precondition_error);
}

TEST_CASE("convolution_envelope_matches_a_brute_force_sum") {
    const double beta = 1.0;
    const std::vector<std::pair<Site, Site>> origin = {{{0, 0}, {0, 0}}};
    const auto checks = verify_conv_bound(beta, origin, 64.0);
    CHECK(checks.size() == 2);

    const BoundCheck& plane = find_check(checks, "conv_plane");
    const double brute = brute_conv_plane(beta, {0, 0}, {0, 0}, 12);
    CHECK(std::exp(plane.log_lhs) == doctest::Approx(brute).epsilon(1e-9));
    CHECK(std::exp(plane.log_rhs) == doctest::Approx(256.0).epsilon(1e-12));
    CHECK(plane.pass);

    const BoundCheck& line = find_check(checks, "conv_line");
    CHECK(line.lhs == doctest::Approx(coth(2.0)).epsilon(1e-12));
    CHECK(line.rhs == doctest::Approx(4.0));
    CHECK(line.pass);

    CHECK_THROWS_AS(verify_conv_bound(0.0, origin, 64.0), parameter_error);
    CHECK_THROWS_AS(verify_conv_bound(1.0, origin, 30.0), precision_error);
}

TEST_CASE("far_apart_convolution_samples_pass_through_the_log_path") {
    const std::vector<std::pair<Site, Site>> far = {{{30, 30}, {-30, -30}}};
    const auto checks = verify_conv_bound(1.0, far, 64.0);
    const BoundCheck& plane = find_check(checks, "conv_plane");
    CHECK(plane.lhs < 1e-18);
    CHECK(plane.rhs < 1e-18);
    CHECK(plane.pass);
    CHECK(plane.ratio() <= 1.0 + 1e-9);
}

TEST_CASE("resolvent_envelope_certifies_measured_decay") {
    TorusWindow w8(8);
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(w8.dim(), w8.dim());
    Prng rng(11);
    for (Eigen::Index i = 0; i < w8.dim(); ++i) D(i, i) = rng.uniform() - 0.5;
    const BoundCheck diag = verify_resolvent_bound(D, w8, I, 0.4, 0.25);
    CHECK(diag.pass);
    CHECK(diag.rhs <= 1.0 + 1e-12); // dist(i, reals) >= 1 and no hopping

    const int n = 16;
    TorusWindow w(n);
    const Eigen::MatrixXcd H = assemble(build_model(ModelKind::haldane_plus, 0.5), w);

    const BoundCheck mid = verify_resolvent_bound(H, w, cplx(0.0, 0.0), 0.05, 0.25);
    CHECK(mid.pass);
    CHECK(mid.rhs > 1.0);

    const BoundCheck edge = verify_resolvent_bound(H, w, cplx(0.9, 0.0), 0.01, 0.25);
    CHECK(edge.pass);

    CHECK_THROWS_AS(verify_resolvent_bound(H, w, cplx(0.999, 0.0), 0.01, 0.25), hypothesis_error);
    CHECK_THROWS_AS(verify_resolvent_bound(H, w, I, 0.5, 0.25), parameter_error);
    CHECK_THROWS_AS(verify_resolvent_bound(H, w, I, 0.0, 0.25), parameter_error);
    CHECK_THROWS_AS(verify_resolvent_bound(D, w, I, 0.1, 0.25), parameter_error);
}

TEST_CASE("default_sweep_passes_everywhere_and_is_deterministic") {
    const auto sweep = default_bound_sweep();
    CHECK(sweep.size() == 169);
    for (const BoundCheck& c : sweep) {
        CHECK(c.pass);
        CHECK_FALSE(c.name.empty());
        CHECK_FALSE(c.params.empty());
    }
    const auto again = default_bound_sweep();
    REQUIRE(again.size() == sweep.size());
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        CHECK(again[i].lhs == sweep[i].lhs);
        CHECK(again[i].params == sweep[i].params);
    }
}
