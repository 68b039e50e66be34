#include <doctest.h>

#include <cmath>
#include <vector>

#include "chernlab/conductance.hpp"
#include "chernlab/spectral.hpp"

using namespace chernlab;

namespace {

Eigen::MatrixXcd torus_model(ModelKind kind, double s, int n) {
    return assemble(build_model(kind, s), TorusWindow(n));
}

Eigen::MatrixXcd lower_band_projector(ModelKind kind, double s, int n) {
    return spectral_projector(eig_hermitian(torus_model(kind, s, n)), 0.0).matrix;
}

} // namespace

TEST_CASE("zero_and_identity_projectors_carry_no_conductance") {
    TorusWindow w(12);
    const SwitchPair sw{{0, 0}};
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(w.dim(), w.dim());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(w.dim(), w.dim());

    const ConductanceReport rz = sigma_realspace(zero, w, sw, 3);
    CHECK(rz.sigma == 0.0);
    CHECK(rz.sigma_rounded == 0);
    CHECK(rz.rounding_defect == 0.0);
    CHECK(sigma_realspace(id, w, sw, 3).sigma == 0.0);

    // The patch is a half-integer-centered l1 ball: 2R(R+1) sites.
    CHECK(rz.patch_sites == 24);
    CHECK(sigma_realspace(zero, w, sw, 2).patch_sites == 12);

    CHECK_THROWS_AS(sigma_realspace(zero, w, sw, 0), parameter_error);
    CHECK_THROWS_AS(sigma_realspace(zero, w, sw, 4), geometry_error);
    CHECK_THROWS_AS(sigma_realspace(Eigen::MatrixXcd::Zero(4, 4), w, sw, 2), parameter_error);
}

TEST_CASE("chiral_models_quantize_at_minus_and_plus_one") {
    const int n = 24;
    TorusWindow w(n);
    const SwitchPair sw{{0, 0}};

    const ConductanceReport plus =
        sigma_realspace(lower_band_projector(ModelKind::haldane_plus, 0.5, n), w, sw, 6);
    CHECK(plus.sigma == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(plus.sigma_rounded == -1);
    CHECK(plus.rounding_defect == doctest::Approx(std::abs(plus.sigma + 1.0)));

    const ConductanceReport minus =
        sigma_realspace(lower_band_projector(ModelKind::haldane_minus, 0.5, n), w, sw, 6);
    CHECK(minus.sigma == doctest::Approx(1.0).epsilon(0.05));
    CHECK(minus.sigma_rounded == 1);

    CHECK(chern_fhs(make_symbol(ModelKind::haldane_plus, 0.5), 64) == plus.sigma_rounded);
    CHECK(chern_fhs(make_symbol(ModelKind::haldane_minus, 0.5), 64) == minus.sigma_rounded);
}

TEST_CASE("finer_truncation_tightens_quantization") {
    const int n = 36;
    TorusWindow w(n);
    const ConductanceReport rep =
        sigma_realspace(lower_band_projector(ModelKind::haldane_plus, 0.5, n), w,
                        SwitchPair{{0, 0}}, 9);
    CHECK(rep.sigma_rounded == -1);
    CHECK(rep.rounding_defect <= 0.01);
}

TEST_CASE("swapping_the_switches_negates_the_trace") {
    const int n = 16;
    TorusWindow w(n);
    const Eigen::MatrixXcd P = lower_band_projector(ModelKind::haldane_plus, 0.5, n);
    const SwitchPair sw{{0, 0}};
    const ConductanceReport fwd = sigma_realspace(P, w, sw, 4, false);
    const ConductanceReport rev = sigma_realspace(P, w, sw, 4, true);
    CHECK(std::abs(fwd.sigma + rev.sigma) <= 1e-10);
    CHECK(fwd.sigma != 0.0);
}

TEST_CASE("chern_numbers_match_conductance_signs_and_are_grid_stable") {
    for (double s : {0.1, 0.5, 1.0}) {
        CHECK(chern_fhs(make_symbol(ModelKind::haldane_plus, s), 64) == -1);
        CHECK(chern_fhs(make_symbol(ModelKind::haldane_minus, s), 64) == 1);
    }
    for (int grid : {32, 64, 128})
        CHECK(chern_fhs(make_symbol(ModelKind::haldane_plus, 0.5), grid) == -1);

    // A momentum-independent symbol has flat bands and no curvature.
    auto flat = [](double, double) {
        Eigen::Matrix2cd m;
        m << 1.0, 0.0, 0.0, -1.0;
        return m;
    };
    CHECK(chern_fhs(flat, 32) == 0);

    auto degenerate = [](double, double) { return Eigen::Matrix2cd::Zero().eval(); };
    CHECK_THROWS_AS(chern_fhs(degenerate, 16), singularity_error);
    CHECK_THROWS_AS(chern_fhs(make_symbol(ModelKind::haldane_plus, 0.5), 2), parameter_error);
}

TEST_CASE("conductance_is_independent_of_the_switch_corner") {
    const int n = 24;
    TorusWindow w(n);
    const Eigen::MatrixXcd P = lower_band_projector(ModelKind::haldane_plus, 0.5, n);
    const std::vector<Site> corners = {{0, 0}, {2, -1}, {-3, 3}};
    const TranslationReport rep = translation_invariance_check(P, w, corners, 6);
    CHECK(rep.sigmas.size() == 3);
    for (const auto& [corner, sigma] : rep.sigmas)
        CHECK(sigma == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(rep.max_deviation <= 1e-10);

    CHECK_THROWS_AS(translation_invariance_check(P, w, {{0, 0}, {4, 0}}, 6), precondition_error);
    CHECK_THROWS_AS(translation_invariance_check(P, w, {{0, 0}}, 6), parameter_error);
}

TEST_CASE("trilinear_bound_certifies_small_switch_traces") {
    const int n = 12;
    TorusWindow w(n);
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(w.dim(), w.dim());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(w.dim(), w.dim());

    const TrilinearReport triv = trilinear_trace_bound(zero, zero, zero, w, 1.0, 0.5, 2, 0.0);
    CHECK(triv.lhs == 0.0);
    CHECK(triv.small_factor == 0);
    CHECK(triv.pass);

    // No factor is small on the ball when all three are the identity.
    CHECK_THROWS_AS(trilinear_trace_bound(id, id, id, w, 1.0, 0.5, 2, 0.0), precondition_error);

    // A unit entry at torus distance 10 breaks the decay hypothesis.
    Eigen::MatrixXcd far = zero;
    far(w.index({5, 0}, Orbital::A), w.index({-5, 0}, Orbital::A)) = 1.0;
    CHECK_THROWS_AS(trilinear_trace_bound(far, zero, zero, w, 1.0, 0.5, 2, 0.0),
                    precondition_error);

    CHECK_THROWS_AS(trilinear_trace_bound(zero, zero, zero, w, 0.0, 0.5, 2, 0.0), parameter_error);
    CHECK_THROWS_AS(trilinear_trace_bound(zero, zero, zero, w, 1.0, 0.0, 2, 0.0), parameter_error);
    CHECK_THROWS_AS(trilinear_trace_bound(zero, zero, zero, w, 1.0, 0.5, 0, 0.0), parameter_error);
    CHECK_THROWS_AS(trilinear_trace_bound(zero, zero, zero, w, 1.0, 0.5, 2, -1.0), parameter_error);
    CHECK_THROWS_AS(trilinear_trace_bound(zero, zero, zero, w, 1.0, 0.5, 3, 0.0), geometry_error);

    // Projector factors with one globally rescaled copy: the scan finds the
    // scaled factor and the trace shrinks with the same factor.
    const Eigen::MatrixXcd P = lower_band_projector(ModelKind::haldane_plus, 0.5, n);
    const TrilinearReport rep =
        trilinear_trace_bound(P, P, 1e-6 * P, w, 2.0, 0.05, 2, 1e-6);
    CHECK(rep.small_factor == 2);
    CHECK(rep.lhs <= 1e-6);
    CHECK(rep.pass);
}

TEST_CASE("conductance_ignores_far_away_perturbations") {
    const int n = 24;
    TorusWindow w(n);
    const Eigen::MatrixXcd H1 = torus_model(ModelKind::haldane_plus, 0.5, n);

    // Staggered on-site mass, supported outside the ball of radius 8 about
    // the switch corner.
    Eigen::MatrixXcd H2 = H1;
    for (const Site& x : w.sites()) {
        if (w.torus_l1(x, {0, 0}) <= 8) continue;
        H2(w.index(x, Orbital::A), w.index(x, Orbital::A)) += 0.3;
        H2(w.index(x, Orbital::B), w.index(x, Orbital::B)) -= 0.3;
    }

    const SpectralData sd1 = eig_hermitian(H1);
    const SpectralData sd2 = eig_hermitian(H2);
    const double gap = std::min(gap_at(sd1, 0.0), gap_at(sd2, 0.0));
    REQUIRE(gap > 0.5);

    const SwitchPair sw{{0, 0}};
    const double s1 = sigma_realspace(spectral_projector(sd1, 0.0).matrix, w, sw, 6).sigma;
    const double s2 = sigma_realspace(spectral_projector(sd2, 0.0).matrix, w, sw, 6).sigma;
    CHECK(std::abs(s1 - s2) <= 0.05);

    const ProjectorComparison cmp = compare_projectors(H1, H2, w, 0.0, 0.9 * gap, 0.25, 2);
    CHECK(cmp.eps_measured == 0.0);
    CHECK(cmp.max_diff <= 1e-3);
    CHECK(cmp.hypotheses_ok);
    CHECK(cmp.pass);
}
