#include <doctest.h>

#include <algorithm>
#include <set>

#include "chernlab/lattice.hpp"
#include "chernlab/prng.hpp"

using namespace chernlab;

TEST_CASE("l1_distance_matches_hand_values") {
    CHECK(l1_distance({0, 0}, {0, 0}) == 0);
    CHECK(l1_distance({0, 0}, {1, 0}) == 1);
    CHECK(l1_distance({0, 0}, {1, -1}) == 2);
    CHECK(l1_distance({-3, 4}, {2, -1}) == 10);
    CHECK(l1_norm({-3, 4}) == 7);
    CHECK(linf_norm({-3, 4}) == 4);
    CHECK(linf_norm({2, -1}) == 2);
}

TEST_CASE("l1_metric_properties_on_random_triples") {
    Prng rng(20);
    auto random_site = [&rng]() {
        return Site{static_cast<std::int64_t>(rng.uniform() * 200) - 100,
                    static_cast<std::int64_t>(rng.uniform() * 200) - 100};
    };
    for (int t = 0; t < 200; ++t) {
        const Site a = random_site(), b = random_site(), c = random_site();
        CHECK(l1_distance(a, b) == l1_distance(b, a));
        CHECK(l1_distance(a, b) >= 0);
        CHECK((l1_distance(a, b) == 0) == (a == b));
        CHECK(l1_distance(a, c) <= l1_distance(a, b) + l1_distance(b, c));
        CHECK(l1_distance(a + c, b + c) == l1_distance(a, b));
    }
}

TEST_CASE("ball_site_counts_follow_the_diamond_formula") {
    for (std::int64_t r = 0; r <= 50; ++r) {
        const auto ball = ball_sites({3, -2}, r);
        CHECK(static_cast<std::int64_t>(ball.size()) == 2 * r * r + 2 * r + 1);
        for (const Site& s : ball) CHECK(l1_distance(s, {3, -2}) <= r);
        std::set<std::pair<std::int64_t, std::int64_t>> uniq;
        for (const Site& s : ball) uniq.emplace(s.x1, s.x2);
        CHECK(uniq.size() == ball.size());
    }
    CHECK_THROWS_AS(ball_sites({0, 0}, -1), parameter_error);
}

TEST_CASE("window_wrap_hits_the_documented_range") {
    TorusWindow w(8);
    CHECK(w.wrap_rel({0, 0}) == Site{0, 0});
    CHECK(w.wrap_rel({4, 0}) == Site{-4, 0});
    CHECK(w.wrap_rel({-5, 0}) == Site{3, 0});
    CHECK(w.wrap_rel({3, -4}) == Site{3, -4});
    CHECK(w.wrap_rel({11, 9}) == Site{3, 1});
    for (std::int64_t v = -20; v <= 20; ++v) {
        const Site r = w.wrap_rel({v, v});
        CHECK(r.x1 >= -4);
        CHECK(r.x1 <= 3);
        CHECK((v - r.x1) % 8 == 0);
    }
}

TEST_CASE("window_rejects_out_of_range_sizes") {
    CHECK_THROWS_AS(TorusWindow(4), parameter_error);
    CHECK_THROWS_AS(TorusWindow(129), parameter_error);
    CHECK_NOTHROW(TorusWindow(5));
    CHECK_NOTHROW(TorusWindow(128));
}

TEST_CASE("index_and_site_of_index_are_inverse") {
    TorusWindow w(7, {2, -3});
    CHECK(w.dim() == 98);
    std::set<std::int64_t> seen;
    for (const Site& s : w.sites()) {
        for (Orbital orb : {Orbital::A, Orbital::B}) {
            const auto idx = w.index(s, orb);
            CHECK(idx >= 0);
            CHECK(idx < w.dim());
            CHECK(w.site_of_index(idx) == s);
            CHECK(w.orbital_of_index(idx) == orb);
            seen.insert(idx);
        }
    }
    CHECK(static_cast<std::int64_t>(seen.size()) == w.dim());
    // aliased coordinates map to the same slot
    CHECK(w.index({0, 0}, Orbital::A) == w.index({7, 7}, Orbital::A));
    CHECK(w.index({0, 0}, Orbital::B) == w.index({-7, 14}, Orbital::B));
}

TEST_CASE("storage_order_interleaves_orbitals_fastest") {
    TorusWindow w(5);
    CHECK(w.index({0, 0}, Orbital::A) == 0);
    CHECK(w.index({0, 0}, Orbital::B) == 1);
    CHECK(w.index({1, 0}, Orbital::A) == 2);
    CHECK(w.index({0, 1}, Orbital::A) == 10);
    const auto sites = w.sites();
    REQUIRE(sites.size() == 25);
    for (std::size_t i = 0; i < sites.size(); ++i)
        CHECK(w.index(sites[i], Orbital::A) == static_cast<std::int64_t>(2 * i));
}

TEST_CASE("torus_distance_is_a_metric_below_the_plane_distance") {
    TorusWindow w(9);
    Prng rng(21);
    auto random_site = [&rng]() {
        return Site{static_cast<std::int64_t>(rng.uniform() * 40) - 20,
                    static_cast<std::int64_t>(rng.uniform() * 40) - 20};
    };
    CHECK(w.torus_l1({0, 0}, {8, 0}) == 1);
    CHECK(w.torus_l1({0, 0}, {4, 4}) == 8);
    CHECK(w.torus_l1({0, 0}, {5, 0}) == 4);
    for (int t = 0; t < 200; ++t) {
        const Site a = random_site(), b = random_site(), c = random_site();
        CHECK(w.torus_l1(a, b) <= l1_distance(a, b));
        CHECK(w.torus_l1(a, b) == w.torus_l1(b, a));
        CHECK(w.torus_l1(a, c) <= w.torus_l1(a, b) + w.torus_l1(b, c));
        CHECK(w.torus_l1(a, b) <= 2 * w.margin() + 2);
    }
}

TEST_CASE("margin_ball_fits_without_self_overlap") {
    for (int n : {5, 6, 9, 12}) {
        TorusWindow w(n);
        const auto ball = ball_sites({0, 0}, w.margin());
        std::set<std::pair<std::int64_t, std::int64_t>> wrapped;
        for (const Site& s : ball) {
            const Site c = w.canonical(s);
            wrapped.emplace(c.x1, c.x2);
        }
        CHECK(wrapped.size() == ball.size());
    }
}
