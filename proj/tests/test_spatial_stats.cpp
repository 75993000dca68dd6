#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace celltopo;

TEST_CASE("cross_k single pair indicator") {
    // One source at the center, one target at distance 5, area 100.
    const CellLayout l({{5, 5, 0}, {5, 10, 1}}, Rect{0, 0, 10, 10}, {"s", "t"});
    const KFunctionVector k = cross_k(l, 0, 1, RadiusGrid({1.0, 10.0}));
    CHECK(k.values[0] == 0.0);
    CHECK(k.values[1] == 100.0);
    CHECK_FALSE(k.degenerate);
}

TEST_CASE("cross_k same class excludes self pairs") {
    const CellLayout one({{5, 5, 0}}, Rect{0, 0, 10, 10}, {"s"});
    const KFunctionVector k = cross_k(one, 0, 0, RadiusGrid({1.0}));
    CHECK(k.degenerate);
    CHECK(k.values[0] == 0.0);

    // Two points at distance 2: K_0^0(r > 2) = area / (2*1) * 2 = area.
    const CellLayout two({{4, 5, 0}, {6, 5, 0}}, Rect{0, 0, 10, 10}, {"s"});
    const KFunctionVector k2 = cross_k(two, 0, 0, RadiusGrid({1.0, 3.0}));
    CHECK(k2.values[0] == 0.0);
    CHECK(k2.values[1] == 100.0);
}

TEST_CASE("cross_k strict inequality at the tie radius") {
    const CellLayout l({{0, 0, 0}, {3, 0, 1}}, Rect{-1, -1, 4, 4}, {"s", "t"});
    const KFunctionVector k = cross_k(l, 0, 1, RadiusGrid({3.0, 3.0000001}));
    CHECK(k.values[0] == 0.0);  // dist == r does not count
    CHECK(k.values[1] > 0.0);
}

TEST_CASE("cross_k equals counting oracle exactly") {
    Rng rng(101);
    const RadiusGrid radii({0.05, 0.1, 0.2, 0.3, 0.45, 0.6, 0.8, 1.1});
    for (int trial = 0; trial < 30; ++trial) {
        const CellLayout l = oracle::random_layout(rng, 2, 3 + rng.next_index(20),
                                                   Rect{0, 0, 1, 1});
        for (int s = 0; s < 2; ++s) {
            for (int t = 0; t < 2; ++t) {
                const KFunctionVector k = cross_k(l, s, t, radii);
                const std::vector<double> expected = oracle::cross_k_counts(l, s, t, radii);
                for (std::size_t i = 0; i < radii.size(); ++i) {
                    CHECK(k.values[i] == expected[i]);
                }
            }
        }
    }
}

TEST_CASE("cross_k monotone in radius") {
    Rng rng(5);
    const CellLayout l = oracle::random_layout(rng, 3, 50, Rect{0, 0, 2, 3});
    const RadiusGrid radii({0.1, 0.2, 0.4, 0.8, 1.6});
    for (int s = 0; s < 3; ++s) {
        for (int t = 0; t < 3; ++t) {
            const KFunctionVector k = cross_k(l, s, t, radii);
            for (std::size_t i = 1; i < k.values.size(); ++i) {
                CHECK(k.values[i] >= k.values[i - 1]);
            }
        }
    }
}

TEST_CASE("cross_k translation invariance") {
    Rng rng(6);
    const Rect domain{0, 0, 4, 4};
    const CellLayout l = oracle::random_layout(rng, 2, 30, domain);
    std::vector<CellPoint> shifted = l.points();
    for (auto& p : shifted) {
        p.x += 17.5;
        p.y -= 3.25;
    }
    const CellLayout l2(shifted, Rect{17.5, -3.25, 21.5, 0.75}, l.class_names());
    const RadiusGrid radii({0.3, 0.7, 1.5});
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            const auto a = cross_k(l, s, t, radii).values;
            const auto b = cross_k(l2, s, t, radii).values;
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("cross_k symmetric normalization") {
    // |C_s| * K_s^t == |C_t| * K_t^s, both equal area * paircount.
    Rng rng(8);
    const CellLayout l = oracle::random_layout(rng, 2, 41, Rect{0, 0, 5, 5});
    const RadiusGrid radii({0.2, 0.9, 2.0});
    const auto kst = cross_k(l, 0, 1, radii).values;
    const auto kts = cross_k(l, 1, 0, radii).values;
    const double ns = static_cast<double>(l.class_size(0));
    const double nt = static_cast<double>(l.class_size(1));
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CHECK(ns * kst[i] == doctest::Approx(nt * kts[i]).epsilon(1e-12));
    }
}

TEST_CASE("location_k basics") {
    // Target at distance 2 from the query, area 16, |C_t| = 1.
    const CellLayout l({{2, 4, 0}}, Rect{0, 0, 4, 4}, {"t"});
    const KFunctionVector k = location_k(l, 2, 2, 0, RadiusGrid({1.0, 3.0}));
    CHECK(k.values[0] == 0.0);
    CHECK(k.values[1] == 16.0);

    SUBCASE("outside domain is a validation error") {
        CHECK_THROWS_AS(location_k(l, -1, 2, 0, RadiusGrid({1.0})), ValidationError);
    }
    SUBCASE("empty target class is degenerate") {
        const CellLayout e({{2, 4, 0}}, Rect{0, 0, 4, 4}, {"t", "u"});
        const KFunctionVector kd = location_k(e, 2, 2, 1, RadiusGrid({1.0, 3.0}));
        CHECK(kd.degenerate);
        CHECK(kd.values == std::vector<double>{0.0, 0.0});
    }
}

TEST_CASE("location_k equals counting oracle exactly") {
    Rng rng(55);
    const RadiusGrid radii({0.05, 0.12, 0.21, 0.33, 0.5, 0.61, 0.85, 1.2});
    for (int trial = 0; trial < 30; ++trial) {
        const CellLayout l = oracle::random_layout(rng, 2, 10, Rect{0, 0, 1, 1});
        const double x = rng.next_double(), y = rng.next_double();
        for (int t = 0; t < 2; ++t) {
            const auto got = location_k(l, x, y, t, radii).values;
            const auto expected = oracle::location_k_counts(l, x, y, t, radii);
            for (std::size_t i = 0; i < radii.size(); ++i) CHECK(got[i] == expected[i]);
        }
    }
}

TEST_CASE("multiscale_density kernel at zero distance") {
    const CellLayout l({{2, 2, 0}}, Rect{0, 0, 4, 4}, {"a"});
    const DensityVector d = multiscale_density(l, 2, 2, kAllClasses, BandwidthSet({1.0}));
    CHECK(d.values[0] == doctest::Approx(1.0 / (2.0 * 3.14159265358979324)).epsilon(1e-12));
}

TEST_CASE("multiscale_density empty set is zero") {
    const CellLayout l({}, Rect{0, 0, 4, 4}, {"a"});
    const DensityVector d = multiscale_density(l, 2, 2, kAllClasses, BandwidthSet({1.0, 2.0}));
    CHECK(d.values == std::vector<double>{0.0, 0.0});
}

TEST_CASE("multiscale_density equals summation oracle") {
    Rng rng(77);
    const BandwidthSet sigmas({1.0, 2.0, 4.0});
    const CellLayout l = oracle::random_layout(rng, 2, 5, Rect{0, 0, 8, 8});
    const double x = 3.3, y = 4.4;
    for (const int target : {kAllClasses, 0, 1}) {
        const auto got = multiscale_density(l, x, y, target, sigmas).values;
        const auto expected = oracle::density_sum(l, x, y, target, sigmas);
        for (std::size_t i = 0; i < sigmas.size(); ++i) {
            CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("multiscale_density approaches count/(2 pi sigma^2) for huge sigma") {
    Rng rng(9);
    const CellLayout l = oracle::random_layout(rng, 1, 25, Rect{0, 0, 2, 2});
    const double sigma = 200.0;  // far beyond the domain diameter
    const auto d = multiscale_density(l, 1.0, 1.0, kAllClasses, BandwidthSet({sigma}));
    const double limit =
        static_cast<double>(l.size()) / (2.0 * 3.14159265358979324 * sigma * sigma);
    CHECK(d.values[0] == doctest::Approx(limit).epsilon(0.01));
}

TEST_CASE("k_distance") {
    KFunctionVector a, b;
    a.values = {0, 3, 4};
    b.values = {0, 0, 0};
    CHECK(k_distance(a, b) == doctest::Approx(5.0));
    CHECK(k_distance(a, a) == 0.0);

    b.values = {0, 0};
    CHECK_THROWS_AS(k_distance(a, b), ValidationError);

    Rng rng(12);
    std::vector<double> u, v;
    double sq = 0.0;
    for (int i = 0; i < 16; ++i) {
        u.push_back(rng.next_double());
        v.push_back(rng.next_double());
        sq += (u[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)]) *
              (u[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)]);
    }
    CHECK(k_distance(std::span<const double>(u), std::span<const double>(v)) ==
          doctest::Approx(std::sqrt(sq)).epsilon(1e-12));
}
