#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace celltopo;

namespace {

SynthesisConfig small_config(const Rect& domain) {
    DefaultsSpec d;
    d.steps = 40;
    SynthesisConfig c = SynthesisConfig::from_defaults(d, domain);
    return c;
}

}  // namespace

TEST_CASE("init_layout mesh placement") {
    SUBCASE("four points form the 2x2 partition centers") {
        const CellLayout ref({{1, 1, 0}, {2, 1, 0}, {1, 2, 0}, {2, 2, 0}}, Rect{0, 0, 4, 4},
                             {"a"});
        const CellLayout init = init_layout(ref, 0.0, 7);
        REQUIRE(init.size() == 4);
        // Normalized (-0.5,-0.5),(0.5,-0.5),(-0.5,0.5),(0.5,0.5) map to
        // (1,1),(3,1),(1,3),(3,3) in the 4x4 domain.
        CHECK(init.points()[0].x == doctest::Approx(1.0));
        CHECK(init.points()[0].y == doctest::Approx(1.0));
        CHECK(init.points()[1].x == doctest::Approx(3.0));
        CHECK(init.points()[1].y == doctest::Approx(1.0));
        CHECK(init.points()[2].x == doctest::Approx(1.0));
        CHECK(init.points()[2].y == doctest::Approx(3.0));
        CHECK(init.points()[3].x == doctest::Approx(3.0));
    }
    SUBCASE("zero jitter is deterministic regardless of seed") {
        const CellLayout ref({{1, 1, 0}, {2, 1, 0}, {1, 2, 0}}, Rect{0, 0, 4, 4}, {"a"});
        const CellLayout a = init_layout(ref, 0.0, 1);
        const CellLayout b = init_layout(ref, 0.0, 2);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a.points()[i].x == b.points()[i].x);
            CHECK(a.points()[i].y == b.points()[i].y);
        }
    }
    SUBCASE("per-class counts are preserved") {
        Rng rng(3);
        std::vector<CellPoint> pts;
        for (int i = 0; i < 3; ++i) pts.push_back({rng.next_double(), rng.next_double(), 0});
        for (int i = 0; i < 5; ++i) pts.push_back({rng.next_double(), rng.next_double(), 1});
        const CellLayout ref(pts, Rect{0, 0, 1, 1}, {"a", "b"});
        const CellLayout init = init_layout(ref, 0.05, 11);
        CHECK(init.class_size(0) == 3);
        CHECK(init.class_size(1) == 5);
        for (const auto& p : init.points()) CHECK(ref.domain().contains(p.x, p.y));
    }
    SUBCASE("empty reference is a validation error") {
        const CellLayout ref({}, Rect{0, 0, 1, 1}, {"a"});
        CHECK_THROWS_AS(init_layout(ref, 0.0, 1), ValidationError);
    }
}

TEST_CASE("config validation") {
    SynthesisConfig c = small_config(Rect{0, 0, 1, 1});
    CHECK_NOTHROW(c.validate());
    SynthesisConfig bad = c;
    bad.steps = 0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = c;
    bad.t0 = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = c;
    bad.decay = 1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = c;
    bad.lambda_cc = 0.0;
    bad.lambda_k = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("objective") {
    const Rect domain{-2, -2, 2, 2};
    const CellLayout ref = oracle::ring_layout(8, 1.0, 0, 0, domain);
    SynthesisConfig config = small_config(domain);

    SUBCASE("identity reference gives zero") {
        const Objective obj = objective(ref, ref, config);
        CHECK(obj.total == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(obj.l_cc == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(obj.k_term == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("lambda_k = 0 reduces to the configuration term") {
        Rng rng(5);
        const CellLayout cand = oracle::random_layout(rng, 1, 8, domain);
        const CellLayout cand2(cand.points(), domain, ref.class_names());
        config.lambda_k = 0.0;
        config.lambda_cc = 2.5;
        const Objective obj = objective(cand2, ref, config);
        CHECK(obj.total == 2.5 * obj.l_cc);
    }
    SUBCASE("components equal independently invoked module operations") {
        Rng rng(6);
        std::vector<CellPoint> pts;
        for (int i = 0; i < 10; ++i) {
            pts.push_back({rng.next_double() * 4.0 - 2.0, rng.next_double() * 4.0 - 2.0,
                           static_cast<int>(rng.next_index(2))});
        }
        const CellLayout g(pts, domain, {"u", "v"});
        const CellLayout r = oracle::random_layout(rng, 2, 12, domain);
        const CellLayout r2(r.points(), domain, g.class_names());
        const Objective obj = objective(g, r2, config);

        const double floor = 2.0 * config.h_synth;
        const auto gd = per_class_diagrams(g, config.h_synth, config.radii, config.sigmas, floor);
        const auto rd = per_class_diagrams(r2, config.h_synth, config.radii, config.sigmas, floor);
        double l_cc = 0.0;
        for (std::size_t c = 0; c < 2; ++c) l_cc += cell_configuration_loss(gd[c], rd[c]);
        double k_raw = 0.0;
        for (int s = 0; s < 2; ++s) {
            for (int t = 0; t < 2; ++t) {
                const double d = k_distance(cross_k(g, s, t, config.radii),
                                            cross_k(r2, s, t, config.radii));
                k_raw += d * d;
            }
        }
        const double k_term = k_raw / (4.0 * static_cast<double>(config.radii.size()));
        CHECK(obj.l_cc == doctest::Approx(l_cc).epsilon(1e-12));
        CHECK(obj.k_term == doctest::Approx(k_term).epsilon(1e-12));
        CHECK(obj.total == doctest::Approx(config.lambda_cc * l_cc + config.lambda_k * k_term)
                               .epsilon(1e-12));
    }
    SUBCASE("class mismatch") {
        const CellLayout other({{0, 0, 0}}, domain, {"different"});
        CHECK_THROWS_AS(objective(other, ref, config), ValidationError);
    }
}

TEST_CASE("synthesize yields deterministic, domain-contained, count-preserving output") {
    const Rect domain{-2, -2, 2, 2};
    const CellLayout ref = oracle::ring_layout(8, 1.0, 0, 0, domain);
    SynthesisConfig config = small_config(domain);
    config.seed = 99;

    const SynthesisResult a = synthesize(ref, config);
    const SynthesisResult b = synthesize(ref, config);

    CHECK(a.trace.steps.size() == static_cast<std::size_t>(config.steps));
    REQUIRE(a.raw_layout.size() == ref.size());
    CHECK(a.raw_layout.class_counts() == ref.class_counts());
    for (const auto& p : a.raw_layout.points()) CHECK(domain.contains(p.x, p.y));

    SUBCASE("bit-identical across runs") {
        REQUIRE(b.layout.size() == a.layout.size());
        for (std::size_t i = 0; i < a.layout.size(); ++i) {
            CHECK(a.layout.points()[i].x == b.layout.points()[i].x);
            CHECK(a.layout.points()[i].y == b.layout.points()[i].y);
        }
        for (std::size_t i = 0; i < a.trace.steps.size(); ++i) {
            CHECK(a.trace.steps[i].total == b.trace.steps[i].total);
            CHECK(a.trace.steps[i].accepted == b.trace.steps[i].accepted);
        }
    }
    SUBCASE("best-seen objective never increases and beats the start") {
        CHECK(a.best.total <= a.initial.total);
        double best_so_far = a.initial.total;
        for (const auto& s : a.trace.steps) best_so_far = std::min(best_so_far, s.total);
        CHECK(a.best.total == doctest::Approx(best_so_far).epsilon(1e-12));
    }
    SUBCASE("trace rows satisfy the objective identity") {
        for (const auto& s : a.trace.steps) {
            CHECK(s.total == config.lambda_cc * s.l_cc + config.lambda_k * s.k_term);
        }
    }
}

TEST_CASE("incremental evaluation matches full recomputation") {
    // The annealer refreshes only the moved class's diagram; spot-check the
    // running objective against a from-scratch evaluation of the final
    // layout.
    const Rect domain{-2, -2, 2, 2};
    std::vector<CellPoint> pts = oracle::ring_layout(8, 1.0, 0, 0, domain).points();
    pts.push_back({0.3, 0.2, 1});
    pts.push_back({-0.4, 0.5, 1});
    pts.push_back({1.5, -1.2, 1});
    const CellLayout ref(pts, domain, {"ring", "scatter"});
    SynthesisConfig config = small_config(domain);
    config.steps = 60;
    const SynthesisResult res = synthesize(ref, config);
    const Objective fresh = objective(res.raw_layout, ref, config);
    CHECK(res.best.total == doctest::Approx(fresh.total).epsilon(1e-12));
    CHECK(res.best.l_cc == doctest::Approx(fresh.l_cc).epsilon(1e-12));
    CHECK(res.best.k_term == doctest::Approx(fresh.k_term).epsilon(1e-12));
}

TEST_CASE("remove_overlaps") {
    const Rect domain{0, 0, 10, 10};
    SUBCASE("zero separation is the identity") {
        const CellLayout l({{1, 1, 0}, {1, 1, 0}, {2, 2, 0}}, domain, {"a"});
        CHECK(remove_overlaps(l, 0.0).size() == 3);
    }
    SUBCASE("coincident points collapse to one") {
        const CellLayout l({{1, 1, 0}, {1, 1, 0}}, domain, {"a"});
        const CellLayout out = remove_overlaps(l, 0.5);
        REQUIRE(out.size() == 1);
        CHECK(out.points()[0].x == 1.0);
    }
    SUBCASE("total conflict keeps the first point in scan order") {
        const CellLayout l({{1, 1, 0}, {2, 1, 0}, {1, 2, 0}, {3, 3, 0}, {2, 2, 0}}, domain,
                           {"a"});
        const CellLayout out = remove_overlaps(l, 100.0);
        REQUIRE(out.size() == 1);
        CHECK(out.points()[0].x == 1.0);
        CHECK(out.points()[0].y == 1.0);
    }
    SUBCASE("exactly at min_separation is kept") {
        const CellLayout l({{1, 1, 0}, {2, 1, 0}}, domain, {"a"});
        CHECK(remove_overlaps(l, 1.0).size() == 2);
    }
}
