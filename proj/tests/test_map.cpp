#include <catch2/catch_amalgamated.hpp>

#include "miquel/map.hpp"
#include "miquel/generators.hpp"

using namespace miquel;

namespace {

std::map<Vec2, Circle> regular_grid(int n) {
    std::map<Vec2, Circle> c;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[{i, j}] = Circle(cd(i, j), kRegularRadius);
    return c;
}

double map_distance(const MiquelMap& a, const MiquelMap& b) {
    double d = 0;
    for (const Vec3& v : a.circle_sites())
        if (b.has_circle(v)) {
            d = std::max(d, std::abs(a.circle(v).center - b.circle(v).center));
            d = std::max(d, std::abs(a.circle(v).radius - b.circle(v).radius));
        }
    for (const Vec3& t : a.point_sites())
        if (b.has_point(t)) d = std::max(d, std::abs(a.point(t) - b.point(t)));
    return d;
}

}  // namespace

TEST_CASE("pattern lift") {
    SECTION("the regular grid lifts with tiny incidence residual") {
        const MiquelMap m = from_circle_pattern(regular_grid(8));
        REQUIRE(m.incidence_residual() < 1e-12);
        REQUIRE(m.circle_layers().count(0) == 1);
        REQUIRE(m.circle_layers().count(1) == 1);
        REQUIRE(m.point_layers().at(0).size() == 7 * 7);
    }
    SECTION("a shrunk circle breaks the common point") {
        auto grid = regular_grid(8);
        grid[{3, 3}] = Circle(grid[{3, 3}].center, 0.9 * grid[{3, 3}].radius);
        REQUIRE_THROWS_AS(from_circle_pattern(grid), NoCommonPoint);
    }
    SECTION("a moebius image lifts as well") {
        const Moebius M(cd(1.0), cd(0.3, 0.1), cd(0.01, 0.005), cd(1.0));
        std::map<Vec2, Circle> grid;
        for (const auto& [xy, c] : regular_grid(8)) grid[xy] = map_circle(M, c);
        const MiquelMap m = from_circle_pattern(grid);
        REQUIRE(m.incidence_residual() < 1e-9);
    }
}

TEST_CASE("evolution") {
    SECTION("the regular grid is a fixed point with tangency branches") {
        MiquelMap m = from_circle_pattern(regular_grid(10));
        for (int s = 0; s < 4; ++s) m = evolve_step(m, Direction::Forward);
        double drift = 0;
        for (const Vec3& v : m.circle_sites()) {
            drift = std::max(drift, std::abs(m.circle(v).center - cd(v.x, v.y)));
            drift = std::max(drift, std::abs(m.circle(v).radius - kRegularRadius));
        }
        for (const Vec3& t : m.point_sites())
            drift = std::max(drift, std::abs(m.point(t) - cd(t.x + 0.5, t.y + 0.5)));
        REQUIRE(drift < 1e-10);
    }
    SECTION("forward then backward returns the pattern on the eroded window") {
        GeneratorSpec spec;
        spec.rows = spec.cols = 10;
        spec.seed = 4;
        const MiquelMap m = gen_generic(spec);
        const MiquelMap fwd = evolve_step(m, Direction::Forward);
        const MiquelMap top = slice_pattern(fwd, fwd.point_layer_hi());
        const MiquelMap back = evolve_step(top, Direction::Backward);
        REQUIRE(map_distance(back, m) < 1e-9);
    }
    SECTION("bookkeeping over several steps") {
        GeneratorSpec spec;
        spec.rows = spec.cols = 12;
        spec.seed = 2;
        MiquelMap m = gen_generic(spec);
        m = evolve(m, 3, Direction::Forward);
        REQUIRE(m.circle_layer_hi() == 4);
        REQUIRE(m.point_layer_hi() == 3);
        // the seed pattern carries two full circle layers, so the first step
        // does not erode; each later step costs one ring
        REQUIRE(m.point_layers().at(0).size() == 11 * 11);
        REQUIRE(m.point_layers().at(1).size() == 11 * 11);
        REQUIRE(m.point_layers().at(2).size() == 9 * 9);
        REQUIRE(m.point_layers().at(3).size() == 7 * 7);
        m = evolve(m, 2, Direction::Backward);
        REQUIRE(m.circle_layer_lo() == -2);
    }
    SECTION("a window too small to erode is rejected") {
        MiquelMap m = from_circle_pattern(regular_grid(4));
        m = evolve_step(m, Direction::Forward);
        m = evolve_step(m, Direction::Forward);
        REQUIRE_THROWS_AS(evolve_step(m, Direction::Forward), WindowExhausted);
    }
    SECTION("a corrupted point surfaces as an error") {
        MiquelMap m = from_circle_pattern(regular_grid(8));
        m.set_point({3, 3, 0}, m.point({3, 3, 0}) + cd(1e-3, 0));
        REQUIRE_THROWS_AS(evolve_step(m, Direction::Forward), Error);
    }
}

TEST_CASE("extraction") {
    GeneratorSpec spec;
    spec.rows = spec.cols = 10;
    spec.seed = 6;
    MiquelMap m = gen_generic(spec);
    m = evolve_step(m, Direction::Forward);

    SECTION("centers are the stored circle centers") {
        const auto t = extract_t(m);
        for (const auto& [z, c] : t) {
            REQUIRE(std::isfinite(c.real()));
            REQUIRE(c == m.circle(z).center);
        }
    }
    SECTION("colours partition the points") {
        const auto pb = extract_p(m, Color::Black), pw = extract_p(m, Color::White);
        REQUIRE(pb.size() + pw.size() == m.point_sites().size());
        for (const auto& [t, v] : pb) REQUIRE(is_black_tetra(t));
    }
    SECTION("layer restriction reproduces the pattern and shares unreplaced circles") {
        const CirclePatternLayer l0 = layer(m, 0), l1 = layer(m, 1);
        for (const auto& [xy, c] : l0.circles) {
            const int parity = ((xy.x + xy.y) % 2 + 2) % 2;
            if (parity == 1) {
                // odd sites at level 0 live on layer 1 and persist into level 1
                REQUIRE(l1.circles.count(xy));
                REQUIRE(l1.circles.at(xy).center == c.center);
            }
        }
        REQUIRE_THROWS_AS(layer(m, 5), LayerNotCovered);
    }
    SECTION("translation equivariance of the centers") {
        // shifting every circle shifts every center; nothing else moves
        MiquelMap sh;
        for (const Vec3& v : m.circle_sites())
            sh.set_circle(v, Circle(m.circle(v).center + cd(2, 3), m.circle(v).radius));
        for (const Vec3& t : m.point_sites()) sh.set_point(t, m.point(t) + cd(2, 3));
        const auto t0 = extract_t(m), t1 = extract_t(sh);
        for (const auto& [z, c] : t0) REQUIRE(std::abs(t1.at(z) - c - cd(2, 3)) < 1e-12);
    }
}

TEST_CASE("moebius transport of a map") {
    GeneratorSpec spec;
    spec.rows = spec.cols = 10;
    spec.seed = 8;
    const MiquelMap m = gen_generic(spec);

    SECTION("identity stays put up to refit roundoff") {
        const MiquelMap id = apply_moebius(m, Moebius());
        REQUIRE(map_distance(id, m) < 1e-12);
    }
    SECTION("composition order") {
        const Moebius M1(cd(1.0), cd(0.2, 0.1), cd(0.01, 0.0), cd(1.0));
        const Moebius M2(cd(1.0, 0.1), cd(-0.1, 0.2), cd(0.0, 0.008), cd(1.0));
        const MiquelMap a = apply_moebius(apply_moebius(m, M1), M2);
        const MiquelMap b = apply_moebius(m, M2 * M1);
        REQUIRE(map_distance(a, b) < 1e-10);
    }
    SECTION("incidence survives") {
        const Moebius M(cd(1.0), cd(0.5, -0.2), cd(0.015, 0.01), cd(1.0));
        REQUIRE(apply_moebius(m, M).incidence_residual() < 1e-9);
    }
}

TEST_CASE("evolution commutes with moebius transport") {
    GeneratorSpec spec;
    spec.rows = spec.cols = 10;
    spec.seed = 12;
    const MiquelMap m = gen_generic(spec);
    const Moebius M(cd(1.0), cd(0.3, -0.1), cd(0.012, 0.009), cd(1.0));
    const MiquelMap a = evolve_step(apply_moebius(m, M), Direction::Forward);
    const MiquelMap b = apply_moebius(evolve_step(m, Direction::Forward), M);
    REQUIRE(map_distance(a, b) < 1e-9);
}

TEST_CASE("layer restriction round-trips the input pattern") {
    const auto grid = regular_grid(7);
    const MiquelMap m = from_circle_pattern(grid);
    const CirclePatternLayer l0 = layer(m, 0);
    REQUIRE(l0.circles.size() == grid.size());
    for (const auto& [xy, c] : grid) {
        REQUIRE(l0.circles.at(xy).center == c.center);
        REQUIRE(l0.circles.at(xy).radius == c.radius);
    }
    REQUIRE(l0.points.size() == 6 * 6);
}

TEST_CASE("collinear circle centers stop the step") {
    // opposite face points coincide in pairs, which puts all six centers of
    // the advancing octahedron on the real axis
    MiquelMap m;
    m.set_circle({1, 1, 0}, Circle(cd(0, 0), 1.0));
    auto side = [](double c) { return Circle(cd(c, 0), std::sqrt(c * c + 1.0)); };
    m.set_circle({0, 1, 1}, side(-0.5));
    m.set_circle({2, 1, 1}, side(0.5));
    m.set_circle({1, 0, 1}, side(1.5));
    m.set_circle({1, 2, 1}, side(-1.5));
    m.set_point({1, 1, 0}, cd(0, 1));
    m.set_point({0, 0, 0}, cd(0, 1));
    m.set_point({0, 1, 0}, cd(0, -1));
    m.set_point({1, 0, 0}, cd(0, -1));
    REQUIRE(m.incidence_residual() < 1e-12);
    REQUIRE_THROWS_AS(evolve_step(m, Direction::Forward), DegenerateOctahedron);
}
