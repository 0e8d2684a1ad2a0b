#include <catch2/catch_amalgamated.hpp>

#include "miquel/generators.hpp"
#include "miquel/variables.hpp"
#include "miquel/verify.hpp"

using namespace miquel;

TEST_CASE("generators are deterministic per seed") {
    for (PatternKind kind : {PatternKind::Generic, PatternKind::Isoradial,
                             PatternKind::Orthodiagonal, PatternKind::Packing}) {
        GeneratorSpec spec;
        spec.kind = kind;
        spec.rows = spec.cols = 10;
        spec.seed = 42;
        const MiquelMap a = generate(spec), b = generate(spec);
        for (const Vec3& v : a.circle_sites()) {
            REQUIRE(b.has_circle(v));
            REQUIRE(a.circle(v).center == b.circle(v).center);
            REQUIRE(a.circle(v).radius == b.circle(v).radius);
        }
        for (const Vec3& t : a.point_sites()) REQUIRE(a.point(t) == b.point(t));
    }
}

TEST_CASE("generic patterns") {
    SECTION("zero perturbation degenerates to the regular grid") {
        GeneratorSpec spec;
        spec.rows = spec.cols = 8;
        spec.perturbation = 0.0;
        const MiquelMap m = gen_generic(spec);
        for (const Vec3& v : m.circle_sites()) {
            REQUIRE(std::abs(m.circle(v).center - cd(v.x, v.y)) < 1e-12);
            REQUIRE(std::abs(m.circle(v).radius - kRegularRadius) < 1e-12);
        }
        for (const Vec3& t : m.point_sites())
            REQUIRE(std::abs(m.point(t) - cd(t.x + 0.5, t.y + 0.5)) < 1e-12);
    }
    SECTION("default perturbation gives valid non-integrable maps") {
        GeneratorSpec spec;
        spec.rows = spec.cols = 12;
        spec.seed = 1;
        MiquelMap m = gen_generic(spec);
        REQUIRE(m.incidence_residual() < 1e-10);
        m = evolve(m, 2, Direction::Forward);
        Tolerances tol;
        REQUIRE(check_dskp_t(m, tol).pass);
        REQUIRE(check_nonintegrable(m, tol).pass);
    }
    SECTION("too-small windows are rejected") {
        GeneratorSpec spec;
        spec.rows = 3;
        REQUIRE_THROWS_AS(gen_generic(spec), WindowTooSmall);
    }
}

TEST_CASE("isoradial patterns") {
    SECTION("unit horizontal and vertical tracks give a dynamics fixed point") {
        const int n = 8;
        std::vector<cd> u(2 * n, cd(1.0)), v(2 * n, cd(0.0, 1.0));
        MiquelMap m = gen_isoradial(u, v, n, n);
        REQUIRE(m.incidence_residual() < 1e-12);
        const MiquelMap m1 = evolve_step(m, Direction::Forward);
        for (const auto& [xy, c] : m1.circle_layers().at(2)) {
            REQUIRE(std::abs(c.center - m.circle({xy.x, xy.y, 0}).center) < 1e-10);
            REQUIRE(std::abs(c.radius - 1.0) < 1e-10);
        }
    }
    SECTION("random tracks give unit circles and unit vertex products") {
        GeneratorSpec spec;
        spec.kind = PatternKind::Isoradial;
        spec.rows = spec.cols = 10;
        spec.seed = 5;
        const MiquelMap m = gen_isoradial(spec);
        for (const Vec3& z : m.circle_sites()) REQUIRE(std::abs(m.circle(z).radius - 1.0) < 1e-12);
        for (const auto& [vx, prod] : gamma_vertex_products(gamma_field(m, 0)))
            REQUIRE(std::abs(prod - cd(1.0)) < 1e-9);
    }
    SECTION("parallel tracks are rejected") {
        std::vector<cd> u(16, cd(1.0)), v(16, cd(1.0));
        REQUIRE_THROWS_AS(gen_isoradial(u, v, 6, 6), DegenerateRhombus);
    }
    SECTION("one step swaps the zig-zag pair multipliers") {
        GeneratorSpec spec;
        spec.kind = PatternKind::Isoradial;
        spec.rows = spec.cols = 10;
        spec.seed = 7;
        const MiquelMap m = gen_isoradial(spec);
        const MiquelMap m1 = evolve_step(m, Direction::Forward);
        const ZigzagData z0 = zigzag_multipliers(m, 0), z1 = zigzag_multipliers(m1, 1);
        REQUIRE(z1.rhombicity < 1e-10);
        int compared = 0;
        for (const auto& [tr, mult] : z1.horizontal) {
            const int partner = (tr % 2 == 0) ? tr + 1 : tr - 1;
            auto it = z0.horizontal.find(partner);
            if (it == z0.horizontal.end()) continue;
            REQUIRE(std::abs(mult - it->second) < 1e-10);
            ++compared;
        }
        REQUIRE(compared > 4);
    }
}

TEST_CASE("orthodiagonal patterns") {
    GeneratorSpec spec;
    spec.kind = PatternKind::Orthodiagonal;
    spec.rows = spec.cols = 10;
    spec.seed = 3;

    SECTION("zero perturbation is the axis-aligned configuration") {
        GeneratorSpec flat = spec;
        flat.perturbation = 0.0;
        const MiquelMap m = gen_orthodiagonal(flat);
        for (const Vec3& t : m.point_sites())
            REQUIRE(std::abs(m.point(t) - cd(t.x + 0.5, t.y + 0.5)) < 1e-12);
    }
    SECTION("centers form rectangles around odd level-zero faces") {
        const MiquelMap m = gen_orthodiagonal(spec);
        REQUIRE(m.incidence_residual() < 1e-12);
        int rects = 0;
        for (const Vec3& z : m.point_sites()) {
            if (z.z != 0 || !is_white_tetra(z)) continue;
            const Vec3 c1{z.x, z.y, 1}, c2{z.x + 1, z.y, 0}, c3{z.x + 1, z.y + 1, 1},
                c4{z.x, z.y + 1, 0};
            if (!(m.has_circle(c1) && m.has_circle(c2) && m.has_circle(c3) && m.has_circle(c4)))
                continue;
            const cd a = m.circle(c1).center, b = m.circle(c2).center, c = m.circle(c3).center,
                     d = m.circle(c4).center;
            REQUIRE(std::abs(((b - a) * std::conj(c - b)).real()) < 1e-10);
            REQUIRE(std::abs(std::abs(b - a) - std::abs(c - d)) < 1e-10);
            ++rects;
        }
        REQUIRE(rects > 10);
    }
}

TEST_CASE("tangent-circle patterns") {
    SECTION("the regular mode reproduces the grid and its tangency points") {
        GeneratorSpec spec;
        spec.kind = PatternKind::Packing;
        spec.rows = spec.cols = 8;
        spec.regular_packing = true;
        MiquelMap m = gen_packing(spec);
        REQUIRE(m.incidence_residual() < 1e-12);
        m = evolve_step(m, Direction::Backward);
        for (const Vec3& t : m.point_sites())
            if (t.z == 0 && m.has_point({t.x, t.y, -1}))
                REQUIRE(std::abs(m.point(t) - m.point({t.x, t.y, -1})) < 1e-12);
    }
    SECTION("row-built packings are tangent along level-zero diagonals") {
        GeneratorSpec spec;
        spec.kind = PatternKind::Packing;
        spec.rows = spec.cols = 10;
        spec.seed = 5;
        const MiquelMap m = gen_packing(spec);
        REQUIRE(m.incidence_residual() < 1e-10);
        int tangencies = 0;
        for (const auto& [xy, c] : m.circle_layers().at(0)) {
            const Vec3 diag{xy.x + 1, xy.y + 1, 0};
            if (!m.has_circle(diag)) continue;
            const Circle& c2 = m.circle(diag);
            REQUIRE(std::abs(std::abs(c2.center - c.center) - (c.radius + c2.radius)) < 1e-9);
            ++tangencies;
        }
        REQUIRE(tangencies > 10);
    }
    SECTION("a deformation pole inside the pattern is rejected") {
        GeneratorSpec spec;
        spec.kind = PatternKind::Packing;
        spec.rows = spec.cols = 8;
        spec.regular_packing = true;
        spec.deformation = Moebius(cd(1.0), cd(0.0), cd(1.0), cd(-3.0, -3.0));   // pole at 3+3i
        REQUIRE_THROWS_AS(gen_packing(spec), PoleInsidePattern);
    }
}

TEST_CASE("every generator passes the core identity checks") {
    for (PatternKind kind : {PatternKind::Generic, PatternKind::Isoradial,
                             PatternKind::Orthodiagonal, PatternKind::Packing}) {
        GeneratorSpec spec;
        spec.kind = kind;
        spec.rows = spec.cols = 10;
        spec.seed = 11;
        MiquelMap m = generate(spec);
        m = evolve(m, 2, Direction::Forward);
        m = evolve(m, 1, Direction::Backward);
        Tolerances tol;
        REQUIRE(check_incidence(m, tol).pass);
        REQUIRE(check_dskp_t(m, tol).pass);
        REQUIRE(check_dskp_p(m, Color::Black, tol).pass);
        REQUIRE(check_dskp_p(m, Color::White, tol).pass);
        REQUIRE(check_a4(m, tol).pass);
    }
}
