#include <catch2/catch_amalgamated.hpp>

#include "miquel/circle.hpp"
#include "miquel/generators.hpp"

using namespace miquel;

namespace {

cd rand_pt(Rng& rng, double lo = -2.0, double hi = 2.0) {
    return {rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

// independent oracle: both intersection points of two circles via the radical
// line, nothing shared with second_intersection
std::pair<cd, cd> intersect_oracle(const Circle& c1, const Circle& c2) {
    const double d = std::abs(c2.center - c1.center);
    const double a = (c1.radius * c1.radius - c2.radius * c2.radius + d * d) / (2 * d);
    const double h = std::sqrt(std::max(c1.radius * c1.radius - a * a, 0.0));
    const cd base = c1.center + a * (c2.center - c1.center) / d;
    const cd off = cd(0, 1) * (c2.center - c1.center) / d * h;
    return {base + off, base - off};
}

}  // namespace

TEST_CASE("circle construction and membership") {
    REQUIRE_THROWS_AS(Circle(cd(0, 0), 0.0), InvalidCircle);
    REQUIRE_THROWS_AS(Circle(cd(0, 0), -1.0), InvalidCircle);
    const Circle unit(cd(0, 0), 1.0);
    REQUIRE(on_circle(unit, cd(1.0, 0.0), 1e-9));
    REQUIRE(!on_circle(unit, cd(1.1, 0.0), 1e-9));
    REQUIRE_THROWS_AS(on_circle(unit, ExtComplex::infinity(), 1e-9), InfinitePoint);
}

TEST_CASE("circumcircle") {
    SECTION("symmetric points on the unit circle") {
        const Circle c = circumcircle(cd(1, 0), cd(0, 1), cd(-1, 0));
        REQUIRE(std::abs(c.center) < 1e-14);
        REQUIRE(c.radius == Catch::Approx(1.0).margin(1e-14));
    }
    SECTION("right-triangle example") {
        const Circle c = circumcircle(cd(0, 0), cd(1, 0), cd(1, 1));
        REQUIRE(std::abs(c.center - cd(0.5, 0.5)) < 1e-14);
        REQUIRE(c.radius == Catch::Approx(std::sqrt(0.5)).margin(1e-14));
    }
    SECTION("degenerate inputs") {
        REQUIRE_THROWS_AS(circumcircle(cd(0, 0), cd(1, 0), cd(2, 0)), CollinearPoints);
        REQUIRE_THROWS_AS(circumcircle(cd(0, 0), cd(0, 0), cd(2, 1)), CoincidentPoints);
        // scale-relative collinearity: large coordinates, genuinely non-collinear
        REQUIRE_NOTHROW(circumcircle(cd(1e6, 0), cd(1e6 + 1, 1), cd(1e6 + 2, 0)));
    }
    SECTION("permutation invariance and membership") {
        Rng rng(5);
        for (int i = 0; i < 25; ++i) {
            cd a = rand_pt(rng), b = rand_pt(rng), c = rand_pt(rng);
            Circle c0 = circumcircle(a, b, c);
            for (const auto& [p, q, r] :
                 {std::array{b, c, a}, std::array{c, a, b}, std::array{b, a, c}}) {
                Circle c1 = circumcircle(p, q, r);
                REQUIRE(std::abs(c1.center - c0.center) < 1e-12 * c0.radius + 1e-12);
            }
            for (const cd& p : {a, b, c}) REQUIRE(std::abs(c0.signed_residual(p)) < 1e-12);
        }
    }
}

TEST_CASE("second intersection") {
    SECTION("mirror symmetry about the real axis") {
        const Circle c1(cd(0, 0), 1.0), c2(cd(1, 0), 1.0);
        const cd p(0.5, std::sqrt(3.0) / 2.0);
        REQUIRE(std::abs(second_intersection(c1, c2, p) - std::conj(p)) < 1e-14);
    }
    SECTION("tangent circles return the point itself") {
        const Circle c1(cd(0, 0), 1.0), c2(cd(2, 0), 1.0);
        REQUIRE(second_intersection(c1, c2, cd(1, 0)) == cd(1, 0));
    }
    SECTION("errors") {
        const Circle c1(cd(0, 0), 1.0), c2(cd(1, 0), 1.0);
        REQUIRE_THROWS_AS(second_intersection(c1, c2, cd(5, 5)), NotOnBothCircles);
        REQUIRE_THROWS_AS(second_intersection(c1, Circle(cd(0, 0), 2.0), cd(1, 0)),
                          CoincidentCenters);
    }
    SECTION("agrees with the quadratic-solver oracle and is an involution") {
        Rng rng(11);
        for (int i = 0; i < 40; ++i) {
            const Circle c1(rand_pt(rng), rng.uniform(0.8, 1.5));
            cd dirn = std::polar(1.0, rng.uniform(0.0, 6.28));
            const Circle c2(c1.center + dirn * rng.uniform(0.5, 1.2), rng.uniform(0.8, 1.5));
            const auto [p, q] = intersect_oracle(c1, c2);
            if (std::abs(p - q) < 1e-3) continue;
            REQUIRE(std::abs(second_intersection(c1, c2, p) - q) < 1e-10);
            const cd back = second_intersection(c1, c2, second_intersection(c1, c2, p));
            REQUIRE(std::abs(back - p) < 1e-12);
            // stays on both circles
            const cd s = second_intersection(c1, c2, p);
            REQUIRE(std::abs(c1.signed_residual(s)) < 1e-10);
            REQUIRE(std::abs(c2.signed_residual(s)) < 1e-10);
        }
    }
}

TEST_CASE("reflection about a line") {
    REQUIRE(std::abs(reflect_about_line(cd(0, 1), cd(0, 0), cd(1, 0)) - cd(0, -1)) < 1e-15);
    REQUIRE(std::abs(reflect_about_line(cd(0.3, 0), cd(0, 0), cd(1, 0)) - cd(0.3, 0)) < 1e-15);
    REQUIRE_THROWS_AS(reflect_about_line(cd(0, 1), cd(1, 1), cd(1, 1)), DegenerateLine);
    Rng rng(17);
    for (int i = 0; i < 25; ++i) {
        const cd p = rand_pt(rng), a = rand_pt(rng), b = rand_pt(rng);
        if (std::abs(a - b) < 1e-3) continue;
        REQUIRE(std::abs(reflect_about_line(reflect_about_line(p, a, b), a, b) - p) < 1e-13);
    }
}

TEST_CASE("concyclicity residuals") {
    REQUIRE(concyclic_residual(cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)) < 1e-12);
    REQUIRE(concyclic_residual(cd(1, 0), cd(0, 1), cd(-1, 0), cd(2, 0)) > 0.1);
    REQUIRE(concyclic_imag_residual(cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)) < 1e-12);
}

TEST_CASE("circles map to circles under moebius transforms") {
    Rng rng(19);
    for (int i = 0; i < 25; ++i) {
        const Circle c(rand_pt(rng), rng.uniform(0.5, 1.5));
        const Moebius M(cd(1.0) + 0.2 * rand_pt(rng), rand_pt(rng), 0.02 * rand_pt(rng), cd(1.0));
        const ExtComplex pole = M.pole();
        if (pole.is_finite() && std::abs(pole.value() - c.center) < 1.5 * c.radius) continue;
        const Circle img = map_circle(M, c);
        // a fourth point of the original lands on the image circle
        const cd fourth = c.center + std::polar(c.radius, rng.uniform(0.0, 6.28));
        REQUIRE(std::abs(img.signed_residual(M.apply_finite(fourth))) < 1e-9);
    }
    SECTION("pole on the circle is rejected") {
        const Circle c(cd(0, 0), 1.0);
        const Moebius M(0.0, 1.0, 1.0, -1.0);   // pole at 1
        REQUIRE_THROWS_AS(map_circle(M, c), CircleThroughInfinity);
    }
}
