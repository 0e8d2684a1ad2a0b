#include <catch2/catch_amalgamated.hpp>

#include "miquel/generators.hpp"
#include "miquel/reconstruct.hpp"

using namespace miquel;

namespace {

MiquelMap evolved(PatternKind kind, int n, std::uint64_t seed, int fwd, int bwd) {
    GeneratorSpec spec;
    spec.kind = kind;
    spec.rows = spec.cols = n;
    spec.seed = seed;
    MiquelMap m = generate(spec);
    m = evolve(m, fwd, Direction::Forward);
    m = evolve(m, bwd, Direction::Backward);
    return m;
}

}  // namespace

TEST_CASE("center reconstruction from the Y layer") {
    const MiquelMap m = evolved(PatternKind::Generic, 14, 3, 1, 0);
    const auto t = extract_t(m);
    const VariableField yd = extract_y_layer(m, 0);
    const auto bd = extract_y_boundary(m, 0, 0);

    SECTION("round trip on the reachable cone") {
        const auto rec = reconstruct_from_y(yd, bd, 0);
        REQUIRE(rec.size() > bd.size() + 20);
        for (const auto& [z, v] : rec) {
            REQUIRE(t.count(z) == 1);
            REQUIRE(std::abs(v - t.at(z)) < 1e-9);
        }
    }
    SECTION("constant data on a regular boundary stays self-consistent") {
        VariableField ones{VariableKind::Y, {}};
        std::map<Vec3, cd> bd1;
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
                for (int k : {0, 1}) {
                    const Vec3 z{i, j, k};
                    if (!is_vertex_site(z)) continue;
                    ones.values[z] = 1.0;
                    if (j <= 1) bd1[z] = cd(i, j) + (k ? cd(0.0, 1.0) * cd(0, 0) : cd(0, 0));
                }
        // boundary from the regular grid itself
        for (auto& [z, v] : bd1) v = cd(z.x, z.y);
        const auto rec = reconstruct_from_y(ones, bd1, 0);
        int n = 0;
        for (const auto& [z, v] : rec) {
            cd y;
            try {
                y = compute_y(rec, z);
            } catch (const MissingData&) {
                continue;
            }
            REQUIRE(std::abs(y - 1.0) < 1e-9);
            ++n;
        }
        REQUIRE(n > 10);
    }
    SECTION("perturbing one value moves the result downstream") {
        VariableField bad = yd;
        Vec3 mid{0, 0, 0};
        for (const auto& [z, v] : bad.values)
            if (z.z == 0 && z.y == 3 && z.x >= 6) { mid = z; break; }
        REQUIRE(bad.values.count(mid) == 1);
        bad.values[mid] += 0.1;
        const auto rec = reconstruct_from_y(bad, bd, 0);
        double dev = 0;
        for (const auto& [z, v] : rec)
            if (t.count(z)) dev = std::max(dev, std::abs(v - t.at(z)));
        REQUIRE(dev > 1e-3);
    }
    SECTION("bad boundaries are rejected") {
        REQUIRE_THROWS_AS(reconstruct_from_y(yd, {}, 0), InconsistentBoundary);
        auto wide = bd;
        for (const auto& [z, v] : t)
            if (z.y == 4) { wide[z] = v; break; }
        REQUIRE_THROWS_AS(reconstruct_from_y(yd, wide, 0), InconsistentBoundary);
    }
}

TEST_CASE("point reconstruction from the X layer") {
    const MiquelMap m = evolved(PatternKind::Generic, 14, 3, 1, 1);

    auto strips = [](const std::map<Vec3, cd>& slab) {
        int slo = 1 << 30, shi = -(1 << 30), dlo = 1 << 30, dhi = -(1 << 30);
        for (const auto& [z, v] : slab) {
            slo = std::min(slo, z.x + z.y);
            shi = std::max(shi, z.x + z.y);
            dlo = std::min(dlo, z.x - z.y);
            dhi = std::max(dhi, z.x - z.y);
        }
        return extract_x_boundary(slab, (slo + shi) / 2, (dlo + dhi) / 2);
    };

    SECTION("black slab round trip reaches the whole window") {
        const VariableField xf = x_field(m, Color::Black);
        VariableField xd{VariableKind::Xb, {}};
        for (const auto& [z, v] : xf.values)
            if (z.z == 0 || z.z == 1) xd.values[z] = v;
        std::map<Vec3, cd> slab;
        for (const auto& [z, v] : extract_p(m, Color::Black))
            if (z.z == 0 || z.z == 1) slab[z] = v;
        const auto rec = reconstruct_from_x(xd, strips(slab), Color::Black, 0);
        int hit = 0;
        for (const auto& [z, v] : slab) {
            auto it = rec.find(z);
            REQUIRE(it != rec.end());
            REQUIRE(std::abs(it->second - v) < 1e-9);
            ++hit;
        }
        REQUIRE(hit == (int)slab.size());
    }
    SECTION("white slab solves the mirror problem") {
        const VariableField xf = x_field(m, Color::White);
        VariableField xd{VariableKind::Xw, {}};
        for (const auto& [z, v] : xf.values)
            if (z.z == 0 || z.z == 1) xd.values[z] = v;
        std::map<Vec3, cd> slab;
        for (const auto& [z, v] : extract_p(m, Color::White))
            if (z.z == -1 || z.z == 0) slab[z] = v;
        const auto rec = reconstruct_from_x(xd, strips(slab), Color::White, 0);
        int hit = 0;
        for (const auto& [z, v] : slab)
            if (rec.count(z)) {
                REQUIRE(std::abs(rec.at(z) - v) < 1e-9);
                ++hit;
            }
        REQUIRE(hit == (int)slab.size());
    }
}

TEST_CASE("one-colour completion") {
    const MiquelMap m = evolved(PatternKind::Generic, 12, 7, 1, 1);

    SECTION("circles and the other colour come back") {
        const auto pb = extract_p(m, Color::Black);
        const MiquelMap rec = complete_map_from_pcolor(pb, Color::Black);
        int circles = 0, points = 0;
        for (const Vec3& v : rec.circle_sites()) {
            REQUIRE(std::abs(rec.circle(v).center - m.circle(v).center) < 1e-9);
            ++circles;
        }
        for (const Vec3& t : rec.point_sites()) {
            REQUIRE(std::abs(rec.point(t) - m.point(t)) < 1e-9);
            ++points;
        }
        REQUIRE(circles > 50);
        REQUIRE(points > circles);
    }
    SECTION("a jittered point is flagged") {
        auto pb = extract_p(m, Color::Black);
        pb.begin()->second += cd(1e-3, 0);
        bool threw = false;
        try {
            complete_map_from_pcolor(pb, Color::Black);
        } catch (const ConcyclicityViolated&) {
            threw = true;
        }
        REQUIRE(threw);
    }
}

TEST_CASE("single-layer lattice extension") {
    const MiquelMap m = evolved(PatternKind::Generic, 12, 9, 2, 0);
    const auto pb = extract_p(m, Color::Black);
    std::map<Vec3, cd> slab;
    for (const auto& [z, v] : pb)
        if (z.z == 0 || z.z == 1) slab[z] = v;
    const auto ext = dskp_extend(slab, Direction::Forward);
    int fresh = 0;
    for (const auto& [z, v] : ext)
        if (!slab.count(z)) {
            REQUIRE(z.z == 2);
            REQUIRE(pb.count(z) == 1);
            REQUIRE(std::abs(v - pb.at(z)) < 1e-8);
            ++fresh;
        }
    REQUIRE(fresh > 10);
}
