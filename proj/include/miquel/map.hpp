#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "miquel/circle.hpp"
#include "miquel/lattice.hpp"

namespace miquel {

struct Vec2 {
    int x = 0, y = 0;
    friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

inline std::string site_str(const Vec3& v) {
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + "," + std::to_string(v.z) + ")";
}

enum class Color { Black, White };
enum class Direction { Forward, Backward };

/// Circles on lattice vertices and intersection points on tetrahedra, over a
/// finite window, stored layer-sparse. Values are immutable in normal use:
/// evolution builds a new map.
class MiquelMap {
public:
    using CircleLayer = std::map<Vec2, Circle>;
    using PointLayer = std::map<Vec2, cd>;

    bool has_circle(const Vec3& v) const {
        auto it = circles_.find(v.z);
        return it != circles_.end() && it->second.count({v.x, v.y});
    }
    const Circle& circle(const Vec3& v) const {
        auto it = circles_.find(v.z);
        if (it == circles_.end()) throw MissingData("no circle layer " + std::to_string(v.z));
        auto jt = it->second.find({v.x, v.y});
        if (jt == it->second.end()) throw MissingData("no circle at " + site_str(v));
        return jt->second;
    }
    void set_circle(const Vec3& v, const Circle& c) {
        if (!is_vertex_site(v)) throw ParityError("set_circle: odd coordinate sum " + site_str(v));
        circles_[v.z][{v.x, v.y}] = c;
    }

    bool has_point(const Vec3& t) const {
        auto it = points_.find(t.z);
        return it != points_.end() && it->second.count({t.x, t.y});
    }
    cd point(const Vec3& t) const {
        auto it = points_.find(t.z);
        if (it == points_.end()) throw MissingData("no point layer " + std::to_string(t.z));
        auto jt = it->second.find({t.x, t.y});
        if (jt == it->second.end()) throw MissingData("no point at " + site_str(t));
        return jt->second;
    }
    void set_point(const Vec3& t, cd p) { points_[t.z][{t.x, t.y}] = p; }

    const std::map<int, CircleLayer>& circle_layers() const { return circles_; }
    const std::map<int, PointLayer>& point_layers() const { return points_; }

    std::vector<Vec3> circle_sites() const {
        std::vector<Vec3> out;
        for (const auto& [k, layer] : circles_)
            for (const auto& [xy, c] : layer) out.push_back({xy.x, xy.y, k});
        return out;
    }
    std::vector<Vec3> point_sites() const {
        std::vector<Vec3> out;
        for (const auto& [k, layer] : points_)
            for (const auto& [xy, p] : layer) out.push_back({xy.x, xy.y, k});
        return out;
    }

    int circle_layer_lo() const { return circles_.begin()->first; }
    int circle_layer_hi() const { return circles_.rbegin()->first; }
    int point_layer_lo() const { return points_.begin()->first; }
    int point_layer_hi() const { return points_.rbegin()->first; }
    bool empty() const { return circles_.empty() || points_.empty(); }

    /// Worst relative incidence residual over every stored point and every
    /// stored circle incident to it.
    double incidence_residual() const { return std::abs(worst_incidence().signed_residual); }

    IncidenceReport worst_incidence() const {
        IncidenceReport rep;
        double worst = -1.0;
        for (const Vec3& t : point_sites()) {
            const cd p = point(t);
            for (const Vec3& v : tetra_vertices(t)) {
                if (!has_circle(v)) continue;
                const double r = circle(v).signed_residual(p);
                if (std::abs(r) > worst) {
                    worst = std::abs(r);
                    rep = IncidenceReport{p, circle(v), r};
                }
            }
        }
        return rep;
    }

    /// Geometric scale: the largest circle diameter, for scale-relative checks.
    double scale() const {
        double s = 1.0;
        for (const auto& [k, layer] : circles_)
            for (const auto& [xy, c] : layer) s = std::max(s, 2.0 * c.radius);
        return s;
    }

private:
    std::map<int, CircleLayer> circles_;   // layer -> (x, y) -> circle
    std::map<int, PointLayer> points_;
};

namespace detail {

/// The two circles of tetrahedron t whose vertices lie on layer `level`
/// (level is t.z or t.z + 1; the pair shape depends on the tetra colour).
inline std::pair<Vec3, Vec3> tetra_circle_pair(const Vec3& t, int level) {
    if (level == t.z) {
        if (is_white_tetra(t)) return {shift(t, {1}), shift(t, {2})};
        return {t, shift(t, {1, 2})};
    }
    if (level == t.z + 1) {
        if (is_black_tetra(t)) return {shift(t, {1, 3}), shift(t, {2, 3})};
        return {shift(t, {3}), shift(t, {1, 2, 3})};
    }
    throw Error("tetra_circle_pair: level must be t.z or t.z + 1");
}

inline bool centers_collinear(const std::vector<cd>& centers, double tol_rel) {
    double span = 0.0;
    cd a = centers[0], b = centers[0];
    for (const cd& p : centers)
        for (const cd& q : centers)
            if (std::abs(p - q) > span) { span = std::abs(p - q); a = p; b = q; }
    if (span == 0.0) return true;
    const cd dir = (b - a) / span;
    double dev = 0.0;
    for (const cd& p : centers) dev = std::max(dev, std::abs(((p - a) * std::conj(dir)).imag()));
    return dev < tol_rel * span;
}

}  // namespace detail

/// Builds the two-layer map of a circle pattern: circles at even (x + y) go to
/// layer 0, odd to layer 1; each face point is the common point of its four
/// incident circles, picked by the per-face branch bit when two survive.
inline MiquelMap from_circle_pattern(const std::map<Vec2, Circle>& circles,
                                     const std::map<Vec2, bool>& branch_choices = {},
                                     double tol = 1e-8) {
    MiquelMap m;
    for (const auto& [xy, c] : circles) {
        const int k = ((xy.x + xy.y) % 2 + 2) % 2;
        m.set_circle({xy.x, xy.y, k}, c);
    }
    for (const auto& [xy, c1] : circles) {
        const Vec2 r{xy.x + 1, xy.y}, u{xy.x, xy.y + 1}, ru{xy.x + 1, xy.y + 1};
        if (!circles.count(r) || !circles.count(u) || !circles.count(ru)) continue;
        const Circle& c2 = circles.at(r);
        const double d = std::abs(c2.center - c1.center);
        std::vector<cd> cands;
        if (d > c1.radius + c2.radius + tol * c1.radius ||
            d < std::abs(c1.radius - c2.radius) - tol * c1.radius)
            throw DisjointCircles("from_circle_pattern: circles at (" + std::to_string(xy.x) + "," +
                                  std::to_string(xy.y) + ") and right neighbour do not meet");
        const double a = (c1.radius * c1.radius - c2.radius * c2.radius + d * d) / (2.0 * d);
        const double h2 = c1.radius * c1.radius - a * a;
        const cd base = c1.center + a * (c2.center - c1.center) / d;
        if (h2 <= 0.0) {
            cands.push_back(base);   // tangent
        } else {
            const cd off = cd(0.0, 1.0) * (c2.center - c1.center) / d * std::sqrt(h2);
            cands.push_back(base + off);
            cands.push_back(base - off);
        }
        std::vector<cd> good;
        for (const cd& p : cands) {
            bool ok = true;
            for (const Vec2& v : {u, ru})
                if (std::abs(circles.at(v).signed_residual(p)) > tol) ok = false;
            if (ok) good.push_back(p);
        }
        if (good.empty())
            throw NoCommonPoint("from_circle_pattern: four circles around face (" +
                                std::to_string(xy.x) + "," + std::to_string(xy.y) +
                                ") share no point");
        cd pick = good.front();
        if (good.size() > 1) {
            auto bit = branch_choices.find(xy);
            if (bit != branch_choices.end() && bit->second) pick = good.back();
        }
        m.set_point({xy.x, xy.y, 0}, pick);
    }
    if (m.empty()) throw WindowTooSmall("from_circle_pattern: no interior face");
    return m;
}

/// One step of the dynamics. Forward appends a point layer and a circle layer
/// at the top, backward at the bottom; the valid region erodes by one ring.
/// New points are second intersections through the adjacent known point, new
/// circles are fit through three of their four points with the fourth point as
/// residual witness.
inline MiquelMap evolve_step(const MiquelMap& m, Direction dir, const Tolerances& tol = {}) {
    if (m.empty()) throw WindowExhausted("evolve_step: empty map");
    MiquelMap out = m;
    const bool fwd = dir == Direction::Forward;
    const int kp = fwd ? m.point_layer_hi() + 1 : m.point_layer_lo() - 1;   // new point layer
    const int kc = fwd ? kp + 1 : kp;                                       // new circle layer
    const int level = fwd ? kp : kp + 1;                                    // known circle level

    // new points
    const int src_layer = fwd ? kp - 1 : kp + 1;
    auto src_it = m.point_layers().find(src_layer);
    if (src_it == m.point_layers().end()) throw WindowExhausted("evolve_step: no source layer");
    for (const auto& [xy, src] : src_it->second) {
        const Vec3 t{xy.x, xy.y, kp};
        const auto [v1, v2] = detail::tetra_circle_pair(t, level);
        if (!m.has_circle(v1) || !m.has_circle(v2)) continue;
        out.set_point(t, second_intersection(m.circle(v1), m.circle(v2), src, tol.incidence()));
    }

    // new circles, one per octahedron in the advancing layer
    auto np_it = out.point_layers().find(kp);
    if (np_it == out.point_layers().end() || np_it->second.empty())
        throw WindowExhausted("evolve_step: window cannot erode further");
    std::set<Vec2> cand;
    for (const auto& [xy, p] : np_it->second)
        for (int dx : {0, 1})
            for (int dy : {0, 1}) cand.insert({xy.x + dx, xy.y + dy});
    for (const Vec2& ab : cand) {
        const Vec3 site{ab.x, ab.y, kc};
        if (!is_vertex_site(site)) continue;
        const std::array<Vec3, 4> quad = {Vec3{ab.x, ab.y, kp}, Vec3{ab.x - 1, ab.y, kp},
                                          Vec3{ab.x, ab.y - 1, kp}, Vec3{ab.x - 1, ab.y - 1, kp}};
        bool full = true;
        for (const Vec3& q : quad)
            if (!out.has_point(q)) { full = false; break; }
        if (!full) continue;

        // genericity guard on the known circle centers of this octahedron
        const Vec3 o{ab.x, ab.y, fwd ? kc - 1 : kc + 1};
        std::vector<cd> centers;
        for (const Vec3& v : octahedron_vertices(o))
            if (m.has_circle(v)) centers.push_back(m.circle(v).center);
        if (centers.size() >= 4 && detail::centers_collinear(centers, 1e-10))
            throw DegenerateOctahedron("evolve_step: collinear circle centers at octahedron " +
                                       site_str(o));

        std::array<Vec3, 4> sorted = quad;
        std::sort(sorted.begin(), sorted.end());
        const Circle c = circumcircle(out.point(sorted[0]), out.point(sorted[1]),
                                      out.point(sorted[2]));
        const double res = std::abs(c.signed_residual(out.point(sorted[3])));
        if (res > tol.miquel_fit()) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3e", res);
            throw MiquelResidualExceeded("evolve_step: residual " + std::string(buf) +
                                         " at octahedron " + site_str(o));
        }
        out.set_circle(site, c);
    }
    return out;
}

inline MiquelMap evolve(const MiquelMap& m, int steps, Direction dir, const Tolerances& tol = {}) {
    MiquelMap out = m;
    for (int s = 0; s < steps; ++s) out = evolve_step(out, dir, tol);
    return out;
}

/// Restriction to the top (forward) or bottom (backward) pattern: two circle
/// layers and the point layer between them. Used by the invertibility tests.
inline MiquelMap slice_pattern(const MiquelMap& m, int k) {
    MiquelMap out;
    auto c0 = m.circle_layers().find(k);
    auto c1 = m.circle_layers().find(k + 1);
    auto p0 = m.point_layers().find(k);
    if (c0 == m.circle_layers().end() || c1 == m.circle_layers().end() ||
        p0 == m.point_layers().end())
        throw LayerNotCovered("slice_pattern: layers " + std::to_string(k) + "," +
                              std::to_string(k + 1) + " not covered");
    for (const auto& [xy, c] : c0->second) out.set_circle({xy.x, xy.y, k}, c);
    for (const auto& [xy, c] : c1->second) out.set_circle({xy.x, xy.y, k + 1}, c);
    for (const auto& [xy, p] : p0->second) out.set_point({xy.x, xy.y, k}, p);
    return out;
}

/// Circle centers of all stored circles.
inline std::map<Vec3, cd> extract_t(const MiquelMap& m) {
    std::map<Vec3, cd> out;
    for (const Vec3& v : m.circle_sites()) out[v] = m.circle(v).center;
    return out;
}

/// Intersection points restricted to black (even-sum) or white tetrahedra.
inline std::map<Vec3, cd> extract_p(const MiquelMap& m, Color color) {
    std::map<Vec3, cd> out;
    for (const Vec3& t : m.point_sites())
        if ((color == Color::Black) == is_black_tetra(t)) out[t] = m.point(t);
    return out;
}

struct CirclePatternLayer {
    int k = 0;
    std::map<Vec2, Circle> circles;
    std::map<Vec2, cd> points;
};

/// Restriction to the circle pattern at level k: circles from layer k on even
/// (x + y + k) parity and from layer k + 1 otherwise, points from layer k.
inline CirclePatternLayer layer(const MiquelMap& m, int k) {
    CirclePatternLayer out;
    out.k = k;
    auto c0 = m.circle_layers().find(k);
    auto c1 = m.circle_layers().find(k + 1);
    if (c0 == m.circle_layers().end() || c1 == m.circle_layers().end())
        throw LayerNotCovered("layer: circle layers " + std::to_string(k) + "," +
                              std::to_string(k + 1) + " not covered");
    for (const auto& [xy, c] : c0->second)
        if (((xy.x + xy.y + k) % 2 + 2) % 2 == 0) out.circles[xy] = c;
    for (const auto& [xy, c] : c1->second)
        if (((xy.x + xy.y + k) % 2 + 2) % 2 == 1) out.circles[xy] = c;
    auto p0 = m.point_layers().find(k);
    if (p0 != m.point_layers().end()) out.points = p0->second;
    return out;
}

/// Every point mapped through M, every circle refit through three mapped
/// points. The pole must avoid all circles.
inline MiquelMap apply_moebius(const MiquelMap& m, const Moebius& M, double tol = 1e-9) {
    MiquelMap out;
    for (const Vec3& v : m.circle_sites()) out.set_circle(v, map_circle(M, m.circle(v), tol));
    for (const Vec3& t : m.point_sites()) out.set_point(t, M.apply_finite(m.point(t)));
    return out;
}

}  // namespace miquel
