#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "miquel/map.hpp"

namespace miquel {

enum class VariableKind { Y, Xb, Xw, Wb, Ww, Gamma };

struct VariableField {
    VariableKind kind = VariableKind::Y;
    std::map<Vec3, cd> values;
};

// ---------------------------------------------------------------------------
// Per-site variable formulas. Y is indexed by the lattice vertex whose circle
// is replaced next (the octahedron directly above it); compute_y_backward is
// the same octahedron quantity read off at its top vertex, and satisfies
// y_backward(z) = 1 / y(z - 2 e3).

inline cd compute_y(const std::map<Vec3, cd>& t, const Vec3& z) {
    auto get = [&](const Vec3& s) {
        auto it = t.find(s);
        if (it == t.end()) throw MissingData("compute_y: missing center at " + site_str(s));
        return it->second;
    };
    const cd t0 = get(z);
    const cd n1 = get(shift(z, {1, 3})) - t0, n2 = get(shift(z, {-1, 3})) - t0;
    const cd d1 = get(shift(z, {2, 3})) - t0, d2 = get(shift(z, {-2, 3})) - t0;
    if (d1 == cd(0.0) || d2 == cd(0.0)) throw ZeroDenominator("compute_y: coincident centers");
    return -(n1 * n2) / (d1 * d2);
}

inline cd compute_y_backward(const std::map<Vec3, cd>& t, const Vec3& z) {
    auto get = [&](const Vec3& s) {
        auto it = t.find(s);
        if (it == t.end()) throw MissingData("compute_y_backward: missing center at " + site_str(s));
        return it->second;
    };
    const cd t0 = get(z);
    const cd n1 = get(shift(z, {2, -3})) - t0, n2 = get(shift(z, {-2, -3})) - t0;
    const cd d1 = get(shift(z, {1, -3})) - t0, d2 = get(shift(z, {-1, -3})) - t0;
    if (d1 == cd(0.0) || d2 == cd(0.0)) throw ZeroDenominator("compute_y_backward");
    return -(n1 * n2) / (d1 * d2);
}

inline cd compute_y(const MiquelMap& m, const Vec3& z) { return compute_y(extract_t(m), z); }

/// X at a vertex: minus the cross-ratio of the four same-colour points on its
/// circle. Black uses the tetrahedra at sigma_-1-2 z, sigma_-2-3 z, z,
/// sigma_-1-3 z; white the tetrahedra at sigma_-1-2-3 z, sigma_-2 z,
/// sigma_-3 z, sigma_-1 z.
inline cd compute_x(const std::map<Vec3, cd>& p, const Vec3& z, Color color) {
    auto get = [&](const Vec3& s) {
        auto it = p.find(s);
        if (it == p.end()) throw MissingData("compute_x: missing point at " + site_str(s));
        return it->second;
    };
    std::array<Vec3, 4> s{};
    if (color == Color::Black)
        s = {shift(z, {-1, -2}), shift(z, {-2, -3}), z, shift(z, {-1, -3})};
    else
        s = {shift(z, {-1, -2, -3}), shift(z, {-2}), shift(z, {-3}), shift(z, {-1})};
    ExtComplex r = cross_ratio(get(s[0]), get(s[1]), get(s[2]), get(s[3]));
    if (r.is_infinite()) throw IllDefinedMultiRatio("compute_x: infinite cross-ratio");
    return -r.value();
}

/// W at an octahedron: minus the cross-ratio of the four same-colour points
/// of its Miquel configuration.
inline cd compute_w(const std::map<Vec3, cd>& p, const Vec3& o, Color color) {
    auto get = [&](const Vec3& s) {
        auto it = p.find(s);
        if (it == p.end()) throw MissingData("compute_w: missing point at " + site_str(s));
        return it->second;
    };
    std::array<Vec3, 4> s{};
    if (color == Color::Black)
        s = {shift(o, {-1, -2, -3}), shift(o, {-2}), shift(o, {-3}), shift(o, {-1})};
    else
        s = {shift(o, {-1, -2}), shift(o, {-2, -3}), o, shift(o, {-1, -3})};
    ExtComplex r = cross_ratio(get(s[0]), get(s[1]), get(s[2]), get(s[3]));
    if (r.is_infinite()) throw IllDefinedMultiRatio("compute_w: infinite cross-ratio");
    return -r.value();
}

// ---------------------------------------------------------------------------
// Whole-field evaluation. Sites run over stored data in sorted order; sites
// with incomplete stencils are skipped.

inline VariableField y_field(const MiquelMap& m) {
    VariableField f{VariableKind::Y, {}};
    const auto t = extract_t(m);
    for (const auto& [z, c] : t) {
        try {
            f.values[z] = compute_y(t, z);
        } catch (const MissingData&) {
        } catch (const ZeroDenominator&) {
        }
    }
    return f;
}

inline VariableField x_field(const MiquelMap& m, Color color) {
    VariableField f{color == Color::Black ? VariableKind::Xb : VariableKind::Xw, {}};
    const auto p = extract_p(m, color);
    for (const Vec3& v : m.circle_sites()) {
        try {
            f.values[v] = compute_x(p, v, color);
        } catch (const MissingData&) {
        } catch (const IllDefinedMultiRatio&) {
        }
    }
    return f;
}

inline VariableField w_field(const MiquelMap& m, Color color) {
    VariableField f{color == Color::Black ? VariableKind::Wb : VariableKind::Ww, {}};
    const auto p = extract_p(m, color);
    std::set<Vec3> cand;
    for (const auto& [s, v] : p) {
        if (color == Color::Black)
            for (const Vec3& o : {shift(s, {1, 2, 3}), shift(s, {1}), shift(s, {2}), shift(s, {3})})
                cand.insert(o);
        else
            for (const Vec3& o : {s, shift(s, {1, 2}), shift(s, {1, 3}), shift(s, {2, 3})})
                cand.insert(o);
    }
    for (const Vec3& o : cand) {
        if (!is_octahedron_site(o)) continue;
        try {
            f.values[o] = compute_w(p, o, color);
        } catch (const MissingData&) {
        } catch (const IllDefinedMultiRatio&) {
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Edge cross-ratios of a circle-pattern layer. Edges are keyed by their base
// vertex and orientation; the four points are taken counterclockwise
// (vertex, face, vertex, face).

struct GammaEdge {
    Vec2 base;
    bool vertical = false;
    friend auto operator<=>(const GammaEdge&, const GammaEdge&) = default;
};

struct GammaField {
    int k = 0;
    std::map<GammaEdge, cd> values;
};

inline cd compute_gamma(const CirclePatternLayer& lay, const GammaEdge& e) {
    auto tt = [&](const Vec2& v) -> cd {
        auto it = lay.circles.find(v);
        if (it == lay.circles.end()) throw MissingData("compute_gamma: missing circle");
        return it->second.center;
    };
    auto pp = [&](const Vec2& f) -> cd {
        auto it = lay.points.find(f);
        if (it == lay.points.end()) throw MissingData("compute_gamma: missing point");
        return it->second;
    };
    const Vec2 v = e.base;
    ExtComplex r = e.vertical ? cross_ratio(tt(v), pp(v), tt({v.x, v.y + 1}), pp({v.x - 1, v.y}))
                              : cross_ratio(tt(v), pp({v.x, v.y - 1}), tt({v.x + 1, v.y}), pp(v));
    if (r.is_infinite()) throw IllDefinedMultiRatio("compute_gamma: infinite cross-ratio");
    return r.value();
}

inline GammaField gamma_field(const MiquelMap& m, int k) {
    GammaField g;
    g.k = k;
    const CirclePatternLayer lay = layer(m, k);
    for (const auto& [v, c] : lay.circles) {
        for (bool vertical : {false, true}) {
            try {
                g.values[{v, vertical}] = compute_gamma(lay, {v, vertical});
            } catch (const MissingData&) {
            } catch (const IllDefinedMultiRatio&) {
            }
        }
    }
    return g;
}

/// Products of the four edge cross-ratios around each vertex of the layer;
/// all equal to one exactly when the pattern is integrable.
inline std::map<Vec2, cd> gamma_vertex_products(const GammaField& g) {
    std::map<Vec2, cd> out;
    for (const auto& [e, val] : g.values) {
        if (e.vertical) continue;
        const Vec2 v = e.base;
        std::array<GammaEdge, 4> edges = {GammaEdge{v, false}, GammaEdge{{v.x - 1, v.y}, false},
                                          GammaEdge{v, true}, GammaEdge{{v.x, v.y - 1}, true}};
        cd prod(1.0, 0.0);
        bool full = true;
        for (const GammaEdge& ee : edges) {
            auto it = g.values.find(ee);
            if (it == g.values.end()) { full = false; break; }
            prod *= it->second;
        }
        if (full) out[v] = prod;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Y-system recurrence:
//   U(s3 z) U(s-3 z) = (1 + U(s2 z))(1 + U(s-2 z)) / ((1 + 1/U(s1 z))(1 + 1/U(s-1 z)))
// at every site z of the opposite parity class.

struct RecurrenceStats {
    int sites = 0;
    int skipped_singular = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
};

inline double ysystem_residual(const std::map<Vec3, cd>& f, const Vec3& z, double singular_tol = 1e-12) {
    auto get = [&](const Vec3& s) {
        auto it = f.find(s);
        if (it == f.end()) throw MissingData("ysystem_residual: missing value at " + site_str(s));
        return it->second;
    };
    const cd u3 = get(shift(z, {3})), um3 = get(shift(z, {-3}));
    const cd u2 = get(shift(z, {2})), um2 = get(shift(z, {-2}));
    const cd u1 = get(shift(z, {1})), um1 = get(shift(z, {-1}));
    for (const cd& u : {u1, um1})
        if (std::abs(u) < singular_tol || std::abs(u + 1.0) < singular_tol)
            throw SingularRecurrence("ysystem_residual: factor 1 + 1/U vanishes");
    for (const cd& u : {u2, um2})
        if (std::abs(u + 1.0) < singular_tol)
            throw SingularRecurrence("ysystem_residual: factor 1 + U vanishes");
    const cd lhs = u3 * um3;
    const cd rhs = (1.0 + u2) * (1.0 + um2) / ((1.0 + 1.0 / u1) * (1.0 + 1.0 / um1));
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

inline RecurrenceStats ysystem_stats(const VariableField& f) {
    RecurrenceStats st;
    std::set<Vec3> cand;
    for (const auto& [s, v] : f.values)
        for (int d : {1, -1, 2, -2, 3, -3}) cand.insert(shift(s, {-d}));
    double sum = 0.0;
    for (const Vec3& z : cand) {
        bool full = true;
        for (int d : {1, -1, 2, -2, 3, -3})
            if (!f.values.count(shift(z, {d}))) { full = false; break; }
        if (!full) continue;
        try {
            const double r = ysystem_residual(f.values, z);
            st.sites++;
            sum += r;
            st.max_residual = std::max(st.max_residual, r);
        } catch (const SingularRecurrence&) {
            st.skipped_singular++;
        }
    }
    if (st.sites) st.mean_residual = sum / st.sites;
    return st;
}

// ---------------------------------------------------------------------------
// Zig-zag multipliers of an integrable layer. The layer is read as a rhombic
// net on the diagonal lattice (m, n) = (x + y, y - x); each track between
// consecutive diagonals carries a constant edge vector whose square is the
// track's multiplier.

struct ZigzagData {
    std::map<int, cd> horizontal;   // track m: vector between diagonals m - 1 and m
    std::map<int, cd> vertical;     // track n
    double rhombicity = 0.0;        // worst in-track vector spread
};

inline ZigzagData zigzag_multipliers(const MiquelMap& m, int k) {
    const CirclePatternLayer lay = layer(m, k);
    std::map<std::pair<int, int>, cd> G;
    for (const auto& [v, c] : lay.circles) G[{v.x + v.y, v.y - v.x}] = c.center;
    for (const auto& [f, p] : lay.points) G[{f.x + f.y + 1, f.y - f.x}] = p;
    ZigzagData out;
    std::map<int, std::vector<cd>> hv, vv;
    for (const auto& [mn, val] : G) {
        auto right = G.find({mn.first + 1, mn.second});
        if (right != G.end()) hv[mn.first + 1].push_back(right->second - val);
        auto up = G.find({mn.first, mn.second + 1});
        if (up != G.end()) vv[mn.second + 1].push_back(up->second - val);
    }
    auto reduce = [&](const std::map<int, std::vector<cd>>& in, std::map<int, cd>& dst) {
        for (const auto& [track, vecs] : in) {
            cd first = vecs.front();
            for (const cd& v : vecs) out.rhombicity = std::max(out.rhombicity, std::abs(v - first));
            dst[track] = first * first;   // the track multiplier is the squared unit vector
        }
    };
    reduce(hv, out.horizontal);
    reduce(vv, out.vertical);
    return out;
}

}  // namespace miquel
