#pragma once

#include <array>
#include <map>
#include <vector>

#include "miquel/variables.hpp"

namespace miquel {

// ---------------------------------------------------------------------------
// Linear-fractional solves: every relation used below is a multi-ratio with a
// prescribed value, Moebius in each single argument.

namespace detail {

/// Solve mr(vals) = target for the single unknown at index ui. The unknown
/// occupies one numerator and one denominator factor.
inline cd solve_multiratio(const std::vector<cd>& vals, cd target, std::size_t ui,
                           double singular_tol = 1e-12) {
    const std::size_t n = vals.size();
    cd numc(1.0, 0.0), denc(1.0, 0.0);
    double sn = 1.0, sd = 1.0;
    cd on(0.0), od(0.0);
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = i, b = (i + 1) % n;
        const bool num = (i % 2 == 0);
        if (a == ui) {
            (num ? on : od) = vals[b];
            (num ? sn : sd) = 1.0;
        } else if (b == ui) {
            (num ? on : od) = vals[a];
            (num ? sn : sd) = -1.0;
        } else {
            const cd f = vals[a] - vals[b];
            scale = std::max(scale, std::abs(f));
            (num ? numc : denc) *= f;
        }
    }
    const cd A = numc * sn;
    const cd B = target * denc * sd;
    if (std::abs(A - B) < singular_tol * std::max(std::abs(A), std::abs(B)))
        throw SingularSolve("solve_multiratio: vanishing leading coefficient");
    return (A * on - B * od) / (A - B);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Layer data for the two reconstruction theorems.

/// The layer-k data of the Y-variables: the defining form on sublayer k and
/// the backward form on sublayer k + 1, so that every value is computable from
/// the centers of layers k and k + 1 alone.
inline VariableField extract_y_layer(const MiquelMap& m, int k = 0) {
    VariableField f{VariableKind::Y, {}};
    const auto t = extract_t(m);
    for (const auto& [z, c] : t) {
        try {
            if (z.z == k) f.values[z] = compute_y(t, z);
            else if (z.z == k + 1) f.values[z] = compute_y_backward(t, z);
        } catch (const MissingData&) {
        } catch (const ZeroDenominator&) {
        }
    }
    return f;
}

/// Boundary strip for the Y reconstruction: centers on two consecutive rows,
/// both sublayers.
inline std::map<Vec3, cd> extract_y_boundary(const MiquelMap& m, int j0, int k = 0) {
    std::map<Vec3, cd> out;
    for (const auto& [z, c] : extract_t(m))
        if ((z.y == j0 || z.y == j0 + 1) && (z.z == k || z.z == k + 1)) out[z] = c;
    return out;
}

/// Rebuilds the centers of sublayers k, k + 1 from the layer-k Y-data plus a
/// two-row boundary strip, sweeping row by row away from the strip. Returns
/// the centers on the reachable cone.
inline std::map<Vec3, cd> reconstruct_from_y(const VariableField& ydata,
                                             const std::map<Vec3, cd>& boundary, int k = 0) {
    if (ydata.kind != VariableKind::Y) throw MissingData("reconstruct_from_y: expected Y data");
    if (boundary.empty()) throw InconsistentBoundary("reconstruct_from_y: empty boundary");
    int jlo = 1 << 30, jhi = -(1 << 30), ilo = 1 << 30, ihi = -(1 << 30);
    for (const auto& [z, v] : boundary) {
        if (z.z != k && z.z != k + 1)
            throw InconsistentBoundary("reconstruct_from_y: boundary outside sublayers");
        jlo = std::min(jlo, z.y);
        jhi = std::max(jhi, z.y);
    }
    if (jhi != jlo + 1) throw InconsistentBoundary("reconstruct_from_y: need two boundary rows");
    const int j0 = jlo;
    for (const auto& [z, v] : ydata.values) {
        ilo = std::min(ilo, z.x);
        ihi = std::max(ihi, z.x);
        jhi = std::max(jhi, z.y + 1);
    }

    std::map<Vec3, cd> t(boundary);
    auto get = [&](const Vec3& s) -> const cd* {
        auto it = t.find(s);
        return it == t.end() ? nullptr : &it->second;
    };
    for (int j = j0 + 1; j < jhi; ++j) {
        for (int i = ilo; i <= ihi; ++i) {
            // defining form at (i, j, k) determines the center above at sublayer k + 1
            {
                const Vec3 z{i, j, k};
                auto y = ydata.values.find(z);
                const cd* t0 = get(z);
                if (y != ydata.values.end() && t0) {
                    const cd* tp = get({i + 1, j, k + 1});
                    const cd* tm = get({i - 1, j, k + 1});
                    const cd* td = get({i, j - 1, k + 1});
                    if (tp && tm && td) {
                        const cd den = y->second * (*td - *t0);
                        if (std::abs(den) < 1e-12) throw SingularSolve("reconstruct_from_y");
                        t[{i, j + 1, k + 1}] = *t0 - (*tp - *t0) * (*tm - *t0) / den;
                    }
                }
            }
            // backward form at (i, j, k + 1) determines the center above at sublayer k
            {
                const Vec3 z{i, j, k + 1};
                auto y = ydata.values.find(z);
                const cd* t0 = get(z);
                if (y != ydata.values.end() && t0) {
                    const cd* tp = get({i + 1, j, k});
                    const cd* tm = get({i - 1, j, k});
                    const cd* td = get({i, j - 1, k});
                    if (tp && tm && td) {
                        const cd den = *td - *t0;
                        if (std::abs(den) < 1e-12) throw SingularSolve("reconstruct_from_y");
                        t[{i, j + 1, k}] = *t0 - y->second * (*tp - *t0) * (*tm - *t0) / den;
                    }
                }
            }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// X reconstruction: a worklist over the four-point definition and the
// eight-point consequences of the lattice equation, each Moebius in its one
// unknown. Black data lives on sublayers {k0, k0 + 1}; the white problem is
// the mirror image and is solved by re-indexing through the reflection
// (i, j, k) -> (i, j, -k - 1) on tetra sites and (a, b, c) -> (a, b, -c) on
// vertices.

namespace detail {

struct Stencil8 {
    std::array<Vec3, 8> offsets;   // point sites relative to an odd anchor
    Vec3 xoff;                     // vertex carrying the prescribed value
    bool reciprocal;               // relation value is -1/X instead of -X
};

inline const std::array<Stencil8, 4>& x_stencils() {
    static const std::array<Stencil8, 4> s = {
        Stencil8{{Vec3{2, -1, 0}, {1, -1, 1}, {1, -2, 0}, {0, -1, 0}, {-1, 0, 0}, {0, 0, 1},
                  {0, 1, 0}, {1, 0, 0}},
                 {1, 0, 0},
                 false},
        Stencil8{{Vec3{-1, 2, 0}, {-1, 1, 1}, {-2, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, 1},
                  {1, 0, 0}, {0, 1, 0}},
                 {0, 1, 0},
                 true},
        Stencil8{{Vec3{-2, 1, 0}, {-1, 1, 1}, {-1, 2, 0}, {0, 1, 0}, {1, 0, 0}, {0, 0, 1},
                  {0, -1, 0}, {-1, 0, 0}},
                 {0, 1, 0},
                 false},
        Stencil8{{Vec3{1, -2, 0}, {1, -1, 1}, {2, -1, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                  {-1, 0, 0}, {0, -1, 0}},
                 {1, 0, 0},
                 true},
    };
    return s;
}

struct XRelation {
    std::vector<Vec3> sites;
    cd target;
};

inline std::map<Vec3, cd> reconstruct_x_black(const std::map<Vec3, cd>& xdata,
                                              const std::map<Vec3, cd>& boundary, int k0) {
    // relation list, deterministic order
    std::vector<XRelation> rels;
    for (const auto& [z, x] : xdata) {
        if (z.z == k0 + 1) {
            XRelation r;
            r.sites = {shift(z, {-1, -2}), shift(z, {-2, -3}), z, shift(z, {-1, -3})};
            r.target = -x;
            rels.push_back(std::move(r));
        }
    }
    std::set<Vec3> anchors;
    for (const auto& [z, x] : xdata)
        if (z.z == k0)
            for (const auto& st : x_stencils()) anchors.insert(z - st.xoff);
    for (const Vec3& y : anchors) {
        if (y.z != k0 || is_vertex_site(y)) continue;
        for (const auto& st : x_stencils()) {
            const Vec3 xs = y + st.xoff;
            auto it = xdata.find(xs);
            if (it == xdata.end()) continue;
            if (st.reciprocal && std::abs(it->second) < 1e-12) continue;
            XRelation r;
            for (const Vec3& o : st.offsets) r.sites.push_back(y + o);
            r.target = st.reciprocal ? cd(-1.0) / it->second : -it->second;
            rels.push_back(std::move(r));
        }
    }

    std::map<Vec3, cd> rec(boundary);
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 1000) {
        changed = false;
        for (const XRelation& r : rels) {
            int missing = -1, count = 0;
            for (std::size_t i = 0; i < r.sites.size(); ++i) {
                if (!rec.count(r.sites[i])) {
                    missing = int(i);
                    ++count;
                }
            }
            if (count != 1) continue;
            std::vector<cd> vals(r.sites.size());
            for (std::size_t i = 0; i < r.sites.size(); ++i)
                if (int(i) != missing) vals[i] = rec.at(r.sites[i]);
            try {
                rec[r.sites[missing]] = detail::solve_multiratio(vals, r.target, missing);
                changed = true;
            } catch (const SingularSolve&) {
            }
        }
    }
    return rec;
}

inline Vec3 reflect_tetra(const Vec3& t) { return {t.x, t.y, -t.z - 1}; }
inline Vec3 reflect_vertex(const Vec3& v) { return {v.x, v.y, -v.z}; }

}  // namespace detail

/// Boundary for the X reconstruction: the two crossing double-diagonal strips
/// anchored at sums s0 and differences d0, clipped to the stored slab.
inline std::map<Vec3, cd> extract_x_boundary(const std::map<Vec3, cd>& pfield, int s0, int d0) {
    std::map<Vec3, cd> out;
    for (const auto& [z, v] : pfield) {
        const int s = z.x + z.y, d = z.x - z.y;
        if (s == s0 || s == s0 + 1 || d == d0 || d == d0 + 1) out[z] = v;
    }
    return out;
}

/// Rebuilds the black point slab {k0, k0+1} from X-data on sublayers
/// {k0, k0+1} and the two boundary strips. The white problem is the mirror
/// image: X-data on {k0, k0+1} determines the point slab {-k0-1, -k0}
/// (k0 = 0 gives white points on layers {-1, 0}).
inline std::map<Vec3, cd> reconstruct_from_x(const VariableField& xdata,
                                             const std::map<Vec3, cd>& boundary, Color color,
                                             int k0 = 0) {
    if (color == Color::Black) {
        std::map<Vec3, cd> xv;
        for (const auto& [z, v] : xdata.values) xv[z] = v;
        return detail::reconstruct_x_black(xv, boundary, k0);
    }
    // mirror the white problem onto the black solver
    std::map<Vec3, cd> xv, bd;
    for (const auto& [z, v] : xdata.values) xv[detail::reflect_vertex(z)] = v;
    for (const auto& [z, v] : boundary) bd[detail::reflect_tetra(z)] = v;
    auto rec = detail::reconstruct_x_black(xv, bd, -k0 - 1);
    std::map<Vec3, cd> out;
    for (const auto& [z, v] : rec) out[detail::reflect_tetra(z)] = v;
    return out;
}

// ---------------------------------------------------------------------------
// Map completion from one colour of intersection points.

/// Extends a one-colour dSKP field by one layer in the given direction,
/// solving the -1 multi-ratio once per new site.
inline std::map<Vec3, cd> dskp_extend(const std::map<Vec3, cd>& f, Direction dir) {
    std::map<Vec3, cd> out(f);
    int klo = 1 << 30, khi = -(1 << 30);
    for (const auto& [z, v] : f) {
        klo = std::min(klo, z.z);
        khi = std::max(khi, z.z);
    }
    const bool fwd = dir == Direction::Forward;
    const int kc = fwd ? khi : klo;   // layer of the solve centers
    std::set<Vec3> centers;
    for (const auto& [z, v] : f)
        if (z.z == kc)
            for (int d : {1, -1, 2, -2}) centers.insert(shift(z, {-d}));
    for (const Vec3& c : centers) {
        const Vec3 known = shift(c, {fwd ? -3 : 3});
        const Vec3 unknown = shift(c, {fwd ? 3 : -3});
        std::array<Vec3, 6> order = dskp_stencil(c);
        std::vector<cd> vals(6);
        bool ok = true;
        std::size_t ui = 0;
        for (std::size_t i = 0; i < 6; ++i) {
            if (order[i] == unknown) {
                ui = i;
                continue;
            }
            auto it = f.find(order[i]);
            if (it == f.end()) { ok = false; break; }
            vals[i] = it->second;
        }
        if (!ok || (known != unknown && !f.count(known))) continue;
        try {
            out[unknown] = detail::solve_multiratio(vals, cd(-1.0), ui);
        } catch (const SingularSolve&) {
        }
    }
    return out;
}

/// Completes a map from one colour of points: circles through each vertex's
/// four incident same-colour points (three fit the circle, the fourth is a
/// concyclicity witness), opposite-colour points as second intersections.
inline MiquelMap complete_map_from_pcolor(const std::map<Vec3, cd>& p, Color color,
                                          const Tolerances& tol = {}) {
    MiquelMap m;
    std::set<Vec3> verts;
    for (const auto& [t, v] : p)
        for (const Vec3& z : tetra_vertices(t)) verts.insert(z);
    for (const Vec3& v : verts) {
        std::array<Vec3, 4> inc{};
        if (color == Color::Black)
            inc = {v, shift(v, {-1, -2}), shift(v, {-1, -3}), shift(v, {-2, -3})};
        else
            inc = {shift(v, {-1}), shift(v, {-2}), shift(v, {-3}), shift(v, {-1, -2, -3})};
        std::sort(inc.begin(), inc.end());
        bool full = true;
        for (const Vec3& t : inc)
            if (!p.count(t)) { full = false; break; }
        if (!full) continue;
        const Circle c = circumcircle(p.at(inc[0]), p.at(inc[1]), p.at(inc[2]));
        const double res = std::abs(c.signed_residual(p.at(inc[3])));
        if (res > tol.miquel_fit())
            throw ConcyclicityViolated("complete_map_from_pcolor: witness residual " +
                                       std::to_string(res) + " at vertex " + site_str(v));
        m.set_circle(v, c);
        for (const Vec3& t : inc) m.set_point(t, p.at(t));
    }
    // opposite-colour points where two circles and a shared same-colour point exist
    std::set<Vec3> opp;
    for (const Vec3& v : m.circle_sites())
        for (const Vec3& t : {shift(v, {-1}), shift(v, {-2}), shift(v, {-3}),
                              shift(v, {-1, -2, -3}), v, shift(v, {-1, -2}), shift(v, {-1, -3}),
                              shift(v, {-2, -3})})
            if ((color == Color::Black) != is_black_tetra(t)) opp.insert(t);
    for (const Vec3& t : opp) {
        // lower pair with the source point below, else upper pair with the source above
        const bool white = is_white_tetra(t);
        const std::array<Vec3, 2> lowpair = white
                                                ? std::array<Vec3, 2>{shift(t, {1}), shift(t, {2})}
                                                : std::array<Vec3, 2>{t, shift(t, {1, 2})};
        const std::array<Vec3, 2> highpair =
            white ? std::array<Vec3, 2>{shift(t, {3}), shift(t, {1, 2, 3})}
                  : std::array<Vec3, 2>{shift(t, {1, 3}), shift(t, {2, 3})};
        const Vec3 below{t.x, t.y, t.z - 1}, above{t.x, t.y, t.z + 1};
        try {
            if (m.has_circle(lowpair[0]) && m.has_circle(lowpair[1]) && p.count(below)) {
                m.set_point(t, second_intersection(m.circle(lowpair[0]), m.circle(lowpair[1]),
                                                   p.at(below), tol.incidence()));
            } else if (m.has_circle(highpair[0]) && m.has_circle(highpair[1]) && p.count(above)) {
                m.set_point(t, second_intersection(m.circle(highpair[0]), m.circle(highpair[1]),
                                                   p.at(above), tol.incidence()));
            }
        } catch (const NotOnBothCircles&) {
            throw ConcyclicityViolated("complete_map_from_pcolor: inconsistent source point at " +
                                       site_str(t));
        }
    }
    if (m.empty()) throw WindowTooSmall("complete_map_from_pcolor: nothing completable");
    return m;
}

}  // namespace miquel
