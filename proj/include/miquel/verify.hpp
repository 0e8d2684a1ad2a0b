#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "miquel/reconstruct.hpp"
#include "miquel/rng.hpp"
#include "miquel/dd.hpp"

namespace miquel {

struct CheckResult {
    std::string name;
    std::string description;    // the mathematical claim being tested
    int site_count = 0;
    int skipped_singular = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double threshold = 0.0;
    bool must_exceed = false;   // non-invariance claims must beat the threshold
    bool pass = false;
};

struct VerificationReport {
    std::string map_id;
    double tol_scale = 1.0;
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

namespace detail {

struct Accum {
    int n = 0;
    int skipped = 0;
    double mx = 0.0;
    double sum = 0.0;
    void add(double r) {
        ++n;
        sum += r;
        mx = std::max(mx, r);
    }
    void finish(CheckResult& c) const {
        c.site_count = n;
        c.skipped_singular = skipped;
        c.max_residual = mx;
        c.mean_residual = n ? sum / n : 0.0;
    }
};

inline CheckResult make_result(const std::string& name, const std::string& desc, const Accum& a,
                               double threshold, bool must_exceed = false) {
    CheckResult c;
    c.name = name;
    c.description = desc;
    a.finish(c);
    c.threshold = threshold;
    c.must_exceed = must_exceed;
    if (a.n == 0)
        throw WindowTooSmall("check '" + name + "' has no applicable site");
    c.pass = must_exceed ? (c.max_residual > threshold) : (c.max_residual <= threshold);
    return c;
}

/// dSKP residual field of one map: |mr + 1| at each full octahedral stencil.
inline Accum dskp_accum(const std::map<Vec3, cd>& f, bool extended = false) {
    Accum a;
    std::set<Vec3> cand;
    for (const auto& [z, v] : f)
        for (int d : {1, -1, 2, -2, 3, -3}) cand.insert(shift(z, {-d}));
    for (const Vec3& o : cand) {
        std::vector<cd> pts;
        pts.reserve(6);
        bool full = true;
        for (const Vec3& v : dskp_stencil(o)) {
            auto it = f.find(v);
            if (it == f.end()) { full = false; break; }
            pts.push_back(it->second);
        }
        if (!full) continue;
        const cd mr = extended ? multi_ratio_dd(std::span<const cd>(pts))
                               : multi_ratio(std::span<const cd>(pts));
        a.add(std::abs(mr + cd(1.0)));
    }
    return a;
}

inline std::vector<Moebius> probe_transforms(const MiquelMap& m, std::uint64_t seed = 9001) {
    // poles pushed well outside the pattern so every circle maps to a circle
    double lo_x = 1e30, hi_x = -1e30, lo_y = 1e30, hi_y = -1e30, rmax = 0.0;
    for (const Vec3& v : m.circle_sites()) {
        const Circle& c = m.circle(v);
        lo_x = std::min(lo_x, c.center.real());
        hi_x = std::max(hi_x, c.center.real());
        lo_y = std::min(lo_y, c.center.imag());
        hi_y = std::max(hi_y, c.center.imag());
        rmax = std::max(rmax, c.radius);
    }
    const cd mid((lo_x + hi_x) / 2, (lo_y + hi_y) / 2);
    const double R = std::hypot(hi_x - lo_x, hi_y - lo_y) / 2 + 3.0 * rmax + 1.0;
    Rng rng(seed);
    std::vector<Moebius> out;
    for (int i = 0; i < 3; ++i) {
        // M(z) = (z + b) / (cc z + 1), pole at -1/cc
        const cd pole = mid + 3.0 * R * std::polar(1.0, rng.uniform(0.0, 6.283185307179586));
        const cd cc = -1.0 / pole;
        const cd b(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        out.push_back(Moebius(cd(1.0), b, cc, cd(1.0)));
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual checks. Each returns a CheckResult evaluated on every applicable
// interior site, skipping and counting singular ones.

inline CheckResult check_incidence(const MiquelMap& m, const Tolerances& tol) {
    detail::Accum a;
    for (const Vec3& t : m.point_sites()) {
        const cd p = m.point(t);
        for (const Vec3& v : tetra_vertices(t))
            if (m.has_circle(v)) a.add(std::abs(m.circle(v).signed_residual(p)));
    }
    return detail::make_result("incidence", "every stored intersection point lies on its incident circles",
                               a, tol.incidence());
}

inline CheckResult check_dskp_t(const MiquelMap& m, const Tolerances& tol) {
    return detail::make_result(
        "dskp_t", "the six circle centers around each octahedron have multi-ratio -1",
        detail::dskp_accum(extract_t(m), tol.extended_precision), tol.dskp());
}

inline CheckResult check_dskp_p(const MiquelMap& m, Color color, const Tolerances& tol) {
    const std::string n = color == Color::Black ? "dskp_p_black" : "dskp_p_white";
    return detail::make_result(
        n, "one colour class of intersection points satisfies the -1 multi-ratio on octahedra",
        detail::dskp_accum(extract_p(m, color), tol.extended_precision), tol.dskp());
}

inline CheckResult check_a4(const MiquelMap& m, const Tolerances& tol) {
    std::map<Vec5, cd> vals;
    for (const Vec3& v : m.circle_sites()) vals[phi_vertex(v)] = m.circle(v).center;
    for (const Vec3& t : m.point_sites())
        vals[is_black_tetra(t) ? phi_black(t) : phi_white(t)] = m.point(t);
    std::set<Vec5> sites;
    for (const auto& [w, v] : vals) sites.insert(w);
    detail::Accum a;
    for (const A4Octahedron& oct : a4_octahedra_touching(sites)) {
        std::vector<cd> pts;
        pts.reserve(6);
        for (const Vec5& s : oct.sites) pts.push_back(vals.at(s));
        const cd mr = tol.extended_precision ? multi_ratio_dd(std::span<const cd>(pts))
                                             : multi_ratio(std::span<const cd>(pts));
        a.add(std::abs(mr + cd(1.0)));
    }
    return detail::make_result(
        "a4", "centers and points combined satisfy the -1 multi-ratio on the embedded 4d octahedra",
        a, tol.dskp());
}

inline CheckResult check_clifford(const MiquelMap& m, const Tolerances& tol) {
    detail::Accum a;
    for (const Vec3& t : m.point_sites()) {
        const auto verts = tetra_vertices(t);
        bool full = true;
        for (const Vec3& v : verts)
            if (!m.has_circle(v)) { full = false; break; }
        if (!full) continue;
        const cd p = m.point(t);
        // second intersection points of the six circle pairs through p, ordered
        // with complementary pairs opposite
        auto sp = [&](int i, int j) {
            return second_intersection(m.circle(verts[i]), m.circle(verts[j]), p, tol.incidence());
        };
        try {
            const std::vector<cd> pts = {sp(0, 1), sp(0, 2), sp(0, 3), sp(2, 3), sp(1, 3), sp(1, 2)};
            a.add(std::abs(multi_ratio(std::span<const cd>(pts)) + cd(1.0)));
        } catch (const NotOnBothCircles&) {
            a.skipped++;
        }
    }
    return detail::make_result(
        "clifford",
        "the six pairwise second intersections of four circles through a point have multi-ratio -1",
        a, tol.dskp());
}

inline CheckResult check_miquel_residual(const MiquelMap& m, const Tolerances& tol) {
    detail::Accum a;
    std::set<Vec3> cand;
    for (const Vec3& z : m.circle_sites()) {
        cand.insert(shift(z, {3}));
        cand.insert(shift(z, {-3}));
    }
    for (const Vec3& o : cand) {
        if (!is_octahedron_site(o)) continue;
        bool full = m.has_circle(shift(o, {3})) && m.has_circle(shift(o, {-3}));
        for (int d : {1, -1, 2, -2}) full = full && m.has_circle(shift(o, {d}));
        for (const Vec3& tt : octahedron_tetrahedra(o)) full = full && m.has_point(tt);
        if (!full) continue;
        // the four upper points are second intersections through the lower ones
        const Vec3 up[4] = {o, shift(o, {-1}), shift(o, {-2}), shift(o, {-1, -2})};
        double worst = 0.0;
        bool ok = true;
        for (const Vec3& tt : up) {
            const auto [v1, v2] = detail::tetra_circle_pair(tt, o.z);
            try {
                const cd q = second_intersection(m.circle(v1), m.circle(v2),
                                                 m.point({tt.x, tt.y, tt.z - 1}), tol.incidence());
                worst = std::max(worst, std::abs(q - m.point(tt)) /
                                            std::max(1.0, m.circle(v1).radius));
            } catch (const NotOnBothCircles&) {
                ok = false;
            }
        }
        const Circle& top = m.circle(shift(o, {3}));
        for (const Vec3& tt : up) worst = std::max(worst, std::abs(top.signed_residual(m.point(tt))));
        if (ok) a.add(worst);
        else a.skipped++;
    }
    return detail::make_result(
        "miquel_residual",
        "each octahedron's new points are the second intersections and are concyclic on the new circle",
        a, tol.miquel_fit());
}

inline CheckResult check_ysystem(const MiquelMap& m, VariableKind kind, const Tolerances& tol) {
    VariableField f;
    std::string name;
    switch (kind) {
        case VariableKind::Y: f = y_field(m); name = "ysystem_y"; break;
        case VariableKind::Xb: f = x_field(m, Color::Black); name = "ysystem_xb"; break;
        case VariableKind::Xw: f = x_field(m, Color::White); name = "ysystem_xw"; break;
        case VariableKind::Wb: f = w_field(m, Color::Black); name = "ysystem_wb"; break;
        case VariableKind::Ww: f = w_field(m, Color::White); name = "ysystem_ww"; break;
        default: throw Error("check_ysystem: bad kind");
    }
    const RecurrenceStats st = ysystem_stats(f);
    detail::Accum a;
    a.n = st.sites;
    a.skipped = st.skipped_singular;
    a.mx = st.max_residual;
    a.sum = st.mean_residual * st.sites;
    return detail::make_result(name, "the variable field satisfies the Y-system recurrence",
                               a, tol.ysystem());
}

inline CheckResult check_realness(const MiquelMap& m, const Tolerances& tol) {
    detail::Accum a;
    for (const auto& [z, v] : y_field(m).values) a.add(rel_imag(v));
    for (Color c : {Color::Black, Color::White})
        for (const auto& [z, v] : x_field(m, c).values) a.add(rel_imag(v));
    return detail::make_result("realness",
                               "Y and both X variable families are real on a valid map", a,
                               tol.realness());
}

inline CheckResult check_w_conjugacy(const MiquelMap& m, const Tolerances& tol) {
    const VariableField wb = w_field(m, Color::Black), ww = w_field(m, Color::White);
    detail::Accum a;
    for (const auto& [z, v] : wb.values) {
        auto it = ww.values.find(z);
        if (it != ww.values.end())
            a.add(std::abs(it->second - std::conj(v)) /
                  std::max({1.0, std::abs(v), std::abs(it->second)}));
    }
    return detail::make_result("w_conjugacy",
                               "the two W variable families are complex conjugates", a,
                               tol.conjugacy());
}

inline CheckResult check_moebius_invariance(const MiquelMap& m, const Tolerances& tol) {
    const VariableField xb = x_field(m, Color::Black), xw = x_field(m, Color::White);
    const VariableField wb = w_field(m, Color::Black), ww = w_field(m, Color::White);
    detail::Accum a;
    for (const Moebius& M : detail::probe_transforms(m)) {
        const MiquelMap im = apply_moebius(m, M);
        for (const auto& [f0, f1] : {std::pair{xb, x_field(im, Color::Black)},
                                     std::pair{xw, x_field(im, Color::White)},
                                     std::pair{wb, w_field(im, Color::Black)},
                                     std::pair{ww, w_field(im, Color::White)}})
            for (const auto& [z, v] : f0.values) {
                auto it = f1.values.find(z);
                if (it != f1.values.end()) a.add(rel_diff(v, it->second));
            }
    }
    return detail::make_result("moebius_invariance",
                               "X and W fields are unchanged by Moebius transforms of the pattern",
                               a, tol.moebius_invariance());
}

inline CheckResult check_moebius_y_changes(const MiquelMap& m, const Tolerances& tol) {
    const VariableField y0 = y_field(m);
    detail::Accum a;
    for (const Moebius& M : detail::probe_transforms(m)) {
        const VariableField y1 = y_field(apply_moebius(m, M));
        for (const auto& [z, v] : y0.values) {
            auto it = y1.values.find(z);
            if (it != y1.values.end()) a.add(std::abs(v - it->second));
        }
    }
    return detail::make_result("moebius_y_changes",
                               "Y variables are not Moebius invariant: some value must move", a,
                               tol.must_exceed(), /*must_exceed=*/true);
}

// --- subvariety checks ------------------------------------------------------

/// Integrability data of a map: worst of Im W, W-coincidence and the vertex
/// products of edge cross-ratios, each of which vanishes exactly on
/// integrable patterns.
struct IntegrabilityData {
    double max_im_w = 0.0;
    double max_w_mismatch = 0.0;
    double max_gamma_product = 0.0;
    int sites = 0;
};

inline IntegrabilityData integrability_data(const MiquelMap& m) {
    IntegrabilityData d;
    const VariableField wb = w_field(m, Color::Black), ww = w_field(m, Color::White);
    for (const auto& [z, v] : wb.values) {
        d.max_im_w = std::max(d.max_im_w, rel_imag(v));
        auto it = ww.values.find(z);
        if (it != ww.values.end())
            d.max_w_mismatch = std::max(d.max_w_mismatch, rel_diff(v, it->second));
        d.sites++;
    }
    for (int k = m.circle_layer_lo(); k + 1 <= m.circle_layer_hi(); ++k) {
        if (!m.point_layers().count(k)) continue;
        for (const auto& [v, prod] : gamma_vertex_products(gamma_field(m, k))) {
            d.max_gamma_product = std::max(d.max_gamma_product, std::abs(prod - cd(1.0)));
            d.sites++;
        }
    }
    return d;
}

inline CheckResult check_integrable(const MiquelMap& m, const Tolerances& tol) {
    const IntegrabilityData d = integrability_data(m);
    detail::Accum a;
    a.n = d.sites;
    a.mx = std::max({d.max_im_w, d.max_w_mismatch, d.max_gamma_product});
    a.sum = a.mx;
    return detail::make_result(
        "integrable",
        "W is real, the two W families coincide and all vertex products of edge cross-ratios are 1",
        a, tol.gamma());
}

inline CheckResult check_nonintegrable(const MiquelMap& m, const Tolerances& tol) {
    const IntegrabilityData d = integrability_data(m);
    detail::Accum a;
    a.n = d.sites;
    a.mx = std::min({d.max_im_w, d.max_w_mismatch, d.max_gamma_product});
    a.sum = a.mx;
    return detail::make_result(
        "nonintegrable",
        "all three integrability criteria fail together on a non-integrable map", a,
        tol.must_exceed(), /*must_exceed=*/true);
}

/// Around every even face of level zero the products of the X values at
/// opposite corners agree.
inline CheckResult check_resistor(const MiquelMap& m, const Tolerances& tol) {
    const VariableField xb = x_field(m, Color::Black);
    detail::Accum a;
    for (const auto& [z, v] : xb.values) {
        if (z.z != 0 || !is_black_tetra(z)) continue;
        auto x12 = xb.values.find(shift(z, {1, 2}));
        auto x13 = xb.values.find(shift(z, {1, 3}));
        auto x23 = xb.values.find(shift(z, {2, 3}));
        if (x12 == xb.values.end() || x13 == xb.values.end() || x23 == xb.values.end()) continue;
        const cd lhs = v * x12->second, rhs = x13->second * x23->second;
        a.add(std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
    }
    return detail::make_result(
        "resistor", "opposite-corner X products around level-zero even faces agree", a,
        tol.subvariety());
}

/// On orthodiagonal maps the black X field is the Y field reflected through
/// the rectangle layer: X(i,j,k) = Y(i,j,-k).
inline CheckResult check_harmonic_xy(const MiquelMap& m, const Tolerances& tol) {
    const VariableField y = y_field(m), xb = x_field(m, Color::Black);
    detail::Accum a;
    for (const auto& [z, x] : xb.values) {
        auto it = y.values.find({z.x, z.y, -z.z});
        if (it != y.values.end())
            a.add(std::abs(x - it->second) / std::max({1.0, std::abs(x), std::abs(it->second)}));
    }
    return detail::make_result("harmonic_xy",
                               "X of the black points equals Y reflected through the rectangle layer",
                               a, tol.subvariety());
}

/// Focal identities of orthodiagonal maps: the two poles of each level-zero
/// quad are rational in the four equatorial black points.
inline CheckResult check_focal(const MiquelMap& m, const Tolerances& tol) {
    detail::Accum a;
    for (const Vec3& t : m.point_sites()) {
        if (t.z != 0 || !is_white_tetra(t)) continue;
        const Vec3 s1 = shift(t, {1}), sm1 = shift(t, {-1}), s2 = shift(t, {2}), sm2 = shift(t, {-2});
        const Vec3 s3 = shift(t, {3}), sm3 = shift(t, {-3});
        if (!(m.has_point(s1) && m.has_point(sm1) && m.has_point(s2) && m.has_point(sm2) &&
              m.has_point(s3) && m.has_point(sm3)))
            continue;
        const cd p1 = m.point(s1), pm1 = m.point(sm1), p2 = m.point(s2), pm2 = m.point(sm2);
        const cd down = (p1 * p2 - pm1 * pm2) / (p1 + p2 - pm1 - pm2);
        const cd up = (p1 * pm2 - pm1 * p2) / (p1 + pm2 - pm1 - p2);
        const double scale = std::max({1.0, std::abs(p1), std::abs(p2)});
        a.add(std::abs(down - m.point(sm3)) / scale);
        a.add(std::abs(up - m.point(s3)) / scale);
    }
    return detail::make_result("focal",
                               "both poles of each orthodiagonal quad obey their rational formulas",
                               a, tol.subvariety());
}

/// Time symmetry of tangent-circle maps: Y pairs to its backward form as a
/// product of one, X and W swap colour across level zero.
inline CheckResult check_s_symmetry(const MiquelMap& m, const Tolerances& tol) {
    const auto t = extract_t(m);
    const VariableField y = y_field(m);
    const VariableField xb = x_field(m, Color::Black), xw = x_field(m, Color::White);
    const VariableField wb = w_field(m, Color::Black), ww = w_field(m, Color::White);
    detail::Accum a;
    for (const auto& [z, v] : y.values) {
        const Vec3 mirror{z.x, z.y, -z.z};
        try {
            a.add(std::abs(v * compute_y_backward(t, mirror) - 1.0));
        } catch (const MissingData&) {
        } catch (const ZeroDenominator&) {
            a.skipped++;
        }
    }
    for (const auto& [f, g] : {std::pair{xb, xw}, std::pair{wb, ww}})
        for (const auto& [z, v] : f.values) {
            auto it = g.values.find({z.x, z.y, -z.z});
            if (it != g.values.end()) a.add(rel_diff(v, it->second));
        }
    return detail::make_result(
        "s_symmetry",
        "tangent-circle maps run backwards into themselves: Y products are 1 and X, W swap colour",
        a, tol.subvariety());
}

/// One evolution step permutes the zig-zag multipliers of an integrable map in
/// adjacent pairs; the multiset on pair-aligned track ranges is preserved.
inline CheckResult check_zigzag(const MiquelMap& m, const Tolerances& tol) {
    const int k0 = m.point_layer_lo();
    if (!m.point_layers().count(k0 + 1))
        throw WindowTooSmall("check_zigzag: needs two consecutive pattern layers");
    const ZigzagData z0 = zigzag_multipliers(m, k0), z1 = zigzag_multipliers(m, k0 + 1);
    detail::Accum a;
    a.add(z0.rhombicity);
    a.add(z1.rhombicity);
    auto compare = [&](const std::map<int, cd>& f0, const std::map<int, cd>& f1) {
        std::vector<int> tracks;
        for (const auto& [tr, v] : f0)
            if (f1.count(tr)) tracks.push_back(tr);
        if (tracks.size() < 4) return;
        // trim to a pair-aligned range; the swapped pairing alternates with the
        // level, so both alignments are tried and the matching one counts
        double best = 1e300;
        for (int align : {0, 1}) {
            int lo = tracks.front(), hi = tracks.back();
            if (((lo % 2) + 2) % 2 != align) ++lo;
            if (((hi % 2) + 2) % 2 == align) --hi;
            std::vector<cd> m0, m1;
            bool full = true;
            for (int tr = lo; tr <= hi && full; ++tr) {
                if (!f0.count(tr) || !f1.count(tr)) full = false;
                else {
                    m0.push_back(f0.at(tr));
                    m1.push_back(f1.at(tr));
                }
            }
            if (!full || m0.empty()) continue;
            auto key = [](const cd& x, const cd& y) {
                return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
            };
            std::sort(m0.begin(), m0.end(), key);
            std::sort(m1.begin(), m1.end(), key);
            double worst = 0.0;
            for (std::size_t i = 0; i < m0.size(); ++i)
                worst = std::max(worst, std::abs(m0[i] - m1[i]));
            best = std::min(best, worst);
        }
        if (best < 1e300) a.add(best);
    };
    compare(z0.horizontal, z1.horizontal);
    compare(z0.vertical, z1.vertical);
    return detail::make_result(
        "zigzag", "one step preserves the multiset of zig-zag multipliers (swapped in pairs)", a,
        tol.gamma());
}

inline CheckResult check_reconstruction_y(const MiquelMap& m, const Tolerances& tol) {
    const auto t = extract_t(m);
    const VariableField yd = extract_y_layer(m, 0);
    int jlo = 1 << 30;
    for (const auto& [z, v] : t)
        if (z.z == 0 || z.z == 1) jlo = std::min(jlo, z.y);
    const auto rec = reconstruct_from_y(yd, extract_y_boundary(m, jlo, 0), 0);
    detail::Accum a;
    const double scale = m.scale();
    for (const auto& [z, v] : rec) {
        auto it = t.find(z);
        if (it != t.end()) a.add(std::abs(v - it->second) / scale);
    }
    return detail::make_result("reconstruction_y",
                               "layer-zero Y data plus a boundary strip rebuild the center map", a,
                               tol.reconstruction());
}

inline CheckResult check_reconstruction_x(const MiquelMap& m, Color color, const Tolerances& tol) {
    const VariableField xf = x_field(m, color);
    VariableField xd{xf.kind, {}};
    for (const auto& [z, v] : xf.values)
        if (z.z == 0 || z.z == 1) xd.values[z] = v;
    const auto p = extract_p(m, color);
    std::map<Vec3, cd> slab;
    const int klo = color == Color::Black ? 0 : -1;
    for (const auto& [z, v] : p)
        if (z.z == klo || z.z == klo + 1) slab[z] = v;
    if (slab.empty() || xd.values.empty())
        throw WindowTooSmall("check_reconstruction_x: no slab data");
    int slo = 1 << 30, shi = -(1 << 30), dlo = 1 << 30, dhi = -(1 << 30);
    for (const auto& [z, v] : slab) {
        slo = std::min(slo, z.x + z.y);
        shi = std::max(shi, z.x + z.y);
        dlo = std::min(dlo, z.x - z.y);
        dhi = std::max(dhi, z.x - z.y);
    }
    const auto bd = extract_x_boundary(slab, (slo + shi) / 2, (dlo + dhi) / 2);
    const auto rec = reconstruct_from_x(xd, bd, color, 0);
    detail::Accum a;
    const double scale = m.scale();
    for (const auto& [z, v] : rec) {
        auto it = slab.find(z);
        if (it != slab.end()) a.add(std::abs(v - it->second) / scale);
    }
    CheckResult c = detail::make_result(
        color == Color::Black ? "reconstruction_xb" : "reconstruction_xw",
        "layer-zero X data plus two diagonal strips rebuild the point slab", a,
        tol.reconstruction());
    return c;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& default_suites() {
    static const std::vector<std::string> s = {
        "incidence", "dskp_t",   "dskp_p",           "a4",
        "clifford",  "miquel_residual", "ysystem_all", "realness",
        "w_conjugacy", "moebius_invariance", "reconstruction_roundtrip"};
    return s;
}

/// Runs the named suites on a map. Suite tokens: the defaults above plus the
/// class-specific "integrable", "nonintegrable", "zigzag", "resistor",
/// "harmonic", "focal", "s_symmetry", and "all" for the defaults.
inline VerificationReport run_suite(const MiquelMap& m, std::vector<std::string> suites,
                                    const Tolerances& tol = {}, const std::string& map_id = "") {
    if (m.empty()) throw WindowTooSmall("run_suite: empty map");
    VerificationReport rep;
    rep.map_id = map_id;
    rep.tol_scale = tol.scale;
    std::vector<std::string> expanded;
    for (const std::string& s : suites) {
        if (s == "all")
            for (const std::string& d : default_suites()) expanded.push_back(d);
        else
            expanded.push_back(s);
    }
    for (const std::string& s : expanded) {
        if (s == "incidence") rep.checks.push_back(check_incidence(m, tol));
        else if (s == "dskp_t") rep.checks.push_back(check_dskp_t(m, tol));
        else if (s == "dskp_p") {
            rep.checks.push_back(check_dskp_p(m, Color::Black, tol));
            rep.checks.push_back(check_dskp_p(m, Color::White, tol));
        } else if (s == "a4") rep.checks.push_back(check_a4(m, tol));
        else if (s == "clifford") rep.checks.push_back(check_clifford(m, tol));
        else if (s == "miquel_residual") rep.checks.push_back(check_miquel_residual(m, tol));
        else if (s == "ysystem_all") {
            for (VariableKind k : {VariableKind::Y, VariableKind::Xb, VariableKind::Xw,
                                   VariableKind::Wb, VariableKind::Ww})
                rep.checks.push_back(check_ysystem(m, k, tol));
        } else if (s == "realness") rep.checks.push_back(check_realness(m, tol));
        else if (s == "w_conjugacy") rep.checks.push_back(check_w_conjugacy(m, tol));
        else if (s == "moebius_invariance") {
            rep.checks.push_back(check_moebius_invariance(m, tol));
            rep.checks.push_back(check_moebius_y_changes(m, tol));
        } else if (s == "reconstruction_roundtrip") {
            rep.checks.push_back(check_reconstruction_y(m, tol));
            rep.checks.push_back(check_reconstruction_x(m, Color::Black, tol));
            rep.checks.push_back(check_reconstruction_x(m, Color::White, tol));
        } else if (s == "integrable") rep.checks.push_back(check_integrable(m, tol));
        else if (s == "nonintegrable") rep.checks.push_back(check_nonintegrable(m, tol));
        else if (s == "zigzag") rep.checks.push_back(check_zigzag(m, tol));
        else if (s == "resistor") rep.checks.push_back(check_resistor(m, tol));
        else if (s == "harmonic") rep.checks.push_back(check_harmonic_xy(m, tol));
        else if (s == "focal") rep.checks.push_back(check_focal(m, tol));
        else if (s == "s_symmetry") rep.checks.push_back(check_s_symmetry(m, tol));
        else throw Error("run_suite: unknown suite '" + s + "'");
    }
    return rep;
}

}  // namespace miquel
