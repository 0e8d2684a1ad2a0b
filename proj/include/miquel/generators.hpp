#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "miquel/map.hpp"
#include "miquel/rng.hpp"

namespace miquel {

enum class PatternKind { Generic, Isoradial, Orthodiagonal, Packing };

struct GeneratorSpec {
    PatternKind kind = PatternKind::Generic;
    int rows = 12;
    int cols = 12;
    std::uint64_t seed = 1;
    double perturbation = 1.0;               // 0 degenerates to the regular grid
    std::optional<Moebius> deformation;       // packing (and generic) post-transform
    bool regular_packing = false;             // packing: exact regular grid instead of row-built
};

inline const double kRegularRadius = std::sqrt(0.5);

namespace detail {

inline cd intersect_up(const Circle& c1, const Circle& c2) {
    const double d = std::abs(c2.center - c1.center);
    if (d >= c1.radius + c2.radius || d <= std::abs(c1.radius - c2.radius))
        throw DisjointCircles("row circles do not intersect");
    const double a = (c1.radius * c1.radius - c2.radius * c2.radius + d * d) / (2.0 * d);
    const double h = std::sqrt(std::max(c1.radius * c1.radius - a * a, 0.0));
    const cd base = c1.center + a * (c2.center - c1.center) / d;
    const cd off = cd(0.0, 1.0) * (c2.center - c1.center) / d * h;
    const cd up = base + off, dn = base - off;
    return up.imag() >= dn.imag() ? up : dn;
}

}  // namespace detail

/// Row-propagated generic pattern: random first-row circles, face points from
/// pairwise intersections (upper branch on row zero, second intersections
/// after), each next-row circle through its two determined points with one
/// random radius parameter. Zero perturbation gives the regular grid.
inline MiquelMap gen_generic(const GeneratorSpec& spec) {
    const int rows = spec.rows, cols = spec.cols;
    if (rows < 4 || cols < 4) throw WindowTooSmall("gen_generic: need at least 4x4");
    // larger windows run more evolution steps over more accumulated drift, so
    // the jitter shrinks with size to keep every identity well conditioned
    const double ns = spec.perturbation * 12.0 / std::max({rows, cols, 12});
    const double R0 = kRegularRadius;
    std::map<Vec2, Circle> C;
    std::map<Vec2, cd> P;

    // restart with a salted stream whenever circles stop meeting transversally
    // somewhere in the cascade; near-tangent pairs condition every identity
    // check downstream
    bool healthy = false;
    for (int attempt = 0; attempt < 64 && !healthy; ++attempt) {
        C.clear();
        P.clear();
        Rng row0 = Rng::stream(spec.seed, 0x726F77ULL + 131 * attempt);
        healthy = true;
        for (int i = 0; i < cols; ++i) {
            const cd ctr(i + ns * row0.uniform(-0.1, 0.1), ns * row0.uniform(-0.1, 0.1));
            const double r = R0 + ns * (row0.uniform(0.8, 1.1) - R0);
            C[{i, 0}] = Circle(ctr, r);
        }
        for (int i = 0; i + 1 < cols && healthy; ++i) {
            const double d = std::abs(C[{i + 1, 0}].center - C[{i, 0}].center);
            if (d >= C[{i, 0}].radius + C[{i + 1, 0}].radius - 1e-2 ||
                d <= std::abs(C[{i, 0}].radius - C[{i + 1, 0}].radius) + 1e-2)
                healthy = false;
        }

        for (int j = 0; j + 1 < rows && healthy; ++j) {
            Rng rng = Rng::stream(spec.seed, 1000 + 977 * attempt + j);
            for (int i = 0; i + 1 < cols && healthy; ++i) {
                if (j == 0) {
                    P[{i, j}] = detail::intersect_up(C[{i, 0}], C[{i + 1, 0}]);
                } else {
                    P[{i, j}] = second_intersection(C[{i, j}], C[{i + 1, j}], P[{i, j - 1}]);
                    // the two intersection points of the row pair must stay apart
                    if (std::abs(P[{i, j}] - P[{i, j - 1}]) <
                        0.2 * std::min(C[{i, j}].radius, C[{i + 1, j}].radius))
                        healthy = false;
                }
            }
            for (int i = 0; i < cols && healthy; ++i) {
                double rt = R0 + ns * rng.uniform(-0.06, 0.10);
                if (i == 0 || i == cols - 1) {
                    const cd p = P[{i == 0 ? 0 : cols - 2, j}];
                    const double ang = (i == 0 ? 3.0 : 1.0) * std::numbers::pi / 4.0 +
                                       ns * rng.uniform(-0.2, 0.2);
                    C[{i, j + 1}] = Circle(p + rt * std::polar(1.0, ang), rt);
                } else {
                    const cd A = P[{i - 1, j}], B = P[{i, j}];
                    const double q = std::abs(B - A) / 2.0;
                    if (rt < 1.25 * q) rt = 1.25 * q;
                    const double s = std::sqrt(rt * rt - q * q);
                    const cd ctr = (A + B) / 2.0 + cd(0.0, 1.0) * (B - A) / std::abs(B - A) * s;
                    C[{i, j + 1}] = Circle(ctr, std::abs(ctr - A));
                }
            }
        }
    }
    if (!healthy) throw RetryExhausted("gen_generic: circles keep losing transversality");

    MiquelMap m;
    for (const auto& [xy, c] : C) m.set_circle({xy.x, xy.y, ((xy.x + xy.y) % 2 + 2) % 2}, c);
    for (const auto& [xy, p] : P) m.set_point({xy.x, xy.y, 0}, p);
    if (spec.deformation) m = apply_moebius(m, *spec.deformation);
    return m;
}

/// Integrable pattern from rhombic data: unit vectors per diagonal track,
/// face points and centers as prefix sums, every circle of radius one.
/// u[k] and v[l] must never be parallel or anti-parallel.
inline MiquelMap gen_isoradial(const std::vector<cd>& u, const std::vector<cd>& v, int rows,
                               int cols) {
    // u indexed by m = x + y + 1 in [1, rows + cols - 1]; v by n - nmin.
    const int nmin = -(cols - 1);
    if ((int)u.size() < rows + cols - 1 || (int)v.size() < rows - 1 - nmin)
        throw WindowTooSmall("gen_isoradial: not enough track vectors");
    for (const cd& a : u)
        for (const cd& b : v) {
            if (std::abs(std::abs(a) - 1.0) > 1e-12 || std::abs(std::abs(b) - 1.0) > 1e-12)
                throw DegenerateRhombus("gen_isoradial: track vectors must be unit modulus");
            if (std::abs(a - b) < 1e-9 || std::abs(a + b) < 1e-9)
                throw DegenerateRhombus("gen_isoradial: parallel track vectors");
        }
    std::vector<cd> A(rows + cols, 0.0);            // A[m] = sum of u[1..m]
    for (int mm = 1; mm <= rows + cols - 1; ++mm) A[mm] = A[mm - 1] + u[mm - 1];
    std::vector<cd> B(rows - nmin + 1, 0.0);         // B[n - nmin], B[-nmin] = 0
    for (int nn = -nmin + 1; nn <= rows - 1 - nmin; ++nn) B[nn] = B[nn - 1] + v[nn - 1];
    for (int nn = -nmin - 1; nn >= 0; --nn) B[nn] = B[nn + 1] - v[nn];

    MiquelMap m;
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < rows; ++j)
            m.set_circle({i, j, ((i + j) % 2 + 2) % 2}, Circle(A[i + j] + B[j - i - nmin], 1.0));
    for (int i = 0; i + 1 < cols; ++i)
        for (int j = 0; j + 1 < rows; ++j)
            m.set_point({i, j, 0}, A[i + j + 1] + B[j - i - nmin]);
    return m;
}

/// Seeded isoradial data: horizontal tracks jittered around 1, vertical tracks
/// around i. Zero jitter gives the regular orthogonal grid (rotated frame).
inline MiquelMap gen_isoradial(const GeneratorSpec& spec) {
    Rng ru = Rng::stream(spec.seed, 0x75ULL), rv = Rng::stream(spec.seed, 0x76ULL);
    const double j = 0.35 * spec.perturbation;
    std::vector<cd> u, v;
    for (int k = 0; k < spec.rows + spec.cols; ++k) u.push_back(std::polar(1.0, j * ru.uniform(-1, 1)));
    for (int k = 0; k < spec.rows + spec.cols; ++k)
        v.push_back(std::polar(1.0, std::numbers::pi / 2.0 + j * rv.uniform(-1, 1)));
    return gen_isoradial(u, v, spec.rows, spec.cols);
}

/// Orthodiagonal pattern: black points swept over one diagonal sublattice so
/// that the two diagonals of every quad are perpendicular; white points at the
/// diagonal crossings; circles have the quad sides as diameters, which puts
/// rectangles of centers around every odd face of level zero.
inline MiquelMap gen_orthodiagonal(const GeneratorSpec& spec) {
    const int nu = (spec.rows + spec.cols) / 2 + 1, nv = nu;
    // the sweep is only marginally stable, so the jitter shrinks with size
    const double ns = spec.perturbation * std::sqrt(12.0 / std::max(nu, 12));
    std::map<Vec2, cd> q;   // diagonal sublattice coordinates (u, v)
    auto reg = [](int uu, int vv) { return cd(uu - vv + 0.5, uu + vv + 0.5); };
    bool built = false;
    for (int attempt = 0; attempt < 64 && !built; ++attempt) {
        q.clear();
        Rng rng = Rng::stream(spec.seed, 0x6F72ULL + 131 * attempt);
        for (int uu = 0; uu < nu; ++uu)
            q[{uu, 0}] = reg(uu, 0) + ns * cd(rng.uniform(-0.06, 0.06), rng.uniform(-0.06, 0.06));
        for (int vv = 1; vv < nv; ++vv)
            q[{0, vv}] = reg(0, vv) + ns * cd(rng.uniform(-0.06, 0.06), rng.uniform(-0.06, 0.06));
        built = true;
        for (int uu = 1; uu < nu && built; ++uu) {
            Rng row = Rng::stream(spec.seed, 0x6F7200ULL + 977 * attempt + uu);
            for (int vv = 1; vv < nv; ++vv) {
                const cd base = q[{uu - 1, vv - 1}];
                const cd A = q[{uu, vv - 1}], B = q[{uu - 1, vv}];
                const cd dir = (A - B) / std::abs(A - B);
                // the new point runs along the perpendicular of the known
                // diagonal through base; the free distance parameter is
                // anchored at the regular grid position so noise does not
                // amplify across the sweep
                const double s2 = ((base - B) * std::conj(dir)).real() / std::abs(A - B);
                if (s2 < 0.05 || s2 > 0.95) { built = false; break; }   // structural fold
                const cd perp = cd(0.0, 1.0) * dir;
                const double tp = ((reg(uu, vv) - base) * std::conj(perp)).real() +
                                  ns * row.uniform(-0.15, 0.15);
                if (std::abs(tp) < 0.2) { built = false; break; }
                q[{uu, vv}] = base + perp * tp;
            }
        }
    }
    if (!built) throw FoldedQuad("gen_orthodiagonal: quads keep folding");

    MiquelMap m;
    std::map<Vec2, cd> qf;   // black points in face coordinates
    for (const auto& [uv, p] : q) {
        const Vec2 f{uv.x - uv.y, uv.x + uv.y};
        qf[f] = p;
        m.set_point({f.x, f.y, 0}, p);
    }
    auto cross = [](cd W, cd E, cd S, cd N) {
        const cd d1 = E - W, d2 = N - S;
        const double det = (d1 * std::conj(d2)).imag();
        const cd w = S - W;
        const double s = (w * std::conj(d2)).imag() / det;
        return W + s * d1;
    };
    int ilo = 1 << 30, ihi = -(1 << 30), jlo = 1 << 30, jhi = -(1 << 30);
    for (const auto& [f, p] : qf) {
        ilo = std::min(ilo, f.x); ihi = std::max(ihi, f.x);
        jlo = std::min(jlo, f.y); jhi = std::max(jhi, f.y);
    }
    for (int i = ilo; i <= ihi; ++i)
        for (int jj = jlo; jj <= jhi; ++jj) {
            if (((i + jj) % 2 + 2) % 2 == 0) continue;
            auto W = qf.find({i - 1, jj}), E = qf.find({i + 1, jj});
            auto S = qf.find({i, jj - 1}), N = qf.find({i, jj + 1});
            if (W == qf.end() || E == qf.end() || S == qf.end() || N == qf.end()) continue;
            m.set_point({i, jj, 0}, cross(W->second, E->second, S->second, N->second));
        }
    for (int i = ilo; i <= ihi + 1; ++i)
        for (int jj = jlo; jj <= jhi + 1; ++jj) {
            const bool even = ((i + jj) % 2 + 2) % 2 == 0;
            auto A = qf.find(even ? Vec2{i, jj} : Vec2{i - 1, jj});
            auto B = qf.find(even ? Vec2{i - 1, jj - 1} : Vec2{i, jj - 1});
            if (A == qf.end() || B == qf.end()) continue;
            m.set_circle({i, jj, even ? 0 : 1},
                         Circle((A->second + B->second) / 2.0, std::abs(A->second - B->second) / 2.0));
        }
    return m;
}

/// Tangent-circle pattern. Default: a packing built row by row with exact
/// pairwise tangencies (radii drawn per seed); regular_packing picks the exact
/// grid instead. An optional Moebius deformation is applied afterwards; its
/// pole must stay outside every circle.
inline MiquelMap gen_packing(const GeneratorSpec& spec) {
    const int nu = (spec.rows + spec.cols) / 2 + 1, nv = nu;
    const double R0 = kRegularRadius;
    std::map<Vec2, Circle> disc;   // diagonal sublattice (u, v)
    if (spec.regular_packing || spec.perturbation == 0.0) {
        for (int uu = 0; uu < nu; ++uu)
            for (int vv = 0; vv < nv; ++vv)
                disc[{uu, vv}] = Circle(cd(uu - vv, uu + vv), R0);
    } else {
        const double ns = 0.5 * spec.perturbation * std::sqrt(12.0 / std::max(nu, 12));
        bool built = false;
        for (int attempt = 0; attempt < 64 && !built; ++attempt) {
            std::map<Vec2, double> rad;
            Rng rr = Rng::stream(spec.seed, 0x7061ULL + 131 * attempt);
            for (int uu = 0; uu < nu; ++uu)
                for (int vv = 0; vv < nv; ++vv)
                    rad[{uu, vv}] = R0 * (1.0 + ns * rr.uniform(-0.25, 0.35));
            Rng r0 = Rng::stream(spec.seed, 0x706100ULL + 977 * attempt);
            std::map<Vec2, cd> ctr;
            ctr[{0, 0}] = cd(0.0, 0.0);
            for (int uu = 1; uu < nu; ++uu)
                ctr[{uu, 0}] = ctr[{uu - 1, 0}] + (rad[{uu - 1, 0}] + rad[{uu, 0}]) *
                                                      std::polar(1.0, ns * r0.uniform(-0.25, 0.25));
            built = true;
            for (int vv = 1; vv < nv && built; ++vv) {
                Rng row = Rng::stream(spec.seed, 0x706100ULL + 977 * attempt + vv);
                ctr[{0, vv}] = ctr[{0, vv - 1}] + (rad[{0, vv - 1}] + rad[{0, vv}]) *
                                                      std::polar(1.0, std::numbers::pi / 2.0 +
                                                                          ns * row.uniform(-0.25, 0.25));
                for (int uu = 1; uu < nu; ++uu) {
                    const cd Bc = ctr[{uu, vv - 1}], Lc = ctr[{uu - 1, vv}];
                    const double R1 = rad[{uu, vv - 1}] + rad[{uu, vv}];
                    const double R2 = rad[{uu - 1, vv}] + rad[{uu, vv}];
                    const double d = std::abs(Lc - Bc);
                    if (d >= 0.98 * (R1 + R2) || d <= 1.02 * std::abs(R1 - R2)) {
                        built = false;
                        break;
                    }
                    const double a = (R1 * R1 - R2 * R2 + d * d) / (2.0 * d);
                    const double h = std::sqrt(R1 * R1 - a * a);
                    const cd base = Bc + a * (Lc - Bc) / d;
                    const cd off = cd(0.0, 1.0) * (Lc - Bc) / d * h;
                    const cd up = base + off, dn = base - off;
                    ctr[{uu, vv}] = ((up - Bc).imag() + (up - Lc).imag() >
                                     (dn - Bc).imag() + (dn - Lc).imag())
                                        ? up
                                        : dn;
                }
            }
            if (built)
                for (const auto& [uv, r] : rad) disc[uv] = Circle(ctr[uv], r);
        }
        if (!built) throw RetryExhausted("gen_packing: tangency placement keeps failing");
    }

    // rotate to face coordinates: packing circles sit on even sites, layer 0
    MiquelMap m;
    std::map<Vec2, Circle> E;
    for (const auto& [uv, c] : disc) {
        const Vec2 s{uv.x - uv.y, uv.x + uv.y};
        E[s] = c;
        m.set_circle({s.x, s.y, 0}, c);
    }
    auto tangency = [&](const Vec2& s1, const Vec2& s2) {
        const Circle &c1 = E.at(s1), &c2 = E.at(s2);
        return c1.center + c1.radius * (c2.center - c1.center) / std::abs(c2.center - c1.center);
    };
    // points: every face point is a tangency point of the even diagonal pair
    for (const auto& [s, c] : E) {
        if (E.count({s.x + 1, s.y + 1})) m.set_point({s.x, s.y, 0}, tangency(s, {s.x + 1, s.y + 1}));
    }
    int ilo = 1 << 30, ihi = -(1 << 30), jlo = 1 << 30, jhi = -(1 << 30);
    for (const auto& [s, c] : E) {
        ilo = std::min(ilo, s.x); ihi = std::max(ihi, s.x);
        jlo = std::min(jlo, s.y); jhi = std::max(jhi, s.y);
    }
    for (int i = ilo; i <= ihi; ++i)
        for (int jj = jlo; jj <= jhi; ++jj) {
            if (((i + jj) % 2 + 2) % 2 == 0) continue;
            if (E.count({i + 1, jj}) && E.count({i, jj + 1}))
                m.set_point({i, jj, 0}, tangency({i + 1, jj}, {i, jj + 1}));
            const std::array<Vec2, 4> quad = {Vec2{i - 1, jj - 1}, Vec2{i, jj - 1}, Vec2{i - 1, jj},
                                              Vec2{i, jj}};
            std::vector<cd> pts;
            for (const Vec2& f : quad)
                if (m.has_point({f.x, f.y, 0})) pts.push_back(m.point({f.x, f.y, 0}));
            if (pts.size() == 4) {
                const Circle c = circumcircle(pts[0], pts[1], pts[2]);
                if (std::abs(c.signed_residual(pts[3])) > 1e-8)
                    throw MiquelResidualExceeded("gen_packing: touching-coins fit failed");
                m.set_circle({i, jj, 1}, c);
            }
        }

    if (spec.deformation) {
        const Moebius& M = *spec.deformation;
        const ExtComplex pole = M.pole();
        if (pole.is_finite())
            for (const Vec3& v : m.circle_sites())
                if (std::abs(pole.value() - m.circle(v).center) <= m.circle(v).radius)
                    throw PoleInsidePattern("gen_packing: deformation pole inside circle at " +
                                            site_str(v));
        m = apply_moebius(m, M);
    }
    return m;
}

inline MiquelMap generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case PatternKind::Generic: return gen_generic(spec);
        case PatternKind::Isoradial: return gen_isoradial(spec);
        case PatternKind::Orthodiagonal: return gen_orthodiagonal(spec);
        case PatternKind::Packing: return gen_packing(spec);
    }
    throw Error("generate: unknown kind");
}

}  // namespace miquel
