#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <map>
#include <set>
#include <vector>

#include "miquel/core.hpp"

namespace miquel {

// The octahedral lattice: vertices are the even-sum points of Z^3 and carry
// circles; tetrahedra are indexed by all of Z^3 and carry intersection points
// (black = even coordinate sum, white = odd); octahedra sit at odd-sum points.

struct Vec3 {
    int x = 0, y = 0, z = 0;
    friend auto operator<=>(const Vec3&, const Vec3&) = default;
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
};

inline int coord_sum(const Vec3& v) { return v.x + v.y + v.z; }
inline bool even_sum(const Vec3& v) { return ((coord_sum(v) % 2) + 2) % 2 == 0; }

enum class Role { Vertex, BlackTetra, WhiteTetra, Octahedron };

inline bool is_vertex_site(const Vec3& v) { return even_sum(v); }
inline bool is_octahedron_site(const Vec3& v) { return !even_sum(v); }
inline bool is_black_tetra(const Vec3& v) { return even_sum(v); }
inline bool is_white_tetra(const Vec3& v) { return !even_sum(v); }

/// Shift by signed unit directions: +1/-1, +2/-2, +3/-3.
inline Vec3 shift(Vec3 v, std::initializer_list<int> dirs) {
    for (int d : dirs) {
        const int i = std::abs(d);
        const int s = d > 0 ? 1 : -1;
        if (i == 1) v.x += s;
        else if (i == 2) v.y += s;
        else if (i == 3) v.z += s;
        else throw Error("shift: direction out of range");
    }
    return v;
}

/// The six vertices of the octahedron at o, in the order
/// sigma_1 o, sigma_-1 o, sigma_2 o, sigma_-2 o, sigma_3 o, sigma_-3 o.
inline std::array<Vec3, 6> octahedron_vertices(const Vec3& o) {
    if (!is_octahedron_site(o)) throw ParityError("octahedron_vertices: even coordinate sum");
    return {shift(o, {1}), shift(o, {-1}), shift(o, {2}), shift(o, {-2}), shift(o, {3}),
            shift(o, {-3})};
}

/// The six-site stencil of the lattice equation around any center, arranged
/// for the -1 multi-ratio identity: opposite sites at distance three
/// (sigma_1, sigma_2, sigma_3, sigma_-1, sigma_-2, sigma_-3). Works for both
/// parity classes; real octahedra have odd-sum centers.
inline std::array<Vec3, 6> dskp_stencil(const Vec3& o) {
    return {shift(o, {1}), shift(o, {2}), shift(o, {3}), shift(o, {-1}), shift(o, {-2}),
            shift(o, {-3})};
}

inline std::array<Vec3, 6> octahedron_vertices_mr_order(const Vec3& o) {
    if (!is_octahedron_site(o)) throw ParityError("octahedron_vertices_mr_order");
    return dskp_stencil(o);
}

/// The eight tetrahedra adjacent to the octahedron at o, one per triangular
/// face; black ones have even coordinate sum.
inline std::array<Vec3, 8> octahedron_tetrahedra(const Vec3& o) {
    if (!is_octahedron_site(o)) throw ParityError("octahedron_tetrahedra: even coordinate sum");
    return {shift(o, {-1, -2, -3}), shift(o, {-1, -2}), shift(o, {-1, -3}), shift(o, {-2, -3}),
            shift(o, {-1}), shift(o, {-2}), shift(o, {-3}), o};
}

/// The four lattice vertices incident to the tetrahedron at t.
inline std::array<Vec3, 4> tetra_vertices(const Vec3& t) {
    if (is_black_tetra(t))
        return {t, shift(t, {1, 2}), shift(t, {1, 3}), shift(t, {2, 3})};
    return {shift(t, {1}), shift(t, {2}), shift(t, {3}), shift(t, {1, 2, 3})};
}

// ---------------------------------------------------------------------------
// Identification of vertices and tetrahedra with a slab of the 4-dimensional
// octahedral lattice (integer 5-tuples of sum zero, fifth coordinate -1/0/+1).

struct Vec5 {
    std::array<int, 5> w{};
    friend auto operator<=>(const Vec5&, const Vec5&) = default;
    int& operator[](std::size_t i) { return w[i]; }
    int operator[](std::size_t i) const { return w[i]; }
};

struct A4Site {
    Vec5 w;
    int layer() const { return w[4]; }
};

/// Vertex embedding: phi(0,0,0) = 0, fifth coordinate 0.
inline Vec5 phi_vertex(const Vec3& z) {
    if (!is_vertex_site(z)) throw ParityError("phi_vertex: odd coordinate sum");
    Vec5 r;
    r[0] = (-z.x + z.y + z.z) / 2;
    r[1] = (z.x - z.y + z.z) / 2;
    r[2] = (z.x + z.y - z.z) / 2;
    r[3] = -(z.x + z.y + z.z) / 2;
    r[4] = 0;
    return r;
}

/// Black tetrahedra land on the fifth-coordinate +1 sheet.
inline Vec5 phi_black(const Vec3& t) {
    if (!is_black_tetra(t)) throw ParityError("phi_black: odd coordinate sum");
    Vec5 r = phi_vertex(t);
    r[3] -= 1;
    r[4] = 1;
    return r;
}

/// White tetrahedra land on the fifth-coordinate -1 sheet.
inline Vec5 phi_white(const Vec3& t) {
    if (!is_white_tetra(t)) throw ParityError("phi_white: even coordinate sum");
    Vec5 r;
    r[0] = (-t.x + t.y + t.z + 1) / 2;
    r[1] = (t.x - t.y + t.z + 1) / 2;
    r[2] = (t.x + t.y - t.z + 1) / 2;
    r[3] = -(t.x + t.y + t.z + 1) / 2;
    r[4] = -1;
    return r;
}

inline Vec5 phi_embed(const Vec3& site, Role role) {
    switch (role) {
        case Role::Vertex: return phi_vertex(site);
        case Role::BlackTetra: return phi_black(site);
        case Role::WhiteTetra: return phi_white(site);
        default: throw ParityError("phi_embed: octahedra are not embedded");
    }
}

/// Inverse of the embedding, dispatching on the fifth coordinate.
inline std::pair<Vec3, Role> phi_invert(const Vec5& w) {
    Vec3 z;
    switch (w[4]) {
        case 0:
            z = {w[1] + w[2], w[0] + w[2], w[0] + w[1]};
            return {z, Role::Vertex};
        case 1:
            z = {w[1] + w[2], w[0] + w[2], w[0] + w[1]};
            return {z, Role::BlackTetra};
        case -1:
            z = {w[1] + w[2] - 1, w[0] + w[2] - 1, w[0] + w[1] - 1};
            return {z, Role::WhiteTetra};
        default: throw Error("phi_invert: fifth coordinate out of range");
    }
}

/// One octahedron of the 4-dimensional lattice: base point of coordinate sum
/// -2 plus the omitted direction m; the six sites are listed in the pairing
/// order that the -1 multi-ratio identity expects.
struct A4Octahedron {
    Vec5 base;
    int omitted = 4;          // 0..4; 4 = pure (single-sheet) octahedron
    std::array<Vec5, 6> sites{};
    bool pure() const { return omitted == 4; }
};

inline std::array<Vec5, 6> a4_octahedron_sites(const Vec5& base, int omitted) {
    std::array<int, 4> idx{};
    int k = 0;
    for (int i = 0; i < 5; ++i)
        if (i != omitted) idx[k++] = i;
    auto mk = [&](int a, int b) {
        Vec5 s = base;
        s[a] += 1;
        s[b] += 1;
        return s;
    };
    const int i1 = idx[0], i2 = idx[1], i3 = idx[2], i4 = idx[3];
    return {mk(i1, i2), mk(i2, i3), mk(i1, i3), mk(i3, i4), mk(i1, i4), mk(i2, i4)};
}

/// Enumerates every octahedron of the embedded lattice whose six sites are all
/// present in `sites`, tagged pure (one sheet) or mixed (three vertices plus
/// three same-colour tetrahedra). Deterministic order.
inline std::vector<A4Octahedron> a4_octahedra_touching(const std::set<Vec5>& sites) {
    std::set<Vec5> bases;
    for (const Vec5& w : sites) {
        for (int i = 0; i < 5; ++i) {
            for (int j = i + 1; j < 5; ++j) {
                Vec5 b = w;
                b[i] -= 1;
                b[j] -= 1;
                bases.insert(b);
            }
        }
    }
    std::vector<A4Octahedron> out;
    for (const Vec5& b : bases) {
        for (int m = 0; m < 5; ++m) {
            A4Octahedron oct;
            oct.base = b;
            oct.omitted = m;
            oct.sites = a4_octahedron_sites(b, m);
            bool ok = true;
            for (const Vec5& s : oct.sites)
                if (!sites.count(s)) { ok = false; break; }
            if (ok) out.push_back(oct);
        }
    }
    return out;
}

}  // namespace miquel
