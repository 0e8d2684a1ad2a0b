#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "miquel/core.hpp"

namespace miquel {

/// Multi-ratio of an even number of extended-complex points:
///
///   mr(a1,...,a2m) = (a1-a2)(a3-a4)...(a_{2m-1}-a_{2m}) / ((a2-a3)...(a_{2m}-a1))
///
/// Infinite arguments are handled by the limit rule: the two factors containing
/// one infinite argument (one in the numerator, one in the denominator) jointly
/// contribute -1. A single cyclically-consecutive coincident pair yields 0 or
/// the point at infinity, depending on which product holds the vanishing
/// factor. More coincidence than that (a run of three equal arguments, or two
/// coincident pairs) has no well-defined limit and is rejected.
inline ExtComplex multi_ratio(std::span<const ExtComplex> pts) {
    const std::size_t n = pts.size();
    if (n % 2 != 0 || n < 4)
        throw OddLength("multi_ratio needs an even number (>= 4) of points, got " +
                        std::to_string(n));

    // reject consecutive infinities and count coincident consecutive pairs
    int pairs = 0;
    bool run = false;
    for (std::size_t i = 0; i < n; ++i) {
        const ExtComplex& a = pts[i];
        const ExtComplex& b = pts[(i + 1) % n];
        if (a.is_infinite() && b.is_infinite())
            throw IllDefinedMultiRatio("two consecutive arguments at infinity");
        if (a == b) {
            ++pairs;
            if (pts[(i + 2) % n] == a) run = true;
        }
    }
    if (run || pairs > 1)
        throw IllDefinedMultiRatio("several consecutive arguments coincide");

    cd num(1.0, 0.0), den(1.0, 0.0);
    int num_zero = 0, den_zero = 0, inf_signs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const ExtComplex& a = pts[i];
        const ExtComplex& b = pts[(i + 1) % n];
        const bool numerator = (i % 2 == 0);
        if (a.is_infinite() || b.is_infinite()) {
            // counted once per infinite argument: it leads one factor (as 'a')
            if (a.is_infinite()) ++inf_signs;
            continue;
        }
        cd f = a.value() - b.value();
        if (f == cd(0.0, 0.0)) {
            (numerator ? num_zero : den_zero)++;
            continue;
        }
        (numerator ? num : den) *= f;
    }
    if (num_zero > 0 && den_zero > 0)
        throw IllDefinedMultiRatio("vanishing factors in both products");
    cd v = num / den;
    if (inf_signs % 2 != 0) v = -v;
    if (den_zero > 0) return ExtComplex::infinity();
    if (num_zero > 0) return cd(0.0, 0.0);
    return v;
}

inline ExtComplex multi_ratio(std::initializer_list<ExtComplex> pts) {
    return multi_ratio(std::span<const ExtComplex>(pts.begin(), pts.size()));
}

inline ExtComplex multi_ratio(const std::vector<ExtComplex>& pts) {
    return multi_ratio(std::span<const ExtComplex>(pts.data(), pts.size()));
}

inline ExtComplex cross_ratio(const ExtComplex& a, const ExtComplex& b, const ExtComplex& c,
                              const ExtComplex& d) {
    return multi_ratio({a, b, c, d});
}

/// Finite-only multi-ratio fast path used by the lattice checks.
inline cd multi_ratio(std::span<const cd> pts) {
    cd num(1.0, 0.0), den(1.0, 0.0);
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; i += 2) {
        num *= pts[i] - pts[i + 1];
        den *= pts[i + 1] - pts[(i + 2) % n];
    }
    return num / den;
}

/// M(z) = (az + b)/(cz + d), ad - bc != 0.
struct Moebius {
    cd a{1.0}, b{0.0}, c{0.0}, d{1.0};

    Moebius() = default;
    Moebius(cd a_, cd b_, cd c_, cd d_) : a(a_), b(b_), c(c_), d(d_) {
        const double m = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
        if (std::abs(det()) <= 1e-12 * m * m)
            throw InvalidMoebius("ad - bc vanishes within tolerance");
    }

    cd det() const { return a * d - b * c; }
    Moebius inverse() const { return Moebius(d, -b, -c, a); }

    /// Composition: (A * B)(z) = A(B(z)).
    friend Moebius operator*(const Moebius& A, const Moebius& B) {
        return Moebius(A.a * B.a + A.b * B.c, A.a * B.b + A.b * B.d, A.c * B.a + A.d * B.c,
                       A.c * B.b + A.d * B.d);
    }

    /// The preimage of infinity (-d/c), or infinity itself when c = 0.
    ExtComplex pole() const {
        if (c == cd(0.0, 0.0)) return ExtComplex::infinity();
        return -d / c;
    }

    ExtComplex operator()(const ExtComplex& p) const {
        if (p.is_infinite()) {
            if (c == cd(0.0, 0.0)) return ExtComplex::infinity();
            return a / c;
        }
        const cd z = p.value();
        const cd den = c * z + d;
        if (den == cd(0.0, 0.0)) return ExtComplex::infinity();
        return (a * z + b) / den;
    }

    cd apply_finite(cd z) const { return (a * z + b) / (c * z + d); }
};

/// |mr(points) - mr(M(points))|; the cross/multi-ratio is a Moebius invariant,
/// so this is a residual that should vanish for every valid transform.
inline double moebius_invariance_residual(const Moebius& M, std::span<const ExtComplex> pts) {
    std::vector<ExtComplex> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) img[i] = M(pts[i]);
    ExtComplex r0 = multi_ratio(pts);
    ExtComplex r1 = multi_ratio(img);
    if (r0.is_infinite() || r1.is_infinite())
        return (r0.is_infinite() && r1.is_infinite()) ? 0.0 : 1.0 / 0.0;
    return std::abs(r0.value() - r1.value());
}

}  // namespace miquel
