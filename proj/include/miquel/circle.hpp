#pragma once

#include <cmath>

#include "miquel/core.hpp"
#include "miquel/multiratio.hpp"

namespace miquel {

/// Circle with finite center and positive radius. The standing assumption is
/// that no circle passes through infinity, so lines never appear as circles
/// and radius-zero circles are rejected at construction.
struct Circle {
    cd center{0.0, 0.0};
    double radius = 1.0;

    Circle() = default;
    Circle(cd c, double r) : center(c), radius(r) {
        if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidCircle("circle needs a finite center and radius > 0");
    }

    /// Signed distance from the circle, in units of the radius.
    double signed_residual(cd p) const { return (std::abs(p - center) - radius) / radius; }
};

struct IncidenceReport {
    cd point{0.0, 0.0};
    Circle circle;
    double signed_residual = 0.0;
};

inline bool on_circle(const Circle& c, const ExtComplex& p, double tol) {
    if (p.is_infinite()) throw InfinitePoint("on_circle: point at infinity");
    return std::abs(std::abs(p.value() - c.center) - c.radius) <= tol * c.radius;
}

/// Euclidean reflection of p across the line through a and b.
inline cd reflect_about_line(cd p, cd a, cd b) {
    if (a == b) throw DegenerateLine("reflect_about_line: a == b");
    return a + std::conj(p - a) * (b - a) / std::conj(b - a);
}

/// The other intersection point of two circles through p: the reflection of p
/// across the line through the two centers. A point on that line is a tangency
/// point and is returned unchanged.
inline cd second_intersection(const Circle& c1, const Circle& c2, const ExtComplex& p,
                              double tol = 1e-8) {
    if (p.is_infinite()) throw InfinitePoint("second_intersection: point at infinity");
    const cd z = p.value();
    const double sep = std::abs(c2.center - c1.center);
    if (sep <= 1e-14 * (c1.radius + c2.radius))
        throw CoincidentCenters("second_intersection: coincident centers");
    if (std::abs(c1.signed_residual(z)) > tol || std::abs(c2.signed_residual(z)) > tol)
        throw NotOnBothCircles("second_intersection: point not on both circles");
    // tangency: p already sits on the center line
    const cd dir = (c2.center - c1.center) / sep;
    const double off = ((z - c1.center) * std::conj(dir)).imag();
    if (std::abs(off) < 1e-10 * c1.radius) return z;
    return reflect_about_line(z, c1.center, c2.center);
}

/// Circumcircle of three points. Collinearity is detected by triangle area
/// relative to the squared diameter of the input, so large coordinates do not
/// trigger false degeneracy.
inline Circle circumcircle(const ExtComplex& p1e, const ExtComplex& p2e, const ExtComplex& p3e) {
    if (p1e.is_infinite() || p2e.is_infinite() || p3e.is_infinite())
        throw InfinitePoint("circumcircle: point at infinity");
    const cd p1 = p1e.value(), p2 = p2e.value(), p3 = p3e.value();
    const double diam = std::max({std::abs(p2 - p1), std::abs(p3 - p1), std::abs(p3 - p2)});
    if (p1 == p2 || p1 == p3 || p2 == p3 ||
        diam < 1e-14 * std::max({std::abs(p1), std::abs(p2), std::abs(p3), 1.0}))
        throw CoincidentPoints("circumcircle: coincident points");
    const double area2 = std::abs(((p2 - p1) * std::conj(p3 - p1)).imag());
    if (area2 < 1e-12 * diam * diam) throw CollinearPoints("circumcircle: collinear points");

    const double d = 2.0 * (p1.real() * (p2.imag() - p3.imag()) + p2.real() * (p3.imag() - p1.imag()) +
                            p3.real() * (p1.imag() - p2.imag()));
    const double n1 = std::norm(p1), n2 = std::norm(p2), n3 = std::norm(p3);
    const double ux = (n1 * (p2.imag() - p3.imag()) + n2 * (p3.imag() - p1.imag()) +
                       n3 * (p1.imag() - p2.imag())) /
                      d;
    const double uy = (n1 * (p3.real() - p2.real()) + n2 * (p1.real() - p3.real()) +
                       n3 * (p2.real() - p1.real())) /
                      d;
    const cd ctr(ux, uy);
    return Circle(ctr, std::abs(p1 - ctr));
}

/// Incidence residual of p4 against the circumcircle of p1, p2, p3.
inline double concyclic_residual(const ExtComplex& p1, const ExtComplex& p2, const ExtComplex& p3,
                                 const ExtComplex& p4) {
    const Circle c = circumcircle(p1, p2, p3);
    if (p4.is_infinite()) throw InfinitePoint("concyclic_residual: point at infinity");
    return std::abs(c.signed_residual(p4.value()));
}

/// Moebius-invariant alternative: four points are concyclic or collinear iff
/// their cross-ratio is real.
inline double concyclic_imag_residual(const ExtComplex& p1, const ExtComplex& p2,
                                      const ExtComplex& p3, const ExtComplex& p4) {
    ExtComplex r = cross_ratio(p1, p2, p3, p4);
    if (r.is_infinite()) return 0.0;
    return rel_imag(r.value());
}

/// Image of a circle under a Moebius transform, fit through three mapped
/// points. The pole must stay off the circle or the image is a line.
inline Circle map_circle(const Moebius& M, const Circle& c, double tol = 1e-9) {
    ExtComplex pole = M.pole();
    if (pole.is_finite() && std::abs(std::abs(pole.value() - c.center) - c.radius) <= tol * c.radius)
        throw CircleThroughInfinity("map_circle: pole lies on the circle");
    const cd q1 = M.apply_finite(c.center + c.radius);
    const cd q2 = M.apply_finite(c.center - c.radius);
    const cd q3 = M.apply_finite(c.center + cd(0.0, c.radius));
    return circumcircle(q1, q2, q3);
}

}  // namespace miquel
