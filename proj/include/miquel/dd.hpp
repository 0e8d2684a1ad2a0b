#pragma once

#include <cmath>
#include <span>

#include "miquel/core.hpp"

namespace miquel {

/// Double-double value: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
/// Roughly 31 significant digits; enough headroom for the multi-ratio
/// products of long evolutions without reaching for full multiprecision.
struct dd {
    double hi = 0.0, lo = 0.0;

    dd() = default;
    dd(double h) : hi(h), lo(0.0) {}            // NOLINT(google-explicit-constructor)
    dd(double h, double l) : hi(h), lo(l) {}

    static dd two_sum(double a, double b) {
        const double s = a + b;
        const double bb = s - a;
        return {s, (a - (s - bb)) + (b - bb)};
    }
    static dd two_prod(double a, double b) {
        const double p = a * b;
        return {p, std::fma(a, b, -p)};
    }

    friend dd operator+(dd a, dd b) {
        dd s = two_sum(a.hi, b.hi);
        s.lo += a.lo + b.lo;
        return two_sum(s.hi, s.lo);
    }
    friend dd operator-(dd a, dd b) { return a + dd(-b.hi, -b.lo); }
    friend dd operator*(dd a, dd b) {
        dd p = two_prod(a.hi, b.hi);
        p.lo += a.hi * b.lo + a.lo * b.hi;
        return two_sum(p.hi, p.lo);
    }
    friend dd operator/(dd a, dd b) {
        const double q1 = a.hi / b.hi;
        dd r = a - b * dd(q1);
        const double q2 = r.hi / b.hi;
        r = r - b * dd(q2);
        const double q3 = r.hi / b.hi;
        dd q = two_sum(q1, q2);
        q.lo += q3;
        return two_sum(q.hi, q.lo);
    }

    double value() const { return hi + lo; }
};

struct ddc {
    dd re, im;
    ddc() = default;
    ddc(dd r, dd i) : re(r), im(i) {}
    ddc(cd z) : re(z.real()), im(z.imag()) {}    // NOLINT(google-explicit-constructor)

    friend ddc operator+(const ddc& a, const ddc& b) { return {a.re + b.re, a.im + b.im}; }
    friend ddc operator-(const ddc& a, const ddc& b) { return {a.re - b.re, a.im - b.im}; }
    friend ddc operator*(const ddc& a, const ddc& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ddc operator/(const ddc& a, const ddc& b) {
        const dd den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    cd value() const { return {re.value(), im.value()}; }
};

/// Multi-ratio accumulated in double-double, for residual evaluation on long
/// evolutions where plain doubles start to show.
inline cd multi_ratio_dd(std::span<const cd> pts) {
    ddc num(cd(1.0)), den(cd(1.0));
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; i += 2) {
        num = num * (ddc(pts[i]) - ddc(pts[i + 1]));
        den = den * (ddc(pts[i + 1]) - ddc(pts[(i + 2) % n]));
    }
    return (num / den).value();
}

}  // namespace miquel
