#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace miquel {

using cd = std::complex<double>;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define MIQUEL_ERROR(Name)                                        \
    struct Name : Error {                                         \
        explicit Name(const std::string& msg) : Error(msg) {}     \
    }

MIQUEL_ERROR(IllDefinedMultiRatio);
MIQUEL_ERROR(OddLength);
MIQUEL_ERROR(InvalidMoebius);
MIQUEL_ERROR(InfinitePoint);
MIQUEL_ERROR(NotOnBothCircles);
MIQUEL_ERROR(CoincidentCenters);
MIQUEL_ERROR(CollinearPoints);
MIQUEL_ERROR(CoincidentPoints);
MIQUEL_ERROR(DegenerateLine);
MIQUEL_ERROR(InvalidCircle);
MIQUEL_ERROR(CircleThroughInfinity);
MIQUEL_ERROR(ParityError);
MIQUEL_ERROR(NoCommonPoint);
MIQUEL_ERROR(DisjointCircles);
MIQUEL_ERROR(MiquelResidualExceeded);
MIQUEL_ERROR(DegenerateOctahedron);
MIQUEL_ERROR(WindowExhausted);
MIQUEL_ERROR(LayerNotCovered);
MIQUEL_ERROR(MissingData);
MIQUEL_ERROR(ZeroDenominator);
MIQUEL_ERROR(SingularRecurrence);
MIQUEL_ERROR(SingularSolve);
MIQUEL_ERROR(InconsistentBoundary);
MIQUEL_ERROR(ConcyclicityViolated);
MIQUEL_ERROR(RetryExhausted);
MIQUEL_ERROR(DegenerateRhombus);
MIQUEL_ERROR(FoldedQuad);
MIQUEL_ERROR(PoleInsidePattern);
MIQUEL_ERROR(WindowTooSmall);
MIQUEL_ERROR(SchemaViolation);
MIQUEL_ERROR(UnsupportedVersion);
MIQUEL_ERROR(IoError);

#undef MIQUEL_ERROR

/// A point of the complex projective line: a finite complex number or the
/// single point at infinity.
class ExtComplex {
public:
    ExtComplex() : v_(0.0, 0.0), inf_(false) {}
    ExtComplex(cd v) : v_(v), inf_(false) {}            // NOLINT(google-explicit-constructor)
    ExtComplex(double v) : v_(v, 0.0), inf_(false) {}   // NOLINT(google-explicit-constructor)

    static ExtComplex infinity() {
        ExtComplex e;
        e.inf_ = true;
        return e;
    }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }

    /// Finite value; calling this on the point at infinity is a logic error.
    cd value() const {
        if (inf_) throw InfinitePoint("ExtComplex::value() on the point at infinity");
        return v_;
    }

    friend bool operator==(const ExtComplex& a, const ExtComplex& b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const ExtComplex& a, const ExtComplex& b) { return !(a == b); }

private:
    cd v_;
    bool inf_;
};

/// Global tolerance knobs. All identity checks are scale-relative; the single
/// multiplier mirrors the CLI --tol-scale / MIQUEL_TOL_SCALE override.
struct Tolerances {
    double scale = 1.0;
    bool extended_precision = false;   // evaluate multi-ratio residuals in double-double

    double incidence() const { return 1.0e-8 * scale; }
    double dskp() const { return 1.0e-8 * scale; }
    double miquel_fit() const { return 1.0e-8 * scale; }
    double ysystem() const { return 1.0e-7 * scale; }
    double realness() const { return 1.0e-9 * scale; }
    double conjugacy() const { return 1.0e-9 * scale; }
    double moebius_invariance() const { return 1.0e-8 * scale; }
    double subvariety() const { return 1.0e-8 * scale; }
    double gamma() const { return 1.0e-9 * scale; }
    double reconstruction() const { return 1.0e-7 * scale; }
    double must_exceed() const { return 1.0e-3; }   // non-invariance thresholds stay absolute
};

inline double rel_diff(cd a, cd b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double rel_imag(cd a) { return std::abs(a.imag()) / std::max(1.0, std::abs(a)); }

}  // namespace miquel
