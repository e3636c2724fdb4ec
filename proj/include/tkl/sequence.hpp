#pragma once

// Point sequences and density reports.
//
// A PointSequence is an ordered, duplicate-free list of points either on the
// real line or in the closed upper half-plane.  Infinite sequences enter the
// library as truncations with an explicit coverage window; every verdict
// derived from a truncation carries the radius it was computed at.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "verdict.hpp"

namespace tkl {

using cx = std::complex<double>;

struct PointSequence {
    enum class Domain { Real, UpperHalfPlane };

    Domain domain = Domain::Real;
    // Sorted by (re, im).  Real-domain points have im == 0 exactly.
    std::vector<cx> points;
    // Certified separation constant, if one is known for the full sequence.
    std::optional<double> separation;
    // Coverage window [lo, hi] for truncations of infinite sequences.
    std::optional<std::pair<double, double>> window;
    // Provenance tag (generator spec or file path), for reports.
    std::string source;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }

    // Real parts in order; for Real-domain sequences these are the points.
    std::vector<double> reals() const {
        std::vector<double> out;
        out.reserve(points.size());
        for (const cx& p : points) out.push_back(p.real());
        return out;
    }

    static bool point_less(const cx& a, const cx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    }

    // Builds a real-line sequence; input is sorted, duplicates rejected.
    static PointSequence real(std::vector<double> xs) {
        std::sort(xs.begin(), xs.end());
        PointSequence s;
        s.domain = Domain::Real;
        s.points.reserve(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!std::isfinite(xs[i]))
                throw Error(Errc::FormatError, "non-finite point in sequence");
            if (i > 0 && xs[i] == xs[i - 1])
                throw Error(Errc::FormatError, "duplicate point " + std::to_string(xs[i]));
            s.points.emplace_back(xs[i], 0.0);
        }
        return s;
    }

    // Builds an upper half-plane sequence (im >= 0 required).
    static PointSequence upper(std::vector<cx> zs) {
        std::sort(zs.begin(), zs.end(), point_less);
        PointSequence s;
        s.domain = Domain::UpperHalfPlane;
        s.points.reserve(zs.size());
        for (std::size_t i = 0; i < zs.size(); ++i) {
            if (!std::isfinite(zs[i].real()) || !std::isfinite(zs[i].imag()))
                throw Error(Errc::FormatError, "non-finite point in sequence");
            if (zs[i].imag() < 0.0)
                throw Error(Errc::FormatError, "point below the real line");
            if (i > 0 && zs[i] == zs[i - 1])
                throw Error(Errc::FormatError, "duplicate point in sequence");
            s.points.push_back(zs[i]);
        }
        return s;
    }

    bool operator==(const PointSequence& o) const {
        return domain == o.domain && points == o.points;
    }
};

// Witness data attached to a density estimate: the regular rate a, which
// points of the input were kept (interior) or which were added (exterior),
// and the truncation the deficit was verified at.
struct DensityWitness {
    double a = 0.0;
    std::vector<std::size_t> kept_indices; // interior: surviving subsequence
    std::vector<double> added_points;      // exterior: padding points
    double radius = 0.0;
    double deficit = 0.0;
};

struct DensityReport {
    enum class Kind { Interior, Exterior, LowerUniform };
    enum class Confidence { Confident, Heuristic };

    Kind kind = Kind::Interior;
    double value = 0.0;
    DensityWitness witness;
    Confidence confidence = Confidence::Heuristic;
    std::string note;

    bool confident() const { return confidence == Confidence::Confident; }
};

inline const char* to_string(DensityReport::Kind k) {
    switch (k) {
        case DensityReport::Kind::Interior: return "interior";
        case DensityReport::Kind::Exterior: return "exterior";
        default: return "lower-uniform";
    }
}

inline const char* to_string(DensityReport::Confidence c) {
    return c == DensityReport::Confidence::Confident ? "Confident" : "Heuristic";
}

} // namespace tkl
