#pragma once

// Numeric evaluation: Blaschke products, singular inner functions, outer
// functions recovered from boundary log-modulus data, boundary traces of
// transparent symbols, and the boundary spectrum of an inner function.
//
// Boundary evaluation uses exact closed forms per atom; only interior outer
// evaluation needs quadrature (periodic trapezoid / midpoint rules, whose
// error decays geometrically in the node count for data of this kind).
// Opaque spectrum atoms have no evaluator and are rejected.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "sequence.hpp"
#include "symbol.hpp"
#include "verdict.hpp"

namespace tkl {

// ── evaluation grids ────────────────────────────────────────────────────

struct EvalGrid {
    Space space = Space::Disk;
    bool boundary = true;
    std::vector<double> params; // boundary: angle on the circle, x on the line
    std::vector<cx> points;     // interior points
    double exclusion = 1e-6;    // minimum distance to poles and masses

    static EvalGrid disk_boundary(std::size_t n) {
        if (n == 0) throw Error(Errc::BadParameters, "grid needs at least one point");
        EvalGrid g;
        g.space = Space::Disk;
        for (std::size_t j = 0; j < n; ++j)
            g.params.push_back(-std::numbers::pi +
                               2.0 * std::numbers::pi * static_cast<double>(j) /
                                   static_cast<double>(n));
        return g;
    }

    static EvalGrid line_boundary(double lo, double hi, std::size_t n) {
        if (n == 0 || !(hi > lo)) throw Error(Errc::BadParameters, "bad boundary range");
        EvalGrid g;
        g.space = Space::HalfPlane;
        if (n == 1) {
            g.params.push_back(0.5 * (lo + hi));
            return g;
        }
        for (std::size_t j = 0; j < n; ++j)
            g.params.push_back(lo + (hi - lo) * static_cast<double>(j) /
                                        static_cast<double>(n - 1));
        return g;
    }

    static EvalGrid interior(Space s, std::vector<cx> pts) {
        EvalGrid g;
        g.space = s;
        g.boundary = false;
        for (const cx& z : pts) {
            if (s == Space::Disk ? std::abs(z) >= 1.0 : z.imag() <= 0.0)
                throw Error(Errc::BadParameters, "interior grid point outside the domain");
        }
        g.points = std::move(pts);
        return g;
    }
};

namespace detail {

inline std::string fmt_idx(const char* what, std::size_t i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s at grid index %zu", what, i);
    return buf;
}

inline cx ipow(cx base, int e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    cx r = 1.0;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

} // namespace detail

// ── Blaschke products ───────────────────────────────────────────────────

// Finite Blaschke product over the listed zeros.  Disk factors are
// (|a|/a)(a-z)/(1 - conj(a) z); half-plane factors (z-a)/(z - conj(a)).
inline cx blaschke_eval(Space space, const std::vector<cx>& zeros, cx z, double exclusion = 1e-6) {
    cx prod = 1.0;
    for (const cx& a : zeros) {
        if (space == Space::Disk) {
            if (std::abs(a) == 0.0)
                throw Error(Errc::ZeroAtOrigin, "use the coordinate factor for a zero at 0");
            const cx den = 1.0 - std::conj(a) * z;
            if (std::abs(den) < exclusion)
                throw Error(Errc::PoleHit, "evaluation point too close to a reflected zero");
            prod *= (std::abs(a) / a) * (a - z) / den;
        } else {
            const cx den = z - std::conj(a);
            if (std::abs(den) < exclusion)
                throw Error(Errc::PoleHit, "evaluation point too close to a reflected zero");
            prod *= (z - a) / den;
        }
    }
    return prod;
}

// Summability of the Blaschke condition for an explicit zero list: always
// decidable, the certificate carries the exact sum.
inline TriVerdict blaschke_condition(Space space, const std::vector<cx>& zeros) {
    double sum = 0.0;
    for (const cx& a : zeros) {
        if (space == Space::Disk) {
            if (std::abs(a) >= 1.0) throw Error(Errc::BadParameters, "disk zero with |a| >= 1");
            sum += 1.0 - std::abs(a);
        } else {
            if (a.imag() <= 0.0) throw Error(Errc::BadParameters, "half-plane zero with Im <= 0");
            sum += a.imag() / (1.0 + std::norm(a));
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "sum of %zu terms = %.17g", zeros.size(), sum);
    return TriVerdict::yes(buf);
}

// Summability for a generated zero sequence, judged from the first n terms:
// Yes when the term ratios settle below 1 (geometric tail bound), No when
// k * t_k stays bounded away from zero (harmonic comparison), Unknown
// otherwise.
inline TriVerdict blaschke_condition(Space space, const std::function<cx(std::size_t)>& gen,
                                     std::size_t n) {
    if (n < 8) throw Error(Errc::BadParameters, "need at least 8 probe terms");
    std::vector<double> t(n);
    double partial = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const cx a = gen(k);
        if (space == Space::Disk) {
            if (std::abs(a) >= 1.0) throw Error(Errc::BadParameters, "disk zero with |a| >= 1");
            t[k] = 1.0 - std::abs(a);
        } else {
            if (a.imag() <= 0.0) throw Error(Errc::BadParameters, "half-plane zero with Im <= 0");
            t[k] = a.imag() / (1.0 + std::norm(a));
        }
        partial += t[k];
    }
    double rmax = 0.0;
    bool ratio_ok = true;
    for (std::size_t k = n / 2; k + 1 < n; ++k) {
        if (t[k] <= 0.0) continue;
        const double r = t[k + 1] / t[k];
        rmax = std::max(rmax, r);
        if (r > 0.99) ratio_ok = false;
    }
    char buf[128];
    if (ratio_ok && rmax < 1.0) {
        const double tail = t[n - 1] * rmax / (1.0 - rmax);
        std::snprintf(buf, sizeof buf, "partial sum %.6g, geometric tail bound %.3g", partial,
                      tail);
        return TriVerdict::yes(buf);
    }
    double kt_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = n / 2; k < n; ++k)
        kt_min = std::min(kt_min, static_cast<double>(k + 1) * t[k]);
    if (kt_min > 0.25) {
        std::snprintf(buf, sizeof buf, "k*t_k >= %.3g on the tail; harmonic divergence", kt_min);
        return TriVerdict::no(buf);
    }
    std::snprintf(buf, sizeof buf, "partial sum %.6g with unresolved tail", partial);
    return TriVerdict::unknown(buf);
}

// ── singular inner factors ──────────────────────────────────────────────

// exp(i a z) on the half-plane.
inline cx singular_exp_eval(double a, cx z) { return std::exp(cx(0.0, a) * z); }

// Disk singular inner function for finitely many point masses:
// exp(-sum w_j (zeta_j + z)/(zeta_j - z)).
inline cx singular_disk_eval(const std::vector<std::pair<double, double>>& masses, cx z,
                             double exclusion = 1e-6) {
    cx s = 0.0;
    for (const auto& [angle, w] : masses) {
        const cx zeta = std::polar(1.0, angle);
        if (std::abs(zeta - z) < exclusion)
            throw Error(Errc::MassHit, "evaluation point too close to a singular mass");
        s += w * (zeta + z) / (zeta - z);
    }
    return std::exp(-s);
}

// ── outer functions ─────────────────────────────────────────────────────

// Disk outer function from boundary log-modulus c: O(z) =
// exp((1/2pi) int (zeta+z)/(zeta-z) c(theta) dtheta), periodic trapezoid
// with `quad` nodes.  O(0) = exp(mean c) > 0.
inline cx outer_eval_disk(const OuterSource& o, cx z, std::size_t quad = 4096) {
    if (std::abs(z) >= 1.0) throw Error(Errc::BadParameters, "disk outer eval needs |z| < 1");
    if (quad < 8) throw Error(Errc::BadParameters, "quadrature needs at least 8 nodes");
    cx s = 0.0;
    for (std::size_t j = 0; j < quad; ++j) {
        const double th =
            -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j) / quad;
        const double c = o.log_modulus(th);
        if (!std::isfinite(c))
            throw Error(Errc::NonIntegrableLogModulus, "log-modulus not finite at a node");
        const cx zeta = std::polar(1.0, th);
        s += (zeta + z) / (zeta - z) * c;
    }
    s /= static_cast<double>(quad);
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw Error(Errc::NonIntegrableLogModulus, "Herglotz integral did not converge");
    return std::exp(s);
}

// Half-plane outer function from line log-modulus c: O(z) =
// exp((1/pi i) int [1/(t-z) - t/(1+t^2)] c(t) dt), evaluated with the
// substitution t = tan(theta/2) and a periodic midpoint rule.
inline cx outer_eval_halfplane(const OuterSource& o, cx z, std::size_t quad = 4096) {
    if (z.imag() <= 0.0) throw Error(Errc::BadParameters, "half-plane outer eval needs Im z > 0");
    if (quad < 8) throw Error(Errc::BadParameters, "quadrature needs at least 8 nodes");
    cx s = 0.0;
    const double h = 2.0 * std::numbers::pi / static_cast<double>(quad);
    for (std::size_t j = 0; j < quad; ++j) {
        const double th = -std::numbers::pi + h * (static_cast<double>(j) + 0.5);
        const double t = std::tan(0.5 * th);
        const double c = o.log_modulus(t);
        if (!std::isfinite(c))
            throw Error(Errc::NonIntegrableLogModulus, "log-modulus not finite at a node");
        const double jac = 0.5 * (1.0 + t * t);
        s += (1.0 / (t - z) - t / (1.0 + t * t)) * (c * jac);
    }
    s *= h / (std::numbers::pi * cx(0.0, 1.0));
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw Error(Errc::NonIntegrableLogModulus, "line integral did not converge");
    return std::exp(s);
}

// ── symbol evaluation ───────────────────────────────────────────────────

namespace detail {

inline cx atom_interior_eval(const Atom& a, Space space, cx z, double exclusion,
                             std::size_t quad) {
    if (std::holds_alternative<Coordinate>(a)) return z;
    if (std::holds_alternative<BlaschkeAtI>(a)) return (z - cx(0, 1)) / (z + cx(0, 1));
    if (const auto* b = std::get_if<BlaschkeZeros>(&a))
        return blaschke_eval(space, b->zeros, z, exclusion);
    if (const auto* s = std::get_if<SingularExp>(&a)) return singular_exp_eval(s->a, z);
    if (const auto* m = std::get_if<SingularDiskMeasure>(&a))
        return singular_disk_eval(m->masses, z, exclusion);
    if (const auto* o = std::get_if<OuterSource>(&a))
        return space == Space::Disk ? outer_eval_disk(*o, z, quad)
                                    : outer_eval_halfplane(*o, z, quad);
    throw Error(Errc::NotEvaluable, "opaque spectrum atom has no evaluator");
}

// Boundary closed forms; the returned value is exactly unimodular for the
// purely imaginary Herglotz cases.  Outer atoms report modulus e^{c} with
// phase 0: boundary contracts cover the modulus only.
inline cx atom_boundary_eval(const Atom& a, Space space, double p, double exclusion) {
    if (space == Space::Disk) {
        if (std::holds_alternative<Coordinate>(a)) return std::polar(1.0, p);
        if (const auto* b = std::get_if<BlaschkeZeros>(&a))
            return blaschke_eval(space, b->zeros, std::polar(1.0, p), exclusion);
        if (const auto* m = std::get_if<SingularDiskMeasure>(&a)) {
            double phase = 0.0;
            for (const auto& [angle, w] : m->masses) {
                const double half = 0.5 * (angle - p);
                if (std::abs(std::sin(half)) < exclusion)
                    throw Error(Errc::MassHit, "boundary point too close to a singular mass");
                phase += w / std::tan(half);
            }
            return std::polar(1.0, phase);
        }
    } else {
        if (std::holds_alternative<BlaschkeAtI>(a)) return (cx(p, 0) - cx(0, 1)) / cx(p, 1);
        if (const auto* b = std::get_if<BlaschkeZeros>(&a))
            return blaschke_eval(space, b->zeros, cx(p, 0.0), exclusion);
        if (const auto* s = std::get_if<SingularExp>(&a)) return std::polar(1.0, s->a * p);
    }
    if (const auto* o = std::get_if<OuterSource>(&a)) return cx(std::exp(o->log_modulus(p)), 0.0);
    throw Error(Errc::NotEvaluable, "opaque spectrum atom has no evaluator");
}

} // namespace detail

// Value of a transparent symbol at one interior point.
inline cx symbol_eval(const SymbolExpr& e, cx z, double exclusion = 1e-6, std::size_t quad = 4096) {
    const SymbolExpr n = normalize(e);
    cx v = std::polar(1.0, n.angle);
    for (const Factor& f : n.factors) {
        cx a = detail::atom_interior_eval(f.atom, n.space, z, exclusion, quad);
        if (f.conjugated) a = std::conj(a); // boundary-trace convention for conjugated factors
        v *= detail::ipow(a, f.exponent);
    }
    return v;
}

// Boundary trace of a transparent symbol on a grid.  Conjugated factors are
// literal conjugates of the boundary values; failures carry the grid index.
inline std::vector<cx> symbol_boundary_eval(const SymbolExpr& e, const EvalGrid& grid) {
    if (!grid.boundary) throw Error(Errc::BadParameters, "grid is not a boundary grid");
    const SymbolExpr n = normalize(e);
    if (n.space != grid.space) throw Error(Errc::MixedSpace, "symbol and grid space differ");
    std::vector<cx> out;
    out.reserve(grid.params.size());
    for (std::size_t i = 0; i < grid.params.size(); ++i) {
        try {
            cx v = std::polar(1.0, n.angle);
            for (const Factor& f : n.factors) {
                cx a = detail::atom_boundary_eval(f.atom, n.space, grid.params[i], grid.exclusion);
                if (f.conjugated) a = std::conj(a);
                v *= detail::ipow(a, f.exponent);
            }
            out.push_back(v);
        } catch (const Error& err) {
            if (err.code() == Errc::NotEvaluable) throw;
            throw Error(err.code(), detail::fmt_idx(err.what(), i));
        }
    }
    return out;
}

// ── boundary spectrum of an inner function ──────────────────────────────

namespace detail {

// Continuous increasing boundary phase of exp(iaz) * Blaschke(zeros) on the
// line: a*x - 2 sum atan2(v_k, x - u_k).
inline double mif_phase(double a, const std::vector<cx>& zeros, double x) {
    double phi = a * x;
    for (const cx& w : zeros) phi -= 2.0 * std::atan2(w.imag(), x - w.real());
    return phi;
}

} // namespace detail

// Points of [lo, hi] where the inner function exp(iaz) * Blaschke(zeros)
// takes the value 1: crossings of the continuous phase through multiples of
// 2pi, located by bisection after adaptive sampling.  The symbol must be a
// transparent analytic inner expression on the half-plane.
inline PointSequence spectrum_sigma(const SymbolExpr& theta, double lo, double hi,
                                    std::size_t resolution = 512) {
    if (!(hi > lo)) throw Error(Errc::BadParameters, "empty spectrum range");
    if (resolution < 2) throw Error(Errc::BadParameters, "resolution too small");
    const SymbolExpr n = normalize(theta);
    if (n.space != Space::HalfPlane)
        throw Error(Errc::BadParameters, "boundary spectrum is computed on the half-plane");

    double a = 0.0;
    std::vector<cx> zeros;
    for (const Factor& f : n.factors) {
        if (f.conjugated || f.exponent < 0 || atom_class(f.atom) != AtomClass::Inner)
            throw Error(Errc::NotAnalytic, "spectrum needs an analytic inner symbol");
        if (const auto* s = std::get_if<SingularExp>(&f.atom)) {
            a += s->a * f.exponent;
        } else if (const auto* b = std::get_if<BlaschkeZeros>(&f.atom)) {
            for (int k = 0; k < f.exponent; ++k)
                zeros.insert(zeros.end(), b->zeros.begin(), b->zeros.end());
        } else if (std::holds_alternative<BlaschkeAtI>(f.atom)) {
            for (int k = 0; k < f.exponent; ++k) zeros.emplace_back(0.0, 1.0);
        } else {
            throw Error(Errc::NotEvaluable, "opaque spectrum atom has no evaluator");
        }
    }

    auto phase = [&](double x) { return detail::mif_phase(a, zeros, x) + n.angle; };

    // adaptive sample: split any panel whose phase step exceeds pi/2
    std::vector<std::pair<double, double>> samples; // (x, phase)
    const double step = (hi - lo) / static_cast<double>(resolution);
    for (std::size_t j = 0; j <= resolution; ++j) {
        const double x = j == resolution ? hi : lo + step * static_cast<double>(j);
        samples.emplace_back(x, phase(x));
    }
    for (std::size_t i = 0; i + 1 < samples.size();) {
        const auto [x0, p0] = samples[i];
        const auto [x1, p1] = samples[i + 1];
        if (p1 < p0 - 1e-9)
            throw Error(Errc::PhaseNotMonotone, "boundary phase decreases; not an inner symbol");
        if (std::abs(p1 - p0) > 0.5 * std::numbers::pi && x1 - x0 > 1e-12 * std::max(1.0, std::abs(x0))) {
            const double xm = 0.5 * (x0 + x1);
            samples.insert(samples.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                           {xm, phase(xm)});
            continue;
        }
        ++i;
    }

    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> found;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const auto [x0, p0] = samples[i];
        const auto [x1, p1] = samples[i + 1];
        const long k_lo = static_cast<long>(std::ceil(p0 / two_pi));
        const long k_hi = static_cast<long>(std::floor(p1 / two_pi));
        for (long k = k_lo; k <= k_hi; ++k) {
            const double target = two_pi * static_cast<double>(k);
            double l = x0, r = x1;
            while (r - l > 1e-10 * std::max(1.0, std::abs(l))) {
                const double m = 0.5 * (l + r);
                (phase(m) < target ? l : r) = m;
            }
            const double x = 0.5 * (l + r);
            if (found.empty() || x - found.back() > 1e-9 * std::max(1.0, std::abs(x)))
                found.push_back(x);
        }
    }

    PointSequence out;
    out.domain = PointSequence::Domain::Real;
    for (double x : found) out.points.emplace_back(x, 0.0);
    out.window = std::make_pair(lo, hi);
    out.source = "sigma";
    return out;
}

} // namespace tkl
