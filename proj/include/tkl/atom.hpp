#pragma once

// Symbol atoms.
//
// A boundary symbol is a product of atoms raised to integer exponents, each
// optionally conjugated, times a unimodular constant.  Atoms are immutable
// values; every atom carries the space it lives on and a classification tag
// (Inner / Outer / Const) that is computable without evaluating anything.
//
// Atom identity is deliberately conservative: two BlaschkeZeros atoms are
// equal iff their zero lists are elementwise equal in listed order, two
// opaque spectra are equal iff their labels and point lists agree.  Missed
// identifications degrade verdicts to Unknown downstream, never to wrong
// answers.

#include <cmath>
#include <complex>
#include <cstdio>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sequence.hpp"
#include "verdict.hpp"

namespace tkl {

enum class Space { Disk, HalfPlane };

inline const char* to_string(Space s) { return s == Space::Disk ? "disk" : "halfplane"; }

enum class AtomClass { Inner, Outer, Const };

// ── atom payloads ───────────────────────────────────────────────────────

// The coordinate function z on the disk (inner, degree 1).
struct Coordinate {
    bool operator==(const Coordinate&) const { return true; }
};

// b_i(z) = (z - i)/(z + i), the elementary half-plane Blaschke factor at i.
struct BlaschkeAtI {
    bool operator==(const BlaschkeAtI&) const { return true; }
};

// Finite (or truncated) Blaschke product with the given zero list.  Disk
// zeros lie in the punctured disk 0 < |a| < 1; half-plane zeros have
// strictly positive imaginary part.  Multiplicity is expressed by repeats.
struct BlaschkeZeros {
    std::vector<cx> zeros;
    // Set when the list came from a named sequence reference; used by the
    // printer so `B[@name]` survives round trips.
    std::optional<std::string> seq_label;

    bool operator==(const BlaschkeZeros& o) const {
        return zeros == o.zeros && seq_label == o.seq_label;
    }
};

// S(a)(z) = e^{iaz}, the half-plane singular inner with mass a >= 0 at
// infinity.  Products fold additively: S(2)*S(3) normalizes to S(5).
struct SingularExp {
    double a = 0.0;
    bool operator==(const SingularExp& o) const { return a == o.a; }
};

// Disk singular inner for a finite sum of point masses: mass weight > 0 at
// zeta = e^{i*angle}, angles distinct and stored sorted.
struct SingularDiskMeasure {
    std::vector<std::pair<double, double>> masses; // (angle, weight)
    bool operator==(const SingularDiskMeasure& o) const { return masses == o.masses; }
};

// Outer atom: determined by its boundary log-modulus.  Closed-form sources
// are named and carry certified global bounds; sampled tables certify
// nothing globally (bounded tests on them return Unknown).
struct OuterSource {
    std::string name;              // "unit" | "exp-cauchy" | "cos" | "band" | "table"
    std::vector<double> params;    // band: {lo, hi}
    std::shared_ptr<const std::vector<std::pair<double, double>>> table; // (x, log|f|)
    std::string table_path;        // for printing table sources

    std::optional<double> lower;   // certified inf of log|f|
    std::optional<double> upper;   // certified sup of log|f|
    bool certified_nonconstant = false;

    bool certified_constant() const {
        return lower && upper && *lower == *upper;
    }

    // log|f| at boundary abscissa x (angle on the disk, real on the line).
    double log_modulus(double x) const;

    bool operator==(const OuterSource& o) const {
        if (name != o.name || params != o.params || table_path != o.table_path) return false;
        if (!table != !o.table) return false;
        if (table && o.table && !(*table == *o.table)) return false;
        return true;
    }

    static OuterSource named(const std::string& id, Space space);
    static OuterSource band(double lo, double hi);
    static OuterSource from_table(std::vector<std::pair<double, double>> samples,
                                  std::string path = {});
};

inline double OuterSource::log_modulus(double x) const {
    if (name == "unit") return 0.0;
    if (name == "exp-cauchy") return 1.0 / (1.0 + x * x);
    if (name == "cos") return std::cos(x);
    if (name == "band") {
        const double mid = 0.5 * (params[0] + params[1]);
        const double half = 0.5 * (params[1] - params[0]);
        return mid + half * std::sin(x);
    }
    if (name == "table") {
        const auto& t = *table;
        if (t.empty()) return 0.0;
        if (x <= t.front().first) return t.front().second;
        if (x >= t.back().first) return t.back().second;
        auto it = std::lower_bound(t.begin(), t.end(), x,
                                   [](const auto& row, double v) { return row.first < v; });
        if (it->first == x) return it->second;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double w = (x - lo.first) / (hi.first - lo.first);
        return lo.second + w * (hi.second - lo.second);
    }
    throw Error(Errc::NotEvaluable, "unknown outer source '" + name + "'");
}

inline OuterSource OuterSource::named(const std::string& id, Space space) {
    OuterSource s;
    s.name = id;
    if (id == "unit") {
        s.lower = s.upper = 0.0;
        s.certified_nonconstant = false;
        return s;
    }
    if (id == "exp-cauchy") {
        if (space != Space::HalfPlane)
            throw Error(Errc::BadParameters, "outer source 'exp-cauchy' lives on the half-plane");
        s.lower = 0.0;
        s.upper = 1.0;
        s.certified_nonconstant = true;
        return s;
    }
    if (id == "cos") {
        if (space != Space::Disk)
            throw Error(Errc::BadParameters, "outer source 'cos' lives on the disk");
        s.lower = -1.0;
        s.upper = 1.0;
        s.certified_nonconstant = true;
        return s;
    }
    throw Error(Errc::BadParameters, "unknown outer source '" + id + "'");
}

inline OuterSource OuterSource::band(double lo, double hi) {
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw Error(Errc::BadParameters, "band outer source needs finite lo <= hi");
    OuterSource s;
    s.name = "band";
    s.params = {lo, hi};
    s.lower = lo;
    s.upper = hi;
    s.certified_nonconstant = lo != hi;
    return s;
}

inline OuterSource OuterSource::from_table(std::vector<std::pair<double, double>> samples,
                                           std::string path) {
    if (samples.empty())
        throw Error(Errc::NonIntegrableLogModulus, "empty log-modulus table");
    std::sort(samples.begin(), samples.end());
    double lo = samples.front().second, hi = lo;
    for (const auto& [x, v] : samples) {
        if (!std::isfinite(x) || !std::isfinite(v))
            throw Error(Errc::NonIntegrableLogModulus, "non-finite log-modulus sample");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    OuterSource s;
    s.name = "table";
    s.table_path = std::move(path);
    // Samples certify nonconstancy when two values differ, but never global
    // bounds: the function is only known at the sample abscissae.
    s.certified_nonconstant = lo != hi;
    s.table = std::make_shared<const std::vector<std::pair<double, double>>>(std::move(samples));
    return s;
}

// Opaque meromorphic inner function known only through its real spectrum
// {x : Theta(x) = 1}.  May carry a density report; decision procedures
// consume the reported value only when its confidence is Confident.
struct MifSpectrum {
    std::string label;
    std::shared_ptr<const PointSequence> spectrum;
    std::shared_ptr<const DensityReport> density;

    bool operator==(const MifSpectrum& o) const {
        if (label != o.label) return false;
        if (!spectrum != !o.spectrum) return false;
        if (spectrum && o.spectrum && !(*spectrum == *o.spectrum)) return false;
        return true;
    }
};

using Atom = std::variant<Coordinate, BlaschkeAtI, BlaschkeZeros, SingularExp,
                          SingularDiskMeasure, MifSpectrum, OuterSource>;

// ── classification and validation ───────────────────────────────────────

inline AtomClass atom_class(const Atom& a) {
    if (std::holds_alternative<OuterSource>(a)) return AtomClass::Outer;
    return AtomClass::Inner;
}

inline bool atom_allowed_in(const Atom& a, Space space) {
    struct V {
        Space s;
        bool operator()(const Coordinate&) const { return s == Space::Disk; }
        bool operator()(const BlaschkeAtI&) const { return s == Space::HalfPlane; }
        bool operator()(const BlaschkeZeros&) const { return true; }
        bool operator()(const SingularExp&) const { return s == Space::HalfPlane; }
        bool operator()(const SingularDiskMeasure&) const { return s == Space::Disk; }
        bool operator()(const MifSpectrum&) const { return s == Space::HalfPlane; }
        bool operator()(const OuterSource&) const { return true; }
    };
    return std::visit(V{space}, a);
}

// Constructor-level validation of atom payloads for a given space.
inline void validate_atom(const Atom& a, Space space) {
    if (!atom_allowed_in(a, space))
        throw Error(Errc::MixedSpace, "atom not defined on " + std::string(to_string(space)));
    if (const auto* b = std::get_if<BlaschkeZeros>(&a)) {
        for (const cx& z : b->zeros) {
            if (space == Space::Disk) {
                if (z == cx(0.0, 0.0)) throw Error(Errc::ZeroAtOrigin, "Blaschke zero at the origin");
                if (std::abs(z) >= 1.0)
                    throw Error(Errc::BadParameters, "disk Blaschke zero outside the open disk");
            } else if (!(z.imag() > 0.0)) {
                throw Error(Errc::BadParameters,
                            "half-plane Blaschke zero must have positive imaginary part");
            }
        }
    } else if (const auto* s = std::get_if<SingularExp>(&a)) {
        if (!(s->a >= 0.0) || !std::isfinite(s->a))
            throw Error(Errc::BadParameters, "singular exponent mass must be >= 0");
    } else if (const auto* m = std::get_if<SingularDiskMeasure>(&a)) {
        for (std::size_t i = 0; i < m->masses.size(); ++i) {
            if (!(m->masses[i].second > 0.0))
                throw Error(Errc::BadParameters, "singular measure weights must be positive");
            if (i > 0 && m->masses[i].first == m->masses[i - 1].first)
                throw Error(Errc::BadParameters, "singular measure mass points must be distinct");
        }
    }
}

// Nonconstant as a function, certifiably.  Conservative: opaque spectra with
// an empty point list might be unimodular constants, so they do not certify.
inline bool atom_certified_nonconstant(const Atom& a) {
    struct V {
        bool operator()(const Coordinate&) const { return true; }
        bool operator()(const BlaschkeAtI&) const { return true; }
        bool operator()(const BlaschkeZeros& b) const { return !b.zeros.empty(); }
        bool operator()(const SingularExp& s) const { return s.a > 0.0; }
        bool operator()(const SingularDiskMeasure& m) const { return !m.masses.empty(); }
        bool operator()(const MifSpectrum& m) const { return m.spectrum && !m.spectrum->empty(); }
        bool operator()(const OuterSource& o) const { return o.certified_nonconstant; }
    };
    return std::visit(V{}, a);
}

// True for atoms that are identically 1 and can be dropped by normalize.
inline bool atom_is_unit(const Atom& a) {
    if (const auto* b = std::get_if<BlaschkeZeros>(&a)) return b->zeros.empty();
    if (const auto* s = std::get_if<SingularExp>(&a)) return s->a == 0.0;
    if (const auto* m = std::get_if<SingularDiskMeasure>(&a)) return m->masses.empty();
    if (const auto* o = std::get_if<OuterSource>(&a))
        return o->lower && o->upper && *o->lower == 0.0 && *o->upper == 0.0;
    return false;
}

// ── total order on atoms ────────────────────────────────────────────────
//
// Normalize sorts factors by this order; it is arbitrary but fixed, so the
// canonical form (and the printed spelling) is unique.

namespace detail {

inline int cmp(double a, double b) { return a < b ? -1 : (a > b ? 1 : 0); }

inline int cmp(const cx& a, const cx& b) {
    if (int c = cmp(a.real(), b.real())) return c;
    return cmp(a.imag(), b.imag());
}

inline int cmp(const std::pair<double, double>& a, const std::pair<double, double>& b) {
    if (int c = cmp(a.first, b.first)) return c;
    return cmp(a.second, b.second);
}

template <class T>
inline int cmp_vec(const std::vector<T>& a, const std::vector<T>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = cmp(a[i], b[i])) return c;
    return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

inline int cmp_str(const std::string& a, const std::string& b) {
    return a < b ? -1 : (a > b ? 1 : 0);
}

} // namespace detail

inline int atom_compare(const Atom& a, const Atom& b) {
    if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
    using namespace detail;
    if (const auto* x = std::get_if<BlaschkeZeros>(&a)) {
        const auto& y = std::get<BlaschkeZeros>(b);
        if (int c = cmp_vec(x->zeros, y.zeros)) return c;
        return cmp_str(x->seq_label.value_or(""), y.seq_label.value_or(""));
    }
    if (const auto* x = std::get_if<SingularExp>(&a))
        return cmp(x->a, std::get<SingularExp>(b).a);
    if (const auto* x = std::get_if<SingularDiskMeasure>(&a))
        return cmp_vec(x->masses, std::get<SingularDiskMeasure>(b).masses);
    if (const auto* x = std::get_if<MifSpectrum>(&a)) {
        const auto& y = std::get<MifSpectrum>(b);
        if (int c = cmp_str(x->label, y.label)) return c;
        const bool xs = x->spectrum != nullptr, ys = y.spectrum != nullptr;
        if (xs != ys) return xs ? 1 : -1;
        if (!xs) return 0;
        return cmp_vec(x->spectrum->points, y.spectrum->points);
    }
    if (const auto* x = std::get_if<OuterSource>(&a)) {
        const auto& y = std::get<OuterSource>(b);
        if (int c = cmp_str(x->name, y.name)) return c;
        if (int c = cmp_vec(x->params, y.params)) return c;
        if (int c = cmp_str(x->table_path, y.table_path)) return c;
        const bool xt = x->table != nullptr, yt = y.table != nullptr;
        if (xt != yt) return xt ? 1 : -1;
        if (xt) return cmp_vec(*x->table, *y.table);
        return 0;
    }
    return 0; // Coordinate / BlaschkeAtI carry no payload
}

inline bool atom_equal(const Atom& a, const Atom& b) { return atom_compare(a, b) == 0; }

} // namespace tkl
