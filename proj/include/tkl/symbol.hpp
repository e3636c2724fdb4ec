#pragma once

// Symbol expressions and the normalization calculus.
//
// A SymbolExpr is a formal product
//
//     e = c * prod_k  atom_k^{m_k}            (m_k a nonzero integer)
//
// where c is a unimodular constant and each factor may carry a conjugation
// flag.  On the boundary an inner function u satisfies conj(u) = u^{-1}, so
// normalization folds conjugation of inner atoms into the exponent sign;
// outer atoms keep an explicit flag because conj(O) is not outer.
//
// The unimodular constant is stored as a signed angle in (-pi, pi]: negating
// a signed angle is exact in floating point, which makes conjugation an
// involution structurally, not just up to rounding.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "atom.hpp"
#include "verdict.hpp"

namespace tkl {

struct Factor {
    Atom atom;
    int exponent = 1;
    bool conjugated = false;

    bool operator==(const Factor& o) const {
        return exponent == o.exponent && conjugated == o.conjugated && atom_equal(atom, o.atom);
    }
};

namespace detail {

constexpr double kAngleTol = 1e-12;

// Folds an angle into (-pi, pi] and snaps near-exact quadrant values, so
// products of the common constants {1, -1, i, -i} stay on the lattice.
inline double fold_angle(double t) {
    const double pi = std::numbers::pi;
    if (t > pi || t <= -pi) t = std::remainder(t, 2.0 * pi); // result in [-pi, pi]
    if (t <= -pi) t = pi;                                    // -pi and pi coincide
    for (int k = -1; k <= 2; ++k) {
        const double q = k * (pi / 2.0);
        if (std::abs(t - q) <= kAngleTol) return k == 0 ? 0.0 : q;
    }
    return t;
}

} // namespace detail

struct SymbolExpr {
    Space space = Space::Disk;
    double angle = 0.0; // unimodular constant e^{i*angle}, angle in (-pi, pi]
    std::vector<Factor> factors;

    bool operator==(const SymbolExpr& o) const {
        return space == o.space && angle == o.angle && factors == o.factors;
    }

    bool is_constant() const { return factors.empty(); }

    static SymbolExpr one(Space s) { return SymbolExpr{s, 0.0, {}}; }

    static SymbolExpr constant(Space s, double ang) {
        return SymbolExpr{s, detail::fold_angle(ang), {}};
    }

    static SymbolExpr atom(Space s, Atom a, int exponent = 1, bool conjugated = false) {
        validate_atom(a, s);
        SymbolExpr e{s, 0.0, {}};
        if (exponent != 0) e.factors.push_back(Factor{std::move(a), exponent, conjugated});
        return e;
    }
};

// ── construction helpers ────────────────────────────────────────────────

inline SymbolExpr operator*(const SymbolExpr& a, const SymbolExpr& b) {
    if (a.space != b.space)
        throw Error(Errc::MixedSpace, "cannot combine disk and half-plane symbols");
    SymbolExpr e{a.space, detail::fold_angle(a.angle + b.angle), a.factors};
    e.factors.insert(e.factors.end(), b.factors.begin(), b.factors.end());
    return e;
}

// Formal inverse: valid because every atom is a.e. nonzero on the boundary.
inline SymbolExpr inverse(const SymbolExpr& a) {
    SymbolExpr e{a.space, detail::fold_angle(-a.angle), a.factors};
    for (Factor& f : e.factors) f.exponent = -f.exponent;
    return e;
}

inline SymbolExpr operator/(const SymbolExpr& a, const SymbolExpr& b) { return a * inverse(b); }

inline SymbolExpr pow(const SymbolExpr& a, int n) {
    SymbolExpr e{a.space, detail::fold_angle(a.angle * n), a.factors};
    if (n == 0) return SymbolExpr::one(a.space);
    for (Factor& f : e.factors) f.exponent *= n;
    return e;
}

// ── normalize ───────────────────────────────────────────────────────────
//
// Canonical form: conjugation of inner atoms folded into exponent signs,
// SingularExp masses merged additively into at most one factor, like factors
// merged by exponent summation, unit atoms dropped, factors sorted by the
// fixed atom order.  Idempotent by construction.

inline SymbolExpr normalize(const SymbolExpr& e) {
    for (const Factor& f : e.factors) validate_atom(f.atom, e.space);

    double singular_mass = 0.0; // signed total of SingularExp exponents
    std::vector<Factor> work;
    work.reserve(e.factors.size());

    for (const Factor& f : e.factors) {
        if (f.exponent == 0 || atom_is_unit(f.atom)) continue;
        Factor g = f;
        if (atom_class(g.atom) == AtomClass::Inner && g.conjugated) {
            g.conjugated = false;
            g.exponent = -g.exponent;
        }
        if (const auto* s = std::get_if<SingularExp>(&g.atom)) {
            singular_mass += g.exponent * s->a;
            continue;
        }
        work.push_back(std::move(g));
    }

    if (singular_mass != 0.0) {
        work.push_back(Factor{SingularExp{std::abs(singular_mass)},
                              singular_mass > 0.0 ? 1 : -1, false});
    }

    std::stable_sort(work.begin(), work.end(), [](const Factor& x, const Factor& y) {
        if (int c = atom_compare(x.atom, y.atom)) return c < 0;
        return x.conjugated < y.conjugated;
    });

    SymbolExpr out{e.space, detail::fold_angle(e.angle), {}};
    for (std::size_t i = 0; i < work.size();) {
        std::size_t j = i;
        long long total = 0;
        while (j < work.size() && work[j].conjugated == work[i].conjugated &&
               atom_equal(work[j].atom, work[i].atom)) {
            total += work[j].exponent;
            ++j;
        }
        if (total != 0)
            out.factors.push_back(Factor{work[i].atom, static_cast<int>(total), work[i].conjugated});
        i = j;
    }
    return out;
}

// Factorwise conjugate.  Inner conjugation folds into exponents during
// normalization; outer atoms toggle their flag.  Involution: applying this
// twice returns normalize(e) exactly.
inline SymbolExpr conjugate(const SymbolExpr& e) {
    SymbolExpr c{e.space, e.angle == std::numbers::pi ? std::numbers::pi : -e.angle, e.factors};
    for (Factor& f : c.factors) f.conjugated = !f.conjugated;
    return normalize(c);
}

// ── class membership tests ──────────────────────────────────────────────

namespace detail {

// Outer factors certified constant are multiplicative units for every
// decision here (a positive constant is outer, bounded, invertible, and in
// both the Smirnov class and its conjugate), so the tests skip them.
inline bool neutral_outer(const Atom& a) {
    const auto* o = std::get_if<OuterSource>(&a);
    return o && o->certified_constant();
}

} // namespace detail

namespace detail {

// Could the positive inner content of a normalized symbol divide into its
// negative inner content as inner functions?  Normalize already merged
// identical atoms, so any remaining cancellation crosses atom identities
// (a zero listed inside a different BlaschkeZeros atom, b_i versus an
// explicit zero at i, or an opaque spectrum whose factorization is not
// visible).  True means "conceivable" and the caller degrades to Unknown;
// false is a certificate that no cancellation exists.
inline bool inner_division_conceivable(const SymbolExpr& e) {
    std::vector<cx> demand_zeros, supply_zeros;
    std::vector<std::pair<double, double>> demand_mass, supply_mass; // (angle, weight)
    double demand_smass = 0.0;
    int wildcard_demands = 0;
    bool mif_supply = false;
    bool any_supply = false;

    for (const Factor& f : e.factors) {
        if (atom_class(f.atom) != AtomClass::Inner || f.exponent == 0) continue;
        const int mult = std::abs(f.exponent);
        const bool pos = f.exponent > 0;
        if (!pos) any_supply = true;
        auto& zeros = pos ? demand_zeros : supply_zeros;
        auto& mass = pos ? demand_mass : supply_mass;
        if (std::holds_alternative<Coordinate>(f.atom)) {
            zeros.insert(zeros.end(), mult, cx(0.0, 0.0));
        } else if (std::holds_alternative<BlaschkeAtI>(f.atom)) {
            zeros.insert(zeros.end(), mult, cx(0.0, 1.0));
        } else if (const auto* b = std::get_if<BlaschkeZeros>(&f.atom)) {
            for (const cx& z : b->zeros) zeros.insert(zeros.end(), mult, z);
        } else if (const auto* s = std::get_if<SingularExp>(&f.atom)) {
            if (pos) demand_smass += mult * s->a; // supply-side S only helps a Mif demand
        } else if (const auto* m = std::get_if<SingularDiskMeasure>(&f.atom)) {
            for (const auto& [ang, w] : m->masses) mass.emplace_back(ang, mult * w);
        } else if (std::holds_alternative<MifSpectrum>(f.atom)) {
            if (pos)
                ++wildcard_demands;
            else
                mif_supply = true;
        }
    }

    // An opaque factor in the denominator can absorb anything.
    if (mif_supply) return true;
    // A singular mass at infinity divides only into another singular or
    // opaque factor; none is available here.
    if (demand_smass > 0.0) return false;
    // An opaque factor in the numerator needs some denominator to divide.
    if (wildcard_demands > 0 && !any_supply) return false;

    // Multiset containment for zeros, exact complex equality.
    std::sort(demand_zeros.begin(), demand_zeros.end(),
              [](const cx& a, const cx& b) { return PointSequence::point_less(a, b); });
    std::sort(supply_zeros.begin(), supply_zeros.end(),
              [](const cx& a, const cx& b) { return PointSequence::point_less(a, b); });
    std::size_t si = 0;
    for (const cx& z : demand_zeros) {
        while (si < supply_zeros.size() && PointSequence::point_less(supply_zeros[si], z)) ++si;
        if (si >= supply_zeros.size() || supply_zeros[si] != z) return false;
        ++si;
    }

    // Pointwise comparison of singular disk masses.
    for (const auto& [ang, w] : demand_mass) {
        double avail = 0.0;
        for (const auto& [sang, sw] : supply_mass)
            if (sang == ang) avail += sw;
        if (avail < w) return false;
    }
    return true;
}

} // namespace detail

// Membership of e in the conjugate Smirnov class conj(N+), decided on the
// normalized shape: conj(e) is a ratio G/F with outer denominator exactly
// when every inner factor of e has exponent <= 0 and every nonconstant
// outer factor is conjugated.  A positive inner exponent certifies
// NotMember once cross-atom cancellation is ruled out; when a hidden
// cancellation is conceivable the verdict degrades to Unknown.
inline ClassVerdict in_conj_smirnov(const SymbolExpr& expr) {
    const SymbolExpr e = normalize(expr);

    bool positive_inner = false;
    bool positive_inner_maybe_constant = false;
    bool outer_unconjugated_nonconst = false;
    bool outer_unconjugated_unknown = false;

    for (const Factor& f : e.factors) {
        if (atom_class(f.atom) == AtomClass::Inner) {
            if (f.exponent > 0) {
                positive_inner = true;
                if (!atom_certified_nonconstant(f.atom)) positive_inner_maybe_constant = true;
            }
        } else {
            if (detail::neutral_outer(f.atom) || f.conjugated) continue;
            if (atom_certified_nonconstant(f.atom))
                outer_unconjugated_nonconst = true;
            else
                outer_unconjugated_unknown = true;
        }
    }

    // Unconjugated nonconstant outer content survives conjugation as an
    // antianalytic factor nothing can cancel.
    if (outer_unconjugated_nonconst) return ClassVerdict::NotMember;

    if (positive_inner) {
        if (detail::inner_division_conceivable(e)) return ClassVerdict::Unknown;
        if (positive_inner_maybe_constant) return ClassVerdict::Unknown;
        return ClassVerdict::NotMember;
    }

    if (outer_unconjugated_unknown) return ClassVerdict::Unknown;
    return ClassVerdict::Member;
}

// Certified boundedness of |e| on the boundary.  Inner factors contribute
// modulus one regardless of exponent; an outer factor with exponent k needs
// its log-modulus certified bounded above (k > 0) or below (k < 0).
// Sampled tables certify nothing global, so they yield Unknown.
inline ClassVerdict is_bounded(const SymbolExpr& expr) {
    const SymbolExpr e = normalize(expr);
    bool unknown = false;
    for (const Factor& f : e.factors) {
        const auto* o = std::get_if<OuterSource>(&f.atom);
        if (!o) continue;
        if (f.exponent > 0 && !o->upper) unknown = true;
        if (f.exponent < 0 && !o->lower) unknown = true;
    }
    return unknown ? ClassVerdict::Unknown : ClassVerdict::Member;
}

// Splits an analytic symbol into (inner, outer) parts.  Preconditions: all
// inner exponents >= 0 and no conjugated outer factor; otherwise the symbol
// has antianalytic content and NotAnalytic is thrown.  The unimodular
// constant travels with the inner part.
inline std::pair<SymbolExpr, SymbolExpr> inner_outer_split(const SymbolExpr& expr) {
    const SymbolExpr e = normalize(expr);
    SymbolExpr inner{e.space, e.angle, {}};
    SymbolExpr outer{e.space, 0.0, {}};
    for (const Factor& f : e.factors) {
        if (atom_class(f.atom) == AtomClass::Inner) {
            if (f.exponent < 0)
                throw Error(Errc::NotAnalytic, "conjugated inner factor in analytic split");
            inner.factors.push_back(f);
        } else {
            if (f.conjugated && !detail::neutral_outer(f.atom))
                throw Error(Errc::NotAnalytic, "conjugated outer factor in analytic split");
            outer.factors.push_back(f);
        }
    }
    return {inner, outer};
}

// True when the normalized symbol has purely analytic shape: no negative
// inner exponents, no conjugated nonconstant outer factors.
inline bool is_analytic_form(const SymbolExpr& expr) {
    const SymbolExpr e = normalize(expr);
    for (const Factor& f : e.factors) {
        if (atom_class(f.atom) == AtomClass::Inner) {
            if (f.exponent < 0) return false;
        } else if (f.conjugated && !detail::neutral_outer(f.atom)) {
            return false;
        }
    }
    return true;
}

} // namespace tkl
