#pragma once

// Kernel calculus for generalized Toeplitz operators.
//
// A kernel is referenced as ker T_g^{E1,E2} where T_g = P_{E2} M_g|_{E1},
// E2 = Theta2 * H^2 a simply invariant subspace.  Membership of k in the
// kernel means k*g lands in the orthogonal complement of E2, which on the
// disk is Theta2 * conj(z H^2) and on the half-plane is q * conj(H^2).
//
// Decision procedures work on normalized symbol shapes.  They are exact on
// the transparent fragment (coordinates, listed Blaschke zeros, singular
// masses, certified outer sources) and degrade to Unknown whenever an
// opaque spectrum atom could hide a cancellation.  Decisions support the
// full Hardy space as domain E1; other domains are representational.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "symbol.hpp"
#include "verdict.hpp"

namespace tkl {

// ── space descriptors and kernel references ─────────────────────────────

struct SpaceDescriptor {
    enum class Kind { FullHardy, InvariantSubspace, ModelSpace };

    Kind kind = Kind::FullHardy;
    std::optional<SymbolExpr> inner; // Theta2 (invariant) or u (model space)

    static SpaceDescriptor full_hardy() { return {}; }

    // E2 = inner * H^2; the parameter must be purely inner and analytic.
    static SpaceDescriptor invariant(SymbolExpr theta) {
        return make(Kind::InvariantSubspace, std::move(theta));
    }

    // K_u = H^2 minus u H^2; representational only (not a valid codomain).
    static SpaceDescriptor model(SymbolExpr u) { return make(Kind::ModelSpace, std::move(u)); }

    // The inner function attached to the descriptor; 1 for the full space.
    SymbolExpr inner_symbol(Space space) const {
        if (inner) return *inner;
        return SymbolExpr::one(space);
    }

private:
    static SpaceDescriptor make(Kind k, SymbolExpr theta) {
        SymbolExpr n = normalize(theta);
        for (const Factor& f : n.factors) {
            if (atom_class(f.atom) != AtomClass::Inner || f.exponent < 0)
                throw Error(Errc::NotAnalytic, "space descriptor needs a purely inner symbol");
        }
        SpaceDescriptor d;
        d.kind = k;
        d.inner = std::move(n);
        return d;
    }
};

struct KernelRef {
    SymbolExpr symbol;
    SpaceDescriptor domain = SpaceDescriptor::full_hardy();
    SpaceDescriptor codomain = SpaceDescriptor::full_hardy();

    KernelRef(SymbolExpr g, SpaceDescriptor dom = SpaceDescriptor::full_hardy(),
              SpaceDescriptor cod = SpaceDescriptor::full_hardy())
        : symbol(normalize(g)), domain(std::move(dom)), codomain(std::move(cod)) {}
};

namespace detail {

inline SymbolExpr codomain_inner(const SpaceDescriptor& cod, Space space) {
    if (cod.kind == SpaceDescriptor::Kind::ModelSpace)
        throw Error(Errc::BadParameters,
                    "a model space is not simply invariant; use FullHardy or InvariantSubspace");
    return cod.inner_symbol(space);
}

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

// ── minimal kernels and maximal vectors ─────────────────────────────────

// Symbol of the smallest kernel containing the analytic function k = theta*p
// (inner-outer split): Theta2*conj(theta z p)/p on the disk and
// q*conj(theta p)/p on the half-plane.
inline SymbolExpr minimal_kernel_symbol(const SymbolExpr& k, const SpaceDescriptor& codomain) {
    const SymbolExpr theta2 = detail::codomain_inner(codomain, k.space);
    auto [theta, p] = inner_outer_split(k); // throws NotAnalytic if k is not analytic

    SymbolExpr g = theta2 * inverse(theta);
    if (k.space == Space::Disk) g = g * SymbolExpr::atom(k.space, Coordinate{}, -1);
    // conj(p)/p: the conjugated copy keeps its flag, the inverse cancels the
    // unconjugated outer content.
    SymbolExpr pconj = p;
    for (Factor& f : pconj.factors) f.conjugated = !f.conjugated;
    return normalize(g * pconj * inverse(p));
}

// Maximal vector of ker T_g^{H^2,E2}: k = g^{-1} Theta2 conj(p z) on the
// disk, g^{-1} q conj(p) on the half-plane, for a chosen outer parameter p.
inline SymbolExpr maximal_vector(const SymbolExpr& g, const SpaceDescriptor& codomain,
                                 const SymbolExpr& p) {
    if (g.space != p.space)
        throw Error(Errc::MixedSpace, "kernel symbol and outer parameter on different spaces");
    const SymbolExpr theta2 = detail::codomain_inner(codomain, g.space);
    const SymbolExpr pn = normalize(p);
    for (const Factor& f : pn.factors) {
        if (atom_class(f.atom) != AtomClass::Outer || f.conjugated)
            throw Error(Errc::NotOuter, "maximal vector parameter must be purely outer");
    }
    SymbolExpr pc = pn;
    for (Factor& f : pc.factors) f.conjugated = !f.conjugated;
    SymbolExpr k = inverse(normalize(g)) * theta2 * pc;
    if (g.space == Space::Disk) k = k * SymbolExpr::atom(g.space, Coordinate{}, -1);
    return normalize(k);
}

inline SymbolExpr maximal_vector(const SymbolExpr& g, const SpaceDescriptor& codomain) {
    return maximal_vector(g, codomain, SymbolExpr::one(g.space));
}

// Does k realize the maximal vector shape for the given kernel?  Checks that
// r = k*g*conj(Theta2) normalizes to conj(z)*conj(outer) (disk) resp.
// conj(outer) (half-plane).  A leftover inner factor conj(phi), phi
// nonconstant, defeats maximality; analytic inner residue means k is not in
// the kernel at all.  Opaque mixes return Unknown.
inline TriVerdict is_maximal_vector(const SymbolExpr& k, const KernelRef& kernel) {
    if (k.space != kernel.symbol.space)
        throw Error(Errc::MixedSpace, "vector and kernel symbol on different spaces");
    if (kernel.domain.kind != SpaceDescriptor::Kind::FullHardy)
        return TriVerdict::unknown("decisions support the full Hardy space domain only");
    if (!is_analytic_form(k))
        throw Error(Errc::NotAnalytic, "candidate maximal vector must be analytic");

    const SymbolExpr theta2 = detail::codomain_inner(kernel.codomain, k.space);
    const SymbolExpr r = normalize(k * kernel.symbol * conjugate(theta2));

    int coord_exp = 0;
    bool mif_present = false;
    bool pos_inner = false, neg_inner = false, neg_maybe_const = false;
    bool outer_bad = false, outer_unknown = false;
    for (const Factor& f : r.factors) {
        if (atom_class(f.atom) == AtomClass::Inner) {
            if (std::holds_alternative<MifSpectrum>(f.atom)) mif_present = true;
            if (k.space == Space::Disk && std::holds_alternative<Coordinate>(f.atom)) {
                coord_exp = f.exponent;
                continue;
            }
            if (f.exponent > 0) pos_inner = true;
            if (f.exponent < 0) {
                neg_inner = true;
                if (!atom_certified_nonconstant(f.atom)) neg_maybe_const = true;
            }
        } else if (!f.conjugated && !detail::neutral_outer(f.atom)) {
            if (atom_certified_nonconstant(f.atom))
                outer_bad = true;
            else
                outer_unknown = true;
        }
    }

    const int want_coord = k.space == Space::Disk ? -1 : 0;
    if (pos_inner || coord_exp > want_coord) {
        if (mif_present && detail::inner_division_conceivable(r))
            return TriVerdict::unknown("opaque spectrum atom may cancel the analytic residue");
        return TriVerdict::no("k*g has analytic residue; k does not lie in the kernel");
    }
    if (neg_inner || coord_exp < want_coord) {
        if (neg_maybe_const)
            return TriVerdict::unknown("inner residue of undetermined constancy");
        return TriVerdict::no("maximality obstructed by a nonconstant inner factor");
    }
    if (outer_bad) return TriVerdict::no("k*g has unconjugated outer residue; k is not in the kernel");
    if (outer_unknown) return TriVerdict::unknown("outer residue of uncertified constancy");
    return TriVerdict::yes(k.space == Space::Disk ? "k*g*conj(Theta2) = conj(z * outer)"
                                                  : "k*g*conj(q) = conj(outer)");
}

// ── nontriviality ───────────────────────────────────────────────────────

namespace detail {

// Certified bounded above and below: such an outer factor multiplies the
// kernel by an invertible function and never changes nontriviality.
inline bool outer_unit(const Atom& a) {
    const auto* o = std::get_if<OuterSource>(&a);
    return o && o->lower && o->upper;
}

} // namespace detail

// Is ker T_phi^{H^2, H^2} nonzero?  Decidable shapes:
//   conj(u) * outer-units, u nonconstant inner           -> Yes (model space)
//   S(t) * conj(Theta) * outer-units, known density D    -> t <=> 2*pi*D
//   purely analytic shape                                -> No (injective)
inline TriVerdict kernel_nontrivial(const SymbolExpr& phi) {
    const SymbolExpr e = normalize(phi);

    bool outer_units = true;
    bool pos_inner = false, neg_inner = false, neg_nonconst = false;
    const SingularExp* pos_sing = nullptr;
    int pos_sing_exp = 0, pos_inner_count = 0, neg_inner_count = 0;
    const MifSpectrum* neg_mif = nullptr;
    int neg_mif_exp = 0;
    bool conj_outer_nonunit = false;

    for (const Factor& f : e.factors) {
        if (atom_class(f.atom) == AtomClass::Inner) {
            if (f.exponent > 0) {
                pos_inner = true;
                ++pos_inner_count;
                if (const auto* s = std::get_if<SingularExp>(&f.atom)) {
                    pos_sing = s;
                    pos_sing_exp = f.exponent;
                }
            } else {
                neg_inner = true;
                ++neg_inner_count;
                if (atom_certified_nonconstant(f.atom)) neg_nonconst = true;
                if (const auto* m = std::get_if<MifSpectrum>(&f.atom)) {
                    neg_mif = m;
                    neg_mif_exp = f.exponent;
                }
            }
        } else if (!detail::outer_unit(f.atom)) {
            outer_units = false;
            if (f.conjugated && !detail::neutral_outer(f.atom)) conj_outer_nonunit = true;
        }
    }

    if (!pos_inner && neg_inner && outer_units) {
        if (!neg_nonconst)
            return TriVerdict::unknown("conjugated inner content of undetermined constancy");
        return TriVerdict::yes("symbol is conj(u) times outer units, u nonconstant inner");
    }

    if (pos_inner && pos_sing && pos_inner_count == 1 && pos_sing_exp == 1 && neg_mif &&
        neg_inner_count == 1 && neg_mif_exp == -1 && outer_units) {
        const auto& rep = neg_mif->density;
        if (!rep || rep->kind != DensityReport::Kind::Interior || !rep->confident())
            return TriVerdict::unknown("spectrum atom carries no confident interior density");
        const double t = pos_sing->a;
        const double thr = 2.0 * std::numbers::pi * rep->value;
        const double tol = 1e-12 * std::max(1.0, std::max(std::abs(t), std::abs(thr)));
        if (std::abs(t - thr) <= tol)
            return TriVerdict::unknown("exponent sits at the density threshold 2*pi*D");
        if (t < thr)
            return TriVerdict::yes("S(" + detail::fmt_double(t) + ")*conj(Theta): " +
                                   detail::fmt_double(t) + " < 2*pi*D = " + detail::fmt_double(thr));
        return TriVerdict::no("S(" + detail::fmt_double(t) + ")*conj(Theta): " +
                              detail::fmt_double(t) + " > 2*pi*D = " + detail::fmt_double(thr));
    }

    if (!neg_inner && !conj_outer_nonunit) {
        // No conjugated content at all: multiplication by an analytic symbol
        // followed by the analytic projection is injective.
        return TriVerdict::no("analytic symbol; T_phi is injective");
    }

    return TriVerdict::unknown("no decidable nontriviality shape matched");
}

// ── inclusion and multipliers ───────────────────────────────────────────

// ker T_g included in ker T_h (same codomain both sides), decided through
// h*g^{-1} in conj(N+).  The theorem behind this assumes both kernels are
// nontrivial; that hypothesis is the caller's responsibility and the
// verdict's certificate records when it could not be verified here.
inline TriVerdict kernel_inclusion(const SymbolExpr& g, const SymbolExpr& h) {
    if (g.space != h.space)
        throw Error(Errc::MixedSpace, "kernel symbols on different spaces");
    const SymbolExpr ratio = normalize(h * inverse(g));
    const ClassVerdict v = in_conj_smirnov(ratio);

    std::string hyp;
    if (!kernel_nontrivial(g).is_yes() || !kernel_nontrivial(h).is_yes())
        hyp = "; hypothesis (both kernels nontrivial) not verified here";

    switch (v) {
        case ClassVerdict::Member:
            return TriVerdict::yes("h/g lies in conj(N+)" + hyp);
        case ClassVerdict::NotMember:
            return TriVerdict::no("h/g has analytic inner or unconjugated outer content" + hyp);
        default:
            return TriVerdict::unknown("h/g membership in conj(N+) undecidable" + hyp);
    }
}

// Is w a multiplier from ker T_g^{H^2,E2} into ker T_h^{H^2,E2}?  Restricted
// contract: w must be certified bounded, which makes multiplication into E1
// automatic; the remaining condition is h*g^{-1}*w in conj(N).
inline TriVerdict multiplier_check(const SymbolExpr& w, const SymbolExpr& g, const SymbolExpr& h,
                                   const SpaceDescriptor& codomain = SpaceDescriptor::full_hardy()) {
    if (w.space != g.space || g.space != h.space)
        throw Error(Errc::MixedSpace, "multiplier and kernel symbols on different spaces");
    detail::codomain_inner(codomain, g.space); // validates the descriptor
    const ClassVerdict bounded = is_bounded(w);
    if (bounded == ClassVerdict::NotMember)
        throw Error(Errc::UnboundedMultiplier, "multiplier candidate is certified unbounded");

    const ClassVerdict v = in_conj_smirnov(normalize(h * inverse(g) * w));
    if (v == ClassVerdict::NotMember)
        return TriVerdict::no("h*g^-1*w leaves conj(N)");
    if (v == ClassVerdict::Member && bounded == ClassVerdict::Member)
        return TriVerdict::yes("w bounded and h*g^-1*w in conj(N)");
    if (v == ClassVerdict::Member)
        return TriVerdict::unknown("h*g^-1*w in conj(N) but boundedness of w uncertified");
    return TriVerdict::unknown("h*g^-1*w membership in conj(N) undecidable");
}

// Nontriviality of the multiplier space M2+(ker T_g, ker T_h) on the
// half-plane.  Hypotheses of the underlying equivalence: g, g^{-1}, h
// certified bounded and (h/g)*b_i in conj(N+); when the hypothesis cannot
// be certified the call fails rather than guessing.  Under the hypothesis
// the answer equals kernel_nontrivial(h/g).
inline TriVerdict multiplier_space_nontrivial(const SymbolExpr& g, const SymbolExpr& h) {
    if (g.space != h.space)
        throw Error(Errc::MixedSpace, "kernel symbols on different spaces");
    if (g.space != Space::HalfPlane)
        throw Error(Errc::BadParameters, "multiplier space dichotomy is a half-plane result");

    if (is_bounded(g) != ClassVerdict::Member || is_bounded(inverse(g)) != ClassVerdict::Member ||
        is_bounded(h) != ClassVerdict::Member)
        throw Error(Errc::HypothesisFailed, "g, g^-1, h must be certified bounded");

    const SymbolExpr ratio = normalize(h * inverse(g));
    const ClassVerdict hyp =
        in_conj_smirnov(normalize(ratio * SymbolExpr::atom(Space::HalfPlane, BlaschkeAtI{})));
    if (hyp != ClassVerdict::Member)
        throw Error(Errc::HypothesisFailed,
                    hyp == ClassVerdict::NotMember
                        ? "(h/g)*b_i is certified outside conj(N+)"
                        : "(h/g)*b_i membership in conj(N+) undecidable");

    TriVerdict v = kernel_nontrivial(ratio);
    v.certificate = "M2+ nontrivial iff ker T_{h/g} nontrivial; " + v.certificate;
    return v;
}

// ── dichotomy and dimension ─────────────────────────────────────────────

// Two-exponential dichotomy: for g = S(-b)*b_i, h = S(-a)*conj(Theta) with
// b > a > 0 and D the interior density of the spectrum, M2+ is nonzero iff
// b - a < 2*pi*D.  Ties within 1e-12 relative are Unknown.
inline TriVerdict example4_dichotomy(double b, double a, double density) {
    if (!(b > a) || !(a > 0.0) || !(density >= 0.0) || !std::isfinite(b) || !std::isfinite(a) ||
        !std::isfinite(density))
        throw Error(Errc::BadParameters, "dichotomy needs b > a > 0 and density >= 0");
    const double t = b - a;
    const double thr = 2.0 * std::numbers::pi * density;
    const double tol = 1e-12 * std::max(1.0, std::max(t, thr));
    if (std::abs(t - thr) <= tol)
        return TriVerdict::unknown("b-a = 2*pi*D = " + detail::fmt_double(thr) +
                                   " within tolerance");
    if (t < thr)
        return TriVerdict::yes("b-a = " + detail::fmt_double(t) +
                               " < 2*pi*D = " + detail::fmt_double(thr));
    return TriVerdict::no("b-a = " + detail::fmt_double(t) +
                          " > 2*pi*D = " + detail::fmt_double(thr));
}

// Dimension of ker T_phi for rational-type symbols phi = conj(B) * outer
// units: the Blaschke degree counted with multiplicity.  Conjugated
// singular factors give an infinite-dimensional model space.
struct RationalDim {
    bool infinite = false;
    std::size_t dim = 0;
};

inline RationalDim kernel_dim_rational(const SymbolExpr& phi) {
    const SymbolExpr e = normalize(phi);
    RationalDim out;
    for (const Factor& f : e.factors) {
        if (atom_class(f.atom) == AtomClass::Outer) {
            if (!detail::outer_unit(f.atom))
                throw Error(Errc::NotRational, "outer factor without certified bounds");
            continue;
        }
        if (f.exponent > 0)
            throw Error(Errc::NotRational, "symbol has analytic inner content");
        const std::size_t mult = static_cast<std::size_t>(-f.exponent);
        if (std::holds_alternative<Coordinate>(f.atom) ||
            std::holds_alternative<BlaschkeAtI>(f.atom)) {
            out.dim += mult;
        } else if (const auto* b = std::get_if<BlaschkeZeros>(&f.atom)) {
            out.dim += mult * b->zeros.size();
        } else if (std::holds_alternative<SingularExp>(f.atom) ||
                   std::holds_alternative<SingularDiskMeasure>(f.atom)) {
            out.infinite = true;
        } else {
            throw Error(Errc::NotRational, "opaque spectrum atom has no rational dimension");
        }
    }
    return out;
}

} // namespace tkl
