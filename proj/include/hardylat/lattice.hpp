#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardylat/inner.hpp"
#include "hardylat/operators.hpp"
#include "hardylat/spaces.hpp"
#include "hardylat/taylor.hpp"

namespace hardylat::lattice {

inline constexpr double kAngleTol = 1e-12;

inline double canonical_angle(double theta) {
    const double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    return t;
}

inline bool same_angle(double a, double b) {
    const double two_pi = 2.0 * std::numbers::pi;
    double d = std::abs(canonical_angle(a) - canonical_angle(b));
    d = std::min(d, two_pi - d);
    return d <= kAngleTol;
}

/// Nested boundary sets K_0 >= K_1 >= ... >= K_{n-1}, each a finite set of
/// angles. Finite sets make the isolation condition on K_0 \ K_{n-1}
/// automatic.
struct ZeroChain {
    int n = 1;
    std::vector<std::vector<double>> sets;

    static ZeroChain empty(int n) {
        ZeroChain c;
        c.n = n;
        c.sets.assign(static_cast<std::size_t>(n), {});
        return c;
    }

    const std::vector<double>& level(int i) const { return sets[static_cast<std::size_t>(i)]; }

    static bool contains(const std::vector<double>& set, double theta) {
        return std::any_of(set.begin(), set.end(), [&](double t) { return same_angle(t, theta); });
    }

    /// 1 + max{ i : theta in K_i }: the minimal vanishing order making the
    /// membership conditions hold at theta. Zero if theta is not in K_0.
    int vanishing_order(double theta) const {
        int order = 0;
        for (int i = 0; i < static_cast<int>(sets.size()); ++i)
            if (contains(sets[static_cast<std::size_t>(i)], theta)) order = i + 1;
        return order;
    }
};

/// The data of an ideal I{G; K_0, ..., K_{n-1}}: the dimension parameter, the
/// inner function, the zero chain, plus desk-scale working parameters.
struct IdealSpec {
    int n = 1;
    inner::InnerSpec inner_part;
    ZeroChain chain;
    int trunc_degree = 0;      // 0 = use the inner spec's default
    double tol = 1e-9;
    int atom_vanish_boost = -1; // extra boundary-zero order at each atom; -1 = n + 2

    int working_trunc() const {
        int base = trunc_degree > 0 ? trunc_degree : inner_part.default_trunc_degree();
        // Atomic singular factors have slowly decaying derivative
        // coefficients; raise the budget when atoms are present.
        if (!inner_part.atoms.empty()) base *= 2;
        return base;
    }

    /// Order of the extra (z - zeta)^order factor stapled to every atom by
    /// make_member. The atom's Taylor coefficients decay only like k^{-3/4},
    /// so the chain's minimal order n alone leaves the n-th derivative sum
    /// divergent; the default n + 2 brings the total vanishing order at the
    /// atom to 2n + 2, enough for a tail that the stability check can see
    /// converge.
    int atom_boost() const { return atom_vanish_boost >= 0 ? atom_vanish_boost : n + 2; }
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
};

/// Checks Definition-3 style conditions on the data: chain nesting, atoms
/// supported inside K_{n-1}, Blaschke zeros interior. Finite zero lists have
/// no limit points, so the association condition is vacuous; a warning is
/// emitted for zeros within 1e-3 of the boundary (truncation quality
/// degrades there).
ValidationReport validate_spec(const IdealSpec& spec);

struct CarlesonReport {
    double value = 0.0;              // quadrature at the requested grid
    std::vector<double> refinements; // values at m, 2m, 4m
    std::vector<int> flagged;        // per-level count of clamped node collisions
    bool divergent = false;
    double drop_threshold = 1.5;
};

/// Midpoint quadrature of log rho over the circle with rho(z) the chordal
/// distance to K = K_0 union {Blaschke zeros}. Empty K reads rho = 1, so the
/// integral is exactly 0. Nodes with rho < 1e-14 are clamped to 1e-14 and
/// counted as collisions. The grid is doubled twice; a "divergent" advisory
/// verdict is raised when the (negative) value deepens by more than
/// drop_threshold at both doublings. A numeric verdict only: the true
/// criterion is the log-integrability condition itself.
CarlesonReport carleson_integral(const IdealSpec& spec, int quad_points,
                                 double drop_threshold = 1.5);

/// Boundary points representable exactly as rational complex numbers: the
/// four quarter angles plus a small catalog of Pythagorean points.
std::optional<RatComplex> unit_point_exact(double theta);

/// All exactly representable catalog angles (used by the rational-mode
/// random spec model).
const std::vector<double>& exact_unit_angles();

namespace detail {

/// Cosine taper over the top quarter of the coefficient range. A hard cutoff
/// of the slowly decaying singular series leaves O(|s_N|) jumps that the
/// polynomial factors cannot cancel, and those corrupted top coefficients
/// blow up under D^n; the smooth window preserves the finite-difference
/// cancellation through the tail.
inline TaylorF taper_top_quarter(const TaylorF& f) {
    const int n = f.trunc_degree();
    const int start = (3 * n) / 4;
    std::vector<ComplexD> c = f.coeffs();
    for (int k = start + 1; k <= n; ++k) {
        const double t = static_cast<double>(k - start) / static_cast<double>(n - start);
        c[static_cast<std::size_t>(k)] *= 0.5 * (1.0 + std::cos(std::numbers::pi * t));
    }
    return TaylorF(std::move(c));
}

template <class C>
C boundary_point(double theta) {
    if constexpr (scalar_traits<C>::exact) {
        auto p = unit_point_exact(theta);
        if (!p)
            throw std::invalid_argument(
                "boundary point at angle " + std::to_string(theta) +
                " is not exactly representable; use float mode");
        return *p;
    } else {
        return ComplexD{std::cos(theta), std::sin(theta)};
    }
}

} // namespace detail

/// prod_{zeta in K_0} (z - zeta)^{d(zeta)} with the minimal vanishing orders
/// d(zeta) = 1 + max{ i : zeta in K_i }.
template <class C>
TaylorPoly<C> boundary_factor(const ZeroChain& chain) {
    TaylorPoly<C> prod = TaylorPoly<C>::constant(scalar_traits<C>::one());
    if (chain.sets.empty()) return prod;
    for (double theta : chain.level(0)) {
        const C zeta = detail::boundary_point<C>(theta);
        const TaylorPoly<C> factor(std::vector<C>{-zeta, scalar_traits<C>::one()});
        const int d = chain.vanishing_order(theta);
        for (int j = 0; j < d; ++j) prod = multiply(prod, factor, kKeepFull);
    }
    return prod;
}

/// A generated ideal member: G_series * boundary_factor * z^n * q, assembled
/// at full product degree. The z^n factor is the minimal correction placing
/// the member in 0S_n^2 (the inner/boundary prefactor need not vanish at 0).
template <class C>
struct MemberRecipe {
    TaylorPoly<C> cofactor;
    TaylorPoly<C> member;
};

template <class C>
MemberRecipe<C> make_member(const IdealSpec& spec, const TaylorPoly<C>& q) {
    const int ng = spec.working_trunc();
    TaylorPoly<C> m = inner::inner_series<C>(spec.inner_part, ng);
    if constexpr (!scalar_traits<C>::exact) {
        if (!spec.inner_part.atoms.empty()) m = detail::taper_top_quarter(m);
    }
    m = multiply(m, boundary_factor<C>(spec.chain), kKeepFull);
    for (const auto& atom : spec.inner_part.atoms) {
        const C zeta = detail::boundary_point<C>(atom.theta);
        const TaylorPoly<C> factor(std::vector<C>{-zeta, scalar_traits<C>::one()});
        for (int j = 0; j < spec.atom_boost(); ++j) m = multiply(m, factor, kKeepFull);
    }
    for (int j = 0; j < spec.n; ++j) m = ops::apply_shift(m);
    m = multiply(m, q, kKeepFull);
    return {q, std::move(m)};
}

struct MembershipReport {
    bool cond_i = true;          // vanishing through order i on each K_i
    bool cond_ii = true;         // G divides the inner part
    bool in_sn2 = true;          // sn_norm finite and tail-stable
    bool in_zero_subalgebra = true;
    bool ok = true;
    bool cond_i_exact = false;   // every residual was an exact rational zero
    bool sn2_heuristic = false;  // atoms present: numeric verdict only
    double worst_boundary_residual = 0.0;
    double sn_total = 0.0;
    double sn_total_half = 0.0;
};

/// Tail-stability threshold for the in_sn2 verdict. Atomic singular factors
/// converge slowly in the derivative norm, so their (heuristic) verdict gets
/// a coarser threshold.
inline double sn_tail_stability_rel(const IdealSpec& spec) {
    return spec.inner_part.atoms.empty() ? 1e-6 : 1e-3;
}

/// Definition-3 membership of a concrete series: boundary vanishing orders,
/// inner-part divisibility, S_n^2 tail stability, and the first-n-coefficients
/// condition.
template <class C>
MembershipReport check_membership(const TaylorPoly<C>& f, const IdealSpec& spec) {
    MembershipReport rep;
    const double tol = spec.tol;
    const double scale = std::max(1.0, hardy_norm(f));

    rep.cond_i_exact = scalar_traits<C>::exact;
    for (int i = 0; i < spec.n && i < static_cast<int>(spec.chain.sets.size()); ++i) {
        for (double theta : spec.chain.level(i)) {
            TaylorPoly<C> d = f;
            for (int j = 0; j <= i; ++j) {
                double resid;
                if constexpr (scalar_traits<C>::exact) {
                    auto p = unit_point_exact(theta);
                    if (p) {
                        const C v = evaluate(d, *p);
                        resid = std::abs(to_complex(v));
                        if (!scalar_traits<C>::is_zero(v)) rep.cond_i_exact = false;
                    } else {
                        rep.cond_i_exact = false;
                        resid = std::abs(evaluate(d, ComplexD{std::cos(theta), std::sin(theta)}));
                    }
                } else {
                    rep.cond_i_exact = false;
                    resid = std::abs(evaluate(d, ComplexD{std::cos(theta), std::sin(theta)}));
                }
                rep.worst_boundary_residual = std::max(rep.worst_boundary_residual, resid);
                if (resid > tol * scale) rep.cond_i = false;
                if (j < i) d = differentiate(d, 1);
            }
        }
    }

    if (!f.is_identically_zero()) {
        const auto div = inner::divides_inner_part(spec.inner_part, to_float(f),
                                                   spec.working_trunc(), tol);
        rep.cond_ii = div.ok;
    }

    const auto full = spaces::sn_norm(f, spec.n);
    const auto half = spaces::sn_norm(f.truncated(std::max(1, f.trunc_degree() / 2)), spec.n);
    rep.sn_total = full.total;
    rep.sn_total_half = half.total;
    rep.sn2_heuristic = !spec.inner_part.atoms.empty();
    rep.in_sn2 = std::isfinite(full.total) &&
                 std::abs(full.total - half.total) <=
                     sn_tail_stability_rel(spec) * std::max(1.0, full.total);

    rep.in_zero_subalgebra =
        spaces::in_zero_subalgebra(f, spec.n, spaces::default_zero_subalgebra_tol(f, spec.n));

    rep.ok = rep.cond_i && rep.cond_ii && rep.in_sn2 && rep.in_zero_subalgebra;
    return rep;
}

/// Basis data for a candidate member of Lat T_n: pre-images g in the ideal
/// intersected with 0S_n^2, and the elements f = g^{(n)}.
template <class C>
struct SubspaceBasis {
    IdealSpec spec;
    std::vector<TaylorPoly<C>> pre_images;
    std::vector<TaylorPoly<C>> elements;
};

template <class C>
SubspaceBasis<C> build_subspace(const IdealSpec& spec, const std::vector<TaylorPoly<C>>& cofactors) {
    if (cofactors.empty()) throw std::invalid_argument("build_subspace: empty cofactor list");
    SubspaceBasis<C> basis;
    basis.spec = spec;
    for (const auto& q : cofactors) {
        auto recipe = make_member<C>(spec, q);
        basis.elements.push_back(differentiate(recipe.member, spec.n));
        basis.pre_images.push_back(std::move(recipe.member));
    }
    return basis;
}

struct InvarianceReport {
    double max_residual = 0.0;   // T_n f vs D^n(z g), max over basis
    bool exact = true;           // every residual exactly zero (rational mode)
    bool structural_ok = true;   // z g passes membership again
    std::vector<MembershipReport> shifted_membership;
    bool ok = false;
};

/// Certifies T_n f in S for every basis element: (1) T_n(f) equals
/// differentiate(shift(g), n) coefficientwise (the intertwining pushed
/// through D^n), and (2) shift(g) = z g passes the membership checks again.
template <class C>
InvarianceReport check_invariance(const SubspaceBasis<C>& basis) {
    if (basis.pre_images.empty()) throw std::invalid_argument("check_invariance: empty basis");
    InvarianceReport rep;
    for (std::size_t i = 0; i < basis.pre_images.size(); ++i) {
        const auto& g = basis.pre_images[i];
        const auto& f = basis.elements[i];
        const TaylorPoly<C> lhs = ops::apply_tn(f, basis.spec.n);
        const TaylorPoly<C> rhs = differentiate(ops::apply_shift(g), basis.spec.n);
        rep.max_residual = std::max(rep.max_residual, max_abs_residual(lhs, rhs));
        rep.exact = rep.exact && exactly_equal(lhs, rhs);

        const auto membership = check_membership(ops::apply_shift(g), basis.spec);
        rep.structural_ok = rep.structural_ok && membership.ok;
        rep.shifted_membership.push_back(membership);
    }
    rep.ok = rep.structural_ok && (rep.exact || rep.max_residual <= basis.spec.tol);
    return rep;
}

struct DistanceReport {
    double distance = 0.0;
    double gram_condition = 0.0;
    bool pseudo_inverse_used = false;
    bool exact_zero = false;
};

/// H^2-orthogonal distance from f to the span of the basis elements via the
/// Gram matrix: sqrt(||f||^2 - c* G^{-1} c), clipped at 0. Inputs are
/// normalized before the solve; a singular Gram matrix falls back to the
/// pseudo-inverse and is reported, not thrown.
DistanceReport distance_to_span(const TaylorF& f, const std::vector<TaylorF>& span);

/// Exact-arithmetic variant: the normal equations are solved over the
/// rationals, so an in-span input reports distance exactly zero. The normal
/// equations G x = c are always consistent (c lies in the column space of G),
/// hence a rank-deficient Gram matrix only needs pivot skipping.
DistanceReport distance_to_span(const TaylorQ& f, const std::vector<TaylorQ>& span);

} // namespace hardylat::lattice
