#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hardylat/taylor.hpp"

namespace hardylat::inner {

/// Zero of a finite Blaschke product, strictly inside the disk.
struct BlaschkeZero {
    ComplexD a{0.0, 0.0};
    int multiplicity = 1;
};

/// Point mass of the singular measure, at boundary angle theta.
struct SingularAtom {
    double theta = 0.0;
    double mass = 0.0;
};

/// Finite Blaschke zero list plus atomic singular part: the desk-scale inner
/// function. Finite lists have no zero accumulation points, so the
/// associated-set condition on limit points holds vacuously.
struct InnerSpec {
    std::vector<BlaschkeZero> blaschke;
    std::vector<SingularAtom> atoms;

    bool trivial() const { return blaschke.empty() && atoms.empty(); }

    int total_multiplicity() const {
        int m = 0;
        for (const auto& z : blaschke) m += z.multiplicity;
        return m;
    }

    /// Default truncation: empirical tail control for |a| <= 0.9, mass <= 1.
    int default_trunc_degree() const {
        return 64 + 16 * (total_multiplicity() + static_cast<int>(atoms.size()));
    }
};

namespace detail {

/// One Blaschke factor expanded to degree N via the geometric recurrence for
/// the Moebius form (a - z)/(1 - conj(a) z): c_0 = a, c_k = a conj(a)^k -
/// conj(a)^{k-1}. The unimodular normalization |a|/a is applied in float mode
/// only; in rational mode the factor is kept rotation-free so the
/// coefficients stay exact (zero sets and divisibility are unchanged by a
/// unimodular constant).
template <class C>
TaylorPoly<C> blaschke_factor(const ComplexD& a, int N) {
    using T = scalar_traits<C>;
    if (a == ComplexD{0.0, 0.0}) return TaylorPoly<C>::monomial(1);

    C aa;
    if constexpr (T::exact) {
        aa = RatComplex::from_doubles(a.real(), a.imag());
    } else {
        aa = a;
    }
    const C ca = T::conj(aa);

    std::vector<C> c(static_cast<std::size_t>(N) + 1, T::zero());
    c[0] = aa;
    C pw = T::one(); // conj(a)^{k-1}
    for (int k = 1; k <= N; ++k) {
        C prev = pw;
        pw = pw * ca;
        c[static_cast<std::size_t>(k)] = aa * pw - prev;
    }
    if constexpr (!T::exact) {
        const ComplexD rot = std::abs(a) / a;
        for (auto& x : c) x *= rot;
    }
    return TaylorPoly<C>(std::move(c));
}

} // namespace detail

/// Taylor coefficients to degree N of the finite Blaschke product over the
/// given zeros. Convention: a zero at the origin contributes a bare factor z.
template <class C = ComplexD>
TaylorPoly<C> blaschke_series(const std::vector<BlaschkeZero>& zeros, int N) {
    int total = 0;
    for (const auto& z : zeros) {
        if (std::abs(z.a) >= 1.0) throw std::invalid_argument("blaschke_series: zero not in open disk");
        if (z.multiplicity < 1) throw std::invalid_argument("blaschke_series: multiplicity must be >= 1");
        total += z.multiplicity;
    }
    if (N < total) throw std::invalid_argument("blaschke_series: N below total multiplicity");
    TaylorPoly<C> prod = TaylorPoly<C>::constant(scalar_traits<C>::one());
    for (const auto& z : zeros) {
        const TaylorPoly<C> factor = detail::blaschke_factor<C>(z.a, N);
        for (int m = 0; m < z.multiplicity; ++m) prod = multiply(prod, factor, N);
    }
    return prod.truncated(N);
}

/// exp of a truncated series by the standard recurrence
/// s_i = (1/i) sum_{j=1..i} j e_j s_{i-j}, s_0 = exp(e_0).
inline TaylorF series_exp(const TaylorF& e, int N) {
    std::vector<ComplexD> s(static_cast<std::size_t>(N) + 1, ComplexD{0.0, 0.0});
    s[0] = std::exp(to_complex(e.coeff(0)));
    for (int i = 1; i <= N; ++i) {
        ComplexD acc{0.0, 0.0};
        for (int j = 1; j <= i; ++j) acc += static_cast<double>(j) * to_complex(e.coeff(j)) * s[static_cast<std::size_t>(i - j)];
        s[static_cast<std::size_t>(i)] = acc / static_cast<double>(i);
    }
    return TaylorF(std::move(s));
}

/// Atomic singular inner function exp(-sum mu_j (zeta_j + z)/(zeta_j - z)).
/// The exponent expands as -sum mu_j (1 + 2 sum_k (z/zeta_j)^k), which is fed
/// through the series exponential. Empty atom list gives the constant 1.
inline TaylorF singular_series(const std::vector<SingularAtom>& atoms, int N) {
    if (N < 1) throw std::invalid_argument("singular_series: N must be >= 1");
    for (const auto& at : atoms)
        if (!(at.mass > 0.0)) throw std::invalid_argument("singular_series: mass must be positive");
    if (atoms.empty()) return TaylorF::constant({1.0, 0.0});

    std::vector<ComplexD> e(static_cast<std::size_t>(N) + 1, ComplexD{0.0, 0.0});
    for (const auto& at : atoms) {
        e[0] -= at.mass;
        const ComplexD zinv{std::cos(-at.theta), std::sin(-at.theta)}; // 1/zeta
        ComplexD pw{1.0, 0.0};
        for (int k = 1; k <= N; ++k) {
            pw *= zinv;
            e[static_cast<std::size_t>(k)] -= 2.0 * at.mass * pw;
        }
    }
    return series_exp(TaylorF(std::move(e)), N);
}

/// Blaschke part times singular part, truncated to N. In rational mode the
/// singular part must be empty (its coefficients are transcendental).
template <class C = ComplexD>
TaylorPoly<C> inner_series(const InnerSpec& spec, int N) {
    if constexpr (scalar_traits<C>::exact) {
        if (!spec.atoms.empty())
            throw std::invalid_argument("inner_series: atomic singular part requires float mode");
        return blaschke_series<C>(spec.blaschke, N);
    } else {
        TaylorPoly<C> b = blaschke_series<C>(spec.blaschke, N);
        if (!spec.atoms.empty()) b = multiply(b, singular_series(spec.atoms, N), N);
        return b;
    }
}

struct ModulusReport {
    double worst_interior_excess = 0.0;  // max(|f(z)| - 1) over interior samples
    double worst_boundary_deviation = 0.0; // max ||f| - 1| over admitted boundary points
    int boundary_points_checked = 0;
    bool ok = false;
};

/// Checks |f| <= 1 + tol inside and | |f| - 1 | <= tol on the boundary grid,
/// skipping boundary points within 0.1 rad of any exclusion angle (atom
/// positions and boundary-zero directions degrade truncation quality there).
template <class C>
ModulusReport inner_modulus_check(const TaylorPoly<C>& f, int grid,
                                  const std::vector<double>& exclusions, double tol) {
    if (grid < 16) throw std::invalid_argument("inner_modulus_check: grid must be >= 16");
    ModulusReport rep;
    const double two_pi = 2.0 * std::numbers::pi;

    const double radii[] = {0.25, 0.5, 0.75, 0.9375};
    for (double r : radii) {
        for (int j = 0; j < grid / 4; ++j) {
            const double th = two_pi * j / (grid / 4);
            const ComplexD z = r * ComplexD{std::cos(th), std::sin(th)};
            rep.worst_interior_excess =
                std::max(rep.worst_interior_excess, std::abs(evaluate(f, z)) - 1.0);
        }
    }

    for (int j = 0; j < grid; ++j) {
        const double th = two_pi * j / grid;
        bool excluded = false;
        for (double ex : exclusions) {
            double d = std::fmod(std::abs(th - ex), two_pi);
            d = std::min(d, two_pi - d);
            if (d <= 0.1) { excluded = true; break; }
        }
        if (excluded) continue;
        const ComplexD z{std::cos(th), std::sin(th)};
        rep.worst_boundary_deviation =
            std::max(rep.worst_boundary_deviation, std::abs(std::abs(evaluate(f, z)) - 1.0));
        ++rep.boundary_points_checked;
    }

    rep.ok = rep.worst_interior_excess <= tol && rep.worst_boundary_deviation <= tol;
    return rep;
}

/// Power-series division f / s to degree `keep`; s must have s(0) != 0.
inline TaylorF series_divide(const TaylorF& f, const TaylorF& s, int keep) {
    const ComplexD s0 = to_complex(s.coeff(0));
    if (std::abs(s0) == 0.0) throw std::invalid_argument("series_divide: divisor vanishes at 0");
    std::vector<ComplexD> h(static_cast<std::size_t>(keep) + 1, ComplexD{0.0, 0.0});
    for (int i = 0; i <= keep; ++i) {
        ComplexD acc = to_complex(f.coeff(i));
        for (int j = 1; j <= i; ++j) acc -= to_complex(s.coeff(j)) * h[static_cast<std::size_t>(i - j)];
        h[static_cast<std::size_t>(i)] = acc / s0;
    }
    return TaylorF(std::move(h));
}

struct DivisibilityReport {
    bool blaschke_ok = true;
    bool singular_ok = true;
    bool singular_heuristic = false; // tail-stability proxy, not a certified test
    double worst_zero_residual = 0.0;
    double norm_at_half = 0.0;
    double norm_at_full = 0.0;
    bool ok = true;
};

/// Does G divide the inner part of f? Blaschke part: f must vanish to the
/// declared multiplicity at every zero. Singular part: h = f / S is formed by
/// series division (S is zero-free in the disk) and accepted when the H^2
/// norm of h is stable between truncation N_check/2 and N_check. The singular
/// verdict is a heuristic: membership of f/S in H^2 is undecidable from
/// finitely many coefficients, and the division noise floor sits well above
/// the zero-residual tolerance, hence the separate tail threshold.
inline DivisibilityReport divides_inner_part(const InnerSpec& g, const TaylorF& f,
                                             int n_check, double tol,
                                             double singular_tail_tol = 1e-6) {
    if (f.is_identically_zero())
        throw std::invalid_argument("divides_inner_part: f is identically zero");
    DivisibilityReport rep;
    const double scale = std::max(1.0, hardy_norm(f));

    for (const auto& z : g.blaschke) {
        TaylorF d = f;
        for (int j = 0; j < z.multiplicity; ++j) {
            const double resid = std::abs(evaluate(d, z.a));
            rep.worst_zero_residual = std::max(rep.worst_zero_residual, resid);
            if (resid > tol * scale) rep.blaschke_ok = false;
            if (j + 1 < z.multiplicity) d = differentiate(d, 1);
        }
    }

    if (!g.atoms.empty()) {
        rep.singular_heuristic = true;
        // 1/S has coefficients growing like exp(2 sqrt(mass k)), so division
        // noise is eps-amplified by that factor; capping the division depth
        // keeps the noise floor below the tail threshold.
        const int n_div = std::min(n_check, 96);
        const TaylorF s = singular_series(g.atoms, n_div);
        const TaylorF h = series_divide(f, s, n_div);
        rep.norm_at_full = hardy_norm(h);
        rep.norm_at_half = hardy_norm(h.truncated(n_div / 2));
        if (std::abs(rep.norm_at_full - rep.norm_at_half) >
            singular_tail_tol * std::max(1.0, rep.norm_at_full))
            rep.singular_ok = false;
    }

    rep.ok = rep.blaschke_ok && rep.singular_ok;
    return rep;
}

} // namespace hardylat::inner
