#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <vector>

#include "hardylat/scalar.hpp"

namespace hardylat {

inline constexpr int kKeepFull = -1;

/// Truncated Taylor series sum_{k<=N} a_k z^k. The coefficient vector always
/// has exactly trunc_degree()+1 entries; the zero polynomial is {0} with
/// degree 0, so the vector is never empty. Values are immutable after
/// construction and safe to share across threads.
template <class C>
class TaylorPoly {
public:
    using coeff_type = C;
    using traits = scalar_traits<C>;

    TaylorPoly() : coeffs_(1, traits::zero()) {}

    explicit TaylorPoly(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(traits::zero());
    }

    static TaylorPoly zero() { return TaylorPoly(); }

    static TaylorPoly constant(C value) { return TaylorPoly(std::vector<C>{std::move(value)}); }

    static TaylorPoly monomial(int degree, C coeff = traits::one()) {
        assert(degree >= 0);
        std::vector<C> c(static_cast<std::size_t>(degree) + 1, traits::zero());
        c.back() = std::move(coeff);
        return TaylorPoly(std::move(c));
    }

    int trunc_degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// Coefficient of z^k; indices past the truncation degree read as zero.
    const C& coeff(int k) const {
        static const C kZero = traits::zero();
        if (k < 0 || k > trunc_degree()) return kZero;
        return coeffs_[static_cast<std::size_t>(k)];
    }

    const std::vector<C>& coeffs() const { return coeffs_; }

    bool is_identically_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(),
                           [](const C& c) { return traits::is_zero(c); });
    }

    /// Highest index with a nonzero coefficient, or -1 for the zero polynomial.
    int effective_degree() const {
        for (int k = trunc_degree(); k >= 0; --k)
            if (!traits::is_zero(coeffs_[static_cast<std::size_t>(k)])) return k;
        return -1;
    }

    /// Same coefficients up to `degree`, higher ones dropped or zero-padded.
    TaylorPoly truncated(int degree) const {
        assert(degree >= 0);
        std::vector<C> c(static_cast<std::size_t>(degree) + 1, traits::zero());
        const int top = std::min(degree, trunc_degree());
        for (int k = 0; k <= top; ++k) c[static_cast<std::size_t>(k)] = coeffs_[static_cast<std::size_t>(k)];
        return TaylorPoly(std::move(c));
    }

private:
    std::vector<C> coeffs_;
};

using TaylorF = TaylorPoly<ComplexD>;
using TaylorQ = TaylorPoly<RatComplex>;

template <class C>
TaylorPoly<C> add(const TaylorPoly<C>& f, const TaylorPoly<C>& g) {
    const int n = std::max(f.trunc_degree(), g.trunc_degree());
    std::vector<C> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = f.coeff(k) + g.coeff(k);
    return TaylorPoly<C>(std::move(c));
}

template <class C>
TaylorPoly<C> subtract(const TaylorPoly<C>& f, const TaylorPoly<C>& g) {
    const int n = std::max(f.trunc_degree(), g.trunc_degree());
    std::vector<C> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = f.coeff(k) - g.coeff(k);
    return TaylorPoly<C>(std::move(c));
}

template <class C>
TaylorPoly<C> negate(const TaylorPoly<C>& f) {
    std::vector<C> c = f.coeffs();
    for (auto& x : c) x = -x;
    return TaylorPoly<C>(std::move(c));
}

template <class C>
TaylorPoly<C> scale(const TaylorPoly<C>& f, const C& s) {
    std::vector<C> c = f.coeffs();
    for (auto& x : c) x = x * s;
    return TaylorPoly<C>(std::move(c));
}

template <class C>
TaylorPoly<C> operator+(const TaylorPoly<C>& f, const TaylorPoly<C>& g) { return add(f, g); }
template <class C>
TaylorPoly<C> operator-(const TaylorPoly<C>& f, const TaylorPoly<C>& g) { return subtract(f, g); }

/// Cauchy product. keep = kKeepFull retains the full degree N_f + N_g, so
/// polynomial identities stay exact; otherwise the product is truncated at
/// `keep`.
template <class C>
TaylorPoly<C> multiply(const TaylorPoly<C>& f, const TaylorPoly<C>& g, int keep = kKeepFull) {
    const int full = f.trunc_degree() + g.trunc_degree();
    const int n = (keep == kKeepFull) ? full : std::min(keep, full);
    std::vector<C> c(static_cast<std::size_t>(std::max(n, 0)) + 1, scalar_traits<C>::zero());
    for (int i = 0; i <= f.trunc_degree(); ++i) {
        if (scalar_traits<C>::is_zero(f.coeff(i))) continue;
        const int jmax = std::min(g.trunc_degree(), n - i);
        for (int j = 0; j <= jmax; ++j) {
            c[static_cast<std::size_t>(i + j)] += f.coeff(i) * g.coeff(j);
        }
    }
    return TaylorPoly<C>(std::move(c));
}

template <class C>
TaylorPoly<C> operator*(const TaylorPoly<C>& f, const TaylorPoly<C>& g) { return multiply(f, g); }

/// order-th derivative: b_k = (k+order)!/k! * a_{k+order}. The falling
/// factorial is accumulated in the coefficient type, so it is exact in
/// rational mode for any degree.
template <class C>
TaylorPoly<C> differentiate(const TaylorPoly<C>& f, int order = 1) {
    assert(order >= 1);
    const int n = f.trunc_degree() - order;
    if (n < 0) return TaylorPoly<C>::zero();
    std::vector<C> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        C w = scalar_traits<C>::one();
        for (int j = 1; j <= order; ++j) w = w * scalar_traits<C>::from_int(k + j);
        c[static_cast<std::size_t>(k)] = w * f.coeff(k + order);
    }
    return TaylorPoly<C>(std::move(c));
}

/// Primitive vanishing at 0: b_{k+1} = a_k/(k+1).
template <class C>
TaylorPoly<C> integrate(const TaylorPoly<C>& f) {
    const int n = f.trunc_degree() + 1;
    std::vector<C> c(static_cast<std::size_t>(n) + 1, scalar_traits<C>::zero());
    for (int k = 0; k < n; ++k)
        c[static_cast<std::size_t>(k + 1)] = f.coeff(k) * scalar_traits<C>::ratio(1, k + 1);
    return TaylorPoly<C>(std::move(c));
}

/// Horner evaluation at a point of the same scalar type (exact at exact points).
template <class C>
C evaluate(const TaylorPoly<C>& f, const C& z) {
    C acc = scalar_traits<C>::zero();
    for (int k = f.trunc_degree(); k >= 0; --k) acc = acc * z + f.coeff(k);
    return acc;
}

inline ComplexD evaluate(const TaylorQ& f, const ComplexD& z) {
    ComplexD acc{0.0, 0.0};
    for (int k = f.trunc_degree(); k >= 0; --k) acc = acc * z + to_complex(f.coeff(k));
    return acc;
}

template <class C>
TaylorF to_float(const TaylorPoly<C>& f) {
    std::vector<ComplexD> c(f.coeffs().size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = to_complex(f.coeffs()[k]);
    return TaylorF(std::move(c));
}

/// Exact dyadic lift; every finite double coefficient becomes the rational it is.
inline TaylorQ to_rational(const TaylorF& f) {
    std::vector<RatComplex> c(f.coeffs().size());
    for (std::size_t k = 0; k < c.size(); ++k)
        c[k] = RatComplex::from_doubles(f.coeffs()[k].real(), f.coeffs()[k].imag());
    return TaylorQ(std::move(c));
}

/// sum |a_k|^2 in the scalar's real type (exact in rational mode).
template <class C>
typename scalar_traits<C>::real_type hardy_norm_sq(const TaylorPoly<C>& f) {
    typename scalar_traits<C>::real_type s{};
    for (const auto& a : f.coeffs()) s += scalar_traits<C>::abs2(a);
    return s;
}

/// H^2 norm sqrt(sum |a_k|^2); the square is accumulated exactly in rational
/// mode and converted once.
template <class C>
double hardy_norm(const TaylorPoly<C>& f) {
    return std::sqrt(to_double(hardy_norm_sq(f)));
}

/// H^2 inner product sum a_k conj(b_k).
template <class C>
C hardy_inner(const TaylorPoly<C>& f, const TaylorPoly<C>& g) {
    C s = scalar_traits<C>::zero();
    const int n = std::min(f.trunc_degree(), g.trunc_degree());
    for (int k = 0; k <= n; ++k) s += f.coeff(k) * scalar_traits<C>::conj(g.coeff(k));
    return s;
}

/// Max |f(e^{i theta_j})| over grid_size equispaced boundary points starting
/// at theta = 0. A lower bound for ||f||_inf, so one-sided inequality tests
/// against it remain sound. Doubling the grid keeps the old nodes, hence the
/// estimate is monotone along doubling refinements.
template <class C>
double sup_norm_estimate(const TaylorPoly<C>& f, int grid_size) {
    assert(grid_size >= 16);
    double best = 0.0;
    const double step = 2.0 * std::numbers::pi / grid_size;
    for (int j = 0; j < grid_size; ++j) {
        const double th = step * j;
        const ComplexD z{std::cos(th), std::sin(th)};
        best = std::max(best, std::abs(evaluate(f, z)));
    }
    return best;
}

/// Max coefficientwise deviation |a_k - b_k| as a double (indices past either
/// truncation read as zero).
template <class C>
double max_abs_residual(const TaylorPoly<C>& f, const TaylorPoly<C>& g) {
    double worst = 0.0;
    const int n = std::max(f.trunc_degree(), g.trunc_degree());
    for (int k = 0; k <= n; ++k) {
        const ComplexD d = to_complex(f.coeff(k)) - to_complex(g.coeff(k));
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

/// Coefficientwise equality with zero-padding. Bitwise in float mode, exact
/// in rational mode.
template <class C>
bool exactly_equal(const TaylorPoly<C>& f, const TaylorPoly<C>& g) {
    const int n = std::max(f.trunc_degree(), g.trunc_degree());
    for (int k = 0; k <= n; ++k)
        if (!(f.coeff(k) == g.coeff(k))) return false;
    return true;
}

template <class C>
bool all_finite(const TaylorPoly<C>& f) {
    if constexpr (scalar_traits<C>::exact) {
        return true;
    } else {
        for (const auto& a : f.coeffs())
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
        return true;
    }
}

} // namespace hardylat
