#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hardylat/taylor.hpp"

namespace hardylat::spaces {

/// ||f||_{S_n^2}^2 = ||f^{(n)}||_{H^2}^2 + ||f||_{H^2}^2, split into its two parts.
struct SnNormReport {
    int n = 1;
    double hardy_part = 0.0;
    double derivative_part = 0.0;
    double total = 0.0;
};

template <class C>
SnNormReport sn_norm(const TaylorPoly<C>& f, int n) {
    if (n < 1) throw std::invalid_argument("sn_norm: n must be >= 1");
    SnNormReport r;
    r.n = n;
    // Squares are accumulated in the scalar's exact real type before the
    // single conversion, so rational inputs lose nothing until the sqrt.
    const auto h2 = hardy_norm_sq(f);
    const auto d2 = hardy_norm_sq(differentiate(f, n));
    r.hardy_part = std::sqrt(to_double(h2));
    r.derivative_part = std::sqrt(to_double(d2));
    r.total = std::sqrt(to_double(h2) + to_double(d2));
    return r;
}

struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_used = 0.0;
    bool ok = false;
};

inline constexpr double kInequalitySlack = 1e-12;

/// ||f||_inf <= 2 ||f||_{S_1^2}, tested against the boundary-grid estimate
/// (which under-estimates the sup, keeping the test one-sided and sound).
template <class C>
InequalityReport check_pointwise_bound(const TaylorPoly<C>& f, int grid) {
    InequalityReport r;
    r.lhs = sup_norm_estimate(f, grid);
    r.constant_used = 2.0;
    r.rhs = 2.0 * sn_norm(f, 1).total;
    r.ok = r.lhs <= r.rhs + kInequalitySlack;
    return r;
}

inline double factorial_as_double(int k) {
    double v = 1.0;
    for (int j = 2; j <= k; ++j) v *= j;
    return v;
}

/// C_k = sqrt((k!)^2 + 1), the nesting constant read off the norm expansion.
inline double nesting_constant(int k) {
    const double kf = factorial_as_double(k);
    return std::sqrt(kf * kf + 1.0);
}

/// ||f||_{S_k^2} <= C_k ||f||_{S_{k+1}^2}.
template <class C>
InequalityReport check_nesting(const TaylorPoly<C>& f, int k) {
    if (k < 1) throw std::invalid_argument("check_nesting: k must be >= 1");
    InequalityReport r;
    r.constant_used = nesting_constant(k);
    r.lhs = sn_norm(f, k).total;
    r.rhs = r.constant_used * sn_norm(f, k + 1).total;
    r.ok = r.lhs <= r.rhs + kInequalitySlack;
    return r;
}

/// ||f'||_{S_k^2} <= sqrt(D_k + 1) ||f||_{S_{k+1}^2} with D_k = C_k^2.
template <class C>
InequalityReport check_derivative_embedding(const TaylorPoly<C>& f, int k) {
    if (k < 1) throw std::invalid_argument("check_derivative_embedding: k must be >= 1");
    InequalityReport r;
    const double ck = nesting_constant(k);
    const double dk = ck * ck;
    r.constant_used = std::sqrt(dk + 1.0);
    r.lhs = sn_norm(differentiate(f, 1), k).total;
    r.rhs = r.constant_used * sn_norm(f, k + 1).total;
    r.ok = r.lhs <= r.rhs + kInequalitySlack;
    return r;
}

/// One level of the induction constant chain for submultiplicativity:
/// level 1 is the explicit 16 = 4^2 bound; each step combines the previous
/// constant with C_k and D_k.
struct SubmultChain {
    std::vector<double> c_k; // nesting constants used, levels 1..n-1
    std::vector<double> d_k; // D_k = C_k^2
    std::vector<double> m_k; // m_k[j] = constant for S_{j+1}^2, m_k[0] = 4
};

inline SubmultChain submult_chain(int n) {
    SubmultChain chain;
    chain.m_k.push_back(4.0);
    for (int k = 1; k < n; ++k) {
        const double ck = nesting_constant(k);
        const double dk = ck * ck;
        chain.c_k.push_back(ck);
        chain.d_k.push_back(dk);
        // ||fg||_{S_{k+1}}^2 <= M_k^2 (4 C_k^2 (D_k+1) + C_k^4) ||f||^2 ||g||^2
        const double prev = chain.m_k.back();
        chain.m_k.push_back(prev * std::sqrt(4.0 * ck * ck * (dk + 1.0) + ck * ck * ck * ck));
    }
    return chain;
}

struct SubmultReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_used = 0.0;
    bool ok = false;
    SubmultChain chain;
};

/// ||fg||_{S_n^2} <= M_n ||f||_{S_n^2} ||g||_{S_n^2}; products at full degree.
template <class C>
SubmultReport check_submultiplicative(const TaylorPoly<C>& f, const TaylorPoly<C>& g, int n) {
    if (n < 1) throw std::invalid_argument("check_submultiplicative: n must be >= 1");
    SubmultReport r;
    r.chain = submult_chain(n);
    r.constant_used = r.chain.m_k.back();
    r.lhs = sn_norm(multiply(f, g, kKeepFull), n).total;
    r.rhs = r.constant_used * sn_norm(f, n).total * sn_norm(g, n).total;
    r.ok = r.lhs <= r.rhs + kInequalitySlack;
    return r;
}

/// f in 0S_n^2 iff the first n coefficients vanish (f^{(i)}(0) = i! a_i).
template <class C>
bool in_zero_subalgebra(const TaylorPoly<C>& f, int n, double tol) {
    if (n < 1) throw std::invalid_argument("in_zero_subalgebra: n must be >= 1");
    for (int i = 0; i < n; ++i) {
        if constexpr (scalar_traits<C>::exact) {
            if (tol == 0.0) {
                if (!scalar_traits<C>::is_zero(f.coeff(i))) return false;
                continue;
            }
        }
        if (std::abs(to_complex(f.coeff(i))) > tol) return false;
    }
    return true;
}

/// Scale-relative default: exact zero in rational mode, 1e-10 * ||f||_{S_n^2}
/// in float mode.
template <class C>
double default_zero_subalgebra_tol(const TaylorPoly<C>& f, int n) {
    if constexpr (scalar_traits<C>::exact) {
        (void)n;
        return 0.0;
    } else {
        return 1e-10 * sn_norm(f, n).total;
    }
}

/// S_n^2 = [1] + [z] + ... + [z^{n-1}] + 0S_n^2: the degree-< n polynomial
/// part and the tail with its first n coefficients zero.
template <class C>
struct Decomposition {
    int n = 1;
    TaylorPoly<C> poly_part;
    TaylorPoly<C> tail;
};

template <class C>
Decomposition<C> decompose(const TaylorPoly<C>& f, int n) {
    if (n < 1) throw std::invalid_argument("decompose: n must be >= 1");
    Decomposition<C> d;
    d.n = n;
    std::vector<C> head(static_cast<std::size_t>(std::min(n - 1, f.trunc_degree())) + 1,
                        scalar_traits<C>::zero());
    for (int k = 0; k < n && k <= f.trunc_degree(); ++k) head[static_cast<std::size_t>(k)] = f.coeff(k);
    d.poly_part = TaylorPoly<C>(std::move(head));
    std::vector<C> tail = f.coeffs();
    for (int k = 0; k < n && k <= f.trunc_degree(); ++k) tail[static_cast<std::size_t>(k)] = scalar_traits<C>::zero();
    d.tail = TaylorPoly<C>(std::move(tail));
    return d;
}

} // namespace hardylat::spaces
