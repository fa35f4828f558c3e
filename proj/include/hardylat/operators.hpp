#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "hardylat/taylor.hpp"

namespace hardylat::ops {

enum class OpKind { shift, volterra, riemann_liouville, nth_derivative, t_n };

/// Tag for the five coefficient-level operators. `n` is meaningful for the
/// parametrized kinds and must be >= 1 there.
struct OperatorTag {
    OpKind kind = OpKind::shift;
    int n = 1;

    static OperatorTag shift() { return {OpKind::shift, 1}; }
    static OperatorTag volterra() { return {OpKind::volterra, 1}; }
    static OperatorTag riemann_liouville(int n) { return {OpKind::riemann_liouville, n}; }
    static OperatorTag nth_derivative(int n) { return {OpKind::nth_derivative, n}; }
    static OperatorTag t_n(int n) { return {OpKind::t_n, n}; }
};

inline std::string to_string(const OperatorTag& tag) {
    switch (tag.kind) {
        case OpKind::shift: return "shift";
        case OpKind::volterra: return "volterra";
        case OpKind::riemann_liouville: return "riemann_liouville(" + std::to_string(tag.n) + ")";
        case OpKind::nth_derivative: return "nth_derivative(" + std::to_string(tag.n) + ")";
        case OpKind::t_n: return "t_n(" + std::to_string(tag.n) + ")";
    }
    return "?";
}

/// M_z on coefficients: forward shift, b_{k+1} = a_k.
template <class C>
TaylorPoly<C> apply_shift(const TaylorPoly<C>& f) {
    std::vector<C> c(f.coeffs().size() + 1, scalar_traits<C>::zero());
    for (int k = 0; k <= f.trunc_degree(); ++k) c[static_cast<std::size_t>(k) + 1] = f.coeff(k);
    return TaylorPoly<C>(std::move(c));
}

template <class C>
TaylorPoly<C> apply_volterra(const TaylorPoly<C>& f) {
    return integrate(f);
}

/// T_n f = z f + n * int_0^z f, computed exactly in that two-term form.
template <class C>
TaylorPoly<C> apply_tn(const TaylorPoly<C>& f, int n) {
    if (n < 1) throw std::invalid_argument("apply_tn: n must be >= 1");
    return add(apply_shift(f), scale(integrate(f), scalar_traits<C>::from_int(n)));
}

/// The equivalent weighted-shift rule z^k -> ((k+1+n)/(k+1)) z^{k+1}. Kept as
/// a second route so the two can be compared.
template <class C>
TaylorPoly<C> apply_tn_weighted(const TaylorPoly<C>& f, int n) {
    if (n < 1) throw std::invalid_argument("apply_tn_weighted: n must be >= 1");
    std::vector<C> c(f.coeffs().size() + 1, scalar_traits<C>::zero());
    for (int k = 0; k <= f.trunc_degree(); ++k)
        c[static_cast<std::size_t>(k) + 1] = f.coeff(k) * scalar_traits<C>::ratio(k + 1 + n, k + 1);
    return TaylorPoly<C>(std::move(c));
}

/// Riemann-Liouville integral of integer order n by the monomial rule
/// z^k -> (k!/(k+n)!) z^{k+n}. The ratio is built as a product of n single
/// factors 1/(k+j), which avoids factorial overflow in float mode.
template <class C>
TaylorPoly<C> apply_riemann_liouville(const TaylorPoly<C>& f, int n) {
    if (n < 1) throw std::invalid_argument("apply_riemann_liouville: n must be >= 1");
    std::vector<C> c(f.coeffs().size() + static_cast<std::size_t>(n), scalar_traits<C>::zero());
    for (int k = 0; k <= f.trunc_degree(); ++k) {
        C w = f.coeff(k);
        for (int j = 1; j <= n; ++j) w = w * scalar_traits<C>::ratio(1, k + j);
        c[static_cast<std::size_t>(k + n)] = std::move(w);
    }
    return TaylorPoly<C>(std::move(c));
}

template <class C>
TaylorPoly<C> apply_nth_derivative(const TaylorPoly<C>& f, int n) {
    if (n < 1) throw std::invalid_argument("apply_nth_derivative: n must be >= 1");
    return differentiate(f, n);
}

template <class C>
TaylorPoly<C> apply_operator(const OperatorTag& tag, const TaylorPoly<C>& f) {
    switch (tag.kind) {
        case OpKind::shift: return apply_shift(f);
        case OpKind::volterra: return apply_volterra(f);
        case OpKind::riemann_liouville: return apply_riemann_liouville(f, tag.n);
        case OpKind::nth_derivative: return apply_nth_derivative(f, tag.n);
        case OpKind::t_n: return apply_tn(f, tag.n);
    }
    throw std::logic_error("apply_operator: bad tag");
}

/// Monomial-basis matrix of an operator, truncated to dim rows/columns.
/// Entries outside the declared band are structurally zero.
template <class C>
struct BandMatrix {
    int dim = 0;
    int band = 0;
    std::map<std::pair<int, int>, C> entries; // (row, col) -> value

    const C& at(int row, int col) const {
        static const C kZero = scalar_traits<C>::zero();
        auto it = entries.find({row, col});
        return it == entries.end() ? kZero : it->second;
    }

    /// Matrix-vector product against the first dim coefficients of f.
    TaylorPoly<C> apply(const TaylorPoly<C>& f) const {
        std::vector<C> out(static_cast<std::size_t>(dim), scalar_traits<C>::zero());
        for (const auto& [rc, v] : entries) {
            const auto& [row, col] = rc;
            if (col <= f.trunc_degree()) out[static_cast<std::size_t>(row)] += v * f.coeff(col);
        }
        return TaylorPoly<C>(std::move(out));
    }
};

/// Column k holds the coefficient image of z^k; a dim too small to contain
/// any entry yields the all-zero matrix rather than an error.
template <class C>
BandMatrix<C> matrix_of(const OperatorTag& tag, int dim) {
    if (dim < 1) throw std::invalid_argument("matrix_of: dim must be >= 1");
    if (tag.n < 1) throw std::invalid_argument("matrix_of: n must be >= 1");
    BandMatrix<C> m;
    m.dim = dim;
    switch (tag.kind) {
        case OpKind::shift:
            m.band = 1;
            for (int k = 0; k + 1 < dim; ++k) m.entries[{k + 1, k}] = scalar_traits<C>::one();
            break;
        case OpKind::volterra:
            m.band = 1;
            for (int k = 0; k + 1 < dim; ++k) m.entries[{k + 1, k}] = scalar_traits<C>::ratio(1, k + 1);
            break;
        case OpKind::t_n:
            m.band = 1;
            for (int k = 0; k + 1 < dim; ++k)
                m.entries[{k + 1, k}] = scalar_traits<C>::ratio(k + 1 + tag.n, k + 1);
            break;
        case OpKind::riemann_liouville:
            m.band = tag.n;
            for (int k = 0; k + tag.n < dim; ++k) {
                C w = scalar_traits<C>::one();
                for (int j = 1; j <= tag.n; ++j) w = w * scalar_traits<C>::ratio(1, k + j);
                m.entries[{k + tag.n, k}] = std::move(w);
            }
            break;
        case OpKind::nth_derivative:
            m.band = tag.n;
            for (int k = tag.n; k < dim; ++k) {
                C w = scalar_traits<C>::one();
                for (int j = 0; j < tag.n; ++j) w = w * scalar_traits<C>::from_int(k - j);
                m.entries[{k - tag.n, k}] = std::move(w);
            }
            break;
    }
    return m;
}

/// Both sides of V_n T_n = M_z V_n on a concrete input, with the max
/// coefficient deviation. In rational mode the residual is exactly zero iff
/// the sides agree coefficient-for-coefficient.
template <class C>
struct IntertwiningReport {
    TaylorPoly<C> lhs; // V_n(T_n f)
    TaylorPoly<C> rhs; // M_z(V_n f)
    double max_abs_residual = 0.0;
    bool exact_equal = false;
};

template <class C>
IntertwiningReport<C> verify_intertwining(int n, const TaylorPoly<C>& f) {
    if (n < 1) throw std::invalid_argument("verify_intertwining: n must be >= 1");
    IntertwiningReport<C> r;
    r.lhs = apply_riemann_liouville(apply_tn(f, n), n);
    r.rhs = apply_shift(apply_riemann_liouville(f, n));
    r.max_abs_residual = max_abs_residual(r.lhs, r.rhs);
    r.exact_equal = exactly_equal(r.lhs, r.rhs);
    return r;
}

/// D^n V_n = Id on all of H^2; V_n D^n = Id on series with the first n
/// coefficients zero. The second identity is exercised on g = z^n * f.
template <class C>
struct InverseReport {
    double dn_vn_residual = 0.0; // D^n(V_n f) vs f
    double vn_dn_residual = 0.0; // V_n(D^n g) vs g, g = z^n f
    bool dn_vn_exact = false;
    bool vn_dn_exact = false;
};

template <class C>
InverseReport<C> verify_inverse(int n, const TaylorPoly<C>& f) {
    if (n < 1) throw std::invalid_argument("verify_inverse: n must be >= 1");
    InverseReport<C> r;
    const TaylorPoly<C> round = apply_nth_derivative(apply_riemann_liouville(f, n), n);
    r.dn_vn_residual = max_abs_residual(round, f);
    r.dn_vn_exact = exactly_equal(round, f);

    TaylorPoly<C> g = f;
    for (int j = 0; j < n; ++j) g = apply_shift(g);
    const TaylorPoly<C> back = apply_riemann_liouville(apply_nth_derivative(g, n), n);
    r.vn_dn_residual = max_abs_residual(back, g);
    r.vn_dn_exact = exactly_equal(back, g);
    return r;
}

} // namespace hardylat::ops
