#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hardylat {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Exact lift of a finite double into a rational (every finite double is dyadic).
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp); // x = m * 2^exp, 0.5 <= |m| < 1
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(mant);
    if (exp >= 0) {
        r *= Rational(BigInt(1) << exp);
    } else {
        r /= Rational(BigInt(1) << (-exp));
    }
    return r;
}

/// Complex number with exact rational parts. Field operations are exact.
struct RatComplex {
    Rational re;
    Rational im;

    RatComplex() : re(0), im(0) {}
    RatComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit RatComplex(long long r) : re(r), im(0) {}

    static RatComplex from_doubles(double r, double i) {
        return {rational_from_double(r), rational_from_double(i)};
    }

    bool is_zero() const { return re == 0 && im == 0; }

    friend RatComplex operator+(const RatComplex& a, const RatComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RatComplex operator-(const RatComplex& a, const RatComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RatComplex operator-(const RatComplex& a) { return {-a.re, -a.im}; }
    friend RatComplex operator*(const RatComplex& a, const RatComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend RatComplex operator/(const RatComplex& a, const RatComplex& b) {
        Rational d = b.re * b.re + b.im * b.im;
        if (d == 0) throw std::domain_error("RatComplex: division by zero");
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    RatComplex& operator+=(const RatComplex& b) { re += b.re; im += b.im; return *this; }
    RatComplex& operator-=(const RatComplex& b) { re -= b.re; im -= b.im; return *this; }
    RatComplex& operator*=(const RatComplex& b) { *this = *this * b; return *this; }
    RatComplex& operator/=(const RatComplex& b) { *this = *this / b; return *this; }

    friend bool operator==(const RatComplex& a, const RatComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const RatComplex& a, const RatComplex& b) { return !(a == b); }
};

inline std::complex<double> to_complex(const RatComplex& c) {
    return {to_double(c.re), to_double(c.im)};
}
inline std::complex<double> to_complex(const std::complex<double>& c) { return c; }

/// Uniform interface over the two coefficient modes. `exact` selects the
/// exact identity arithmetic (no rounding anywhere).
template <class C>
struct scalar_traits;

template <>
struct scalar_traits<std::complex<double>> {
    static constexpr bool exact = false;
    using real_type = double;

    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> from_int(long long v) { return {static_cast<double>(v), 0.0}; }
    static std::complex<double> ratio(long long p, long long q) {
        return {static_cast<double>(p) / static_cast<double>(q), 0.0};
    }
    static double abs2(const std::complex<double>& c) { return std::norm(c); }
    static std::complex<double> conj(const std::complex<double>& c) { return std::conj(c); }
    static bool is_zero(const std::complex<double>& c) { return c.real() == 0.0 && c.imag() == 0.0; }
    static const char* mode_name() { return "float"; }
};

template <>
struct scalar_traits<RatComplex> {
    static constexpr bool exact = true;
    using real_type = Rational;

    static RatComplex zero() { return RatComplex(0); }
    static RatComplex one() { return RatComplex(1); }
    static RatComplex from_int(long long v) { return RatComplex(v); }
    static RatComplex ratio(long long p, long long q) { return {Rational(p) / Rational(q), Rational(0)}; }
    static Rational abs2(const RatComplex& c) { return c.re * c.re + c.im * c.im; }
    static RatComplex conj(const RatComplex& c) { return {c.re, -c.im}; }
    static bool is_zero(const RatComplex& c) { return c.is_zero(); }
    static const char* mode_name() { return "rational"; }
};

using ComplexD = std::complex<double>;

} // namespace hardylat
