#pragma once

#include <cstdint>

#include "hardylat/taylor.hpp"

namespace hardylat {

/// SplitMix64: tiny, portable, and good enough for drawing test inputs.
/// Each suite case derives its own stream from (seed, case index), so
/// parallel execution order never changes the draws.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Signed dyadic p/256 with p uniform in [-256, 256]; exactly
    /// representable in both scalar modes.
    double dyadic_unit() {
        const auto p = static_cast<std::int64_t>(below(513)) - 256;
        return static_cast<double>(p) / 256.0;
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline SplitMix64 case_stream(std::uint64_t seed, std::uint64_t case_index) {
    SplitMix64 mixer(seed ^ (0x632be59bd9b4e019ULL * (case_index + 1)));
    mixer.next();
    return mixer;
}

/// Random polynomial of the suite model: degree uniform in [0, max_degree],
/// coefficients dyadic in the complex unit square.
template <class C>
TaylorPoly<C> random_poly(SplitMix64& rng, int max_degree) {
    const int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree) + 1));
    std::vector<C> coeffs(static_cast<std::size_t>(deg) + 1);
    for (auto& c : coeffs) {
        const double re = rng.dyadic_unit();
        const double im = rng.dyadic_unit();
        if constexpr (scalar_traits<C>::exact) {
            c = RatComplex::from_doubles(re, im);
        } else {
            c = ComplexD{re, im};
        }
    }
    return TaylorPoly<C>(std::move(coeffs));
}

} // namespace hardylat
