#pragma once

// Shared constructions for the lattice tests and the acceptance suite.

#include <cmath>
#include <numbers>
#include <vector>

#include "hardylat/lattice.hpp"
#include "hardylat/rng.hpp"

namespace fixtures {

using namespace hardylat;

/// 512 angles densely packing the arc [0, pi/2), built from three layers:
/// odd multiples of pi/2^10 (which land exactly on the 1024-point midpoint
/// quadrature grid), odd multiples of pi/2^11 (the 2048-point grid), and an
/// incommensurate filler. Each doubling of the quadrature grid resolves one
/// more collision layer, so the log-distance integral keeps deepening --
/// the numeric signature of the positive-measure degeneracy the divergence
/// detector is meant to flag.
inline lattice::IdealSpec dense_arc_stress_spec() {
    const double pi = std::numbers::pi;
    std::vector<double> k0;
    for (int i = 0; i < 64; ++i) k0.push_back((8 * i + 1) * pi / 1024.0);
    for (int i = 0; i < 320; ++i) {
        const int j = static_cast<int>(i * 512.0 / 320.0);
        k0.push_back((2 * j + 1) * pi / 2048.0);
    }
    for (int j = 0; j < 128; ++j) k0.push_back((j + 0.3) * (pi / 2.0) / 128.0);

    lattice::IdealSpec spec;
    spec.n = 1;
    spec.chain.n = 1;
    spec.chain.sets = {k0};
    return spec;
}

/// Random validated ideal spec for the lattice suites. Rational mode draws
/// boundary angles from the exactly representable catalog and keeps the
/// inner part atom-free; float mode may attach one atom (n <= 2 there, so
/// the derivative scales stay small enough for tight residual checks).
inline lattice::IdealSpec random_ideal_spec(SplitMix64& rng, bool rational) {
    lattice::IdealSpec spec;
    const bool with_atom = !rational && rng.below(2) == 0;
    spec.n = 1 + static_cast<int>(rng.below(with_atom ? 2 : 3));
    spec.tol = 1e-9;

    const auto& catalog = lattice::exact_unit_angles();
    const int k0_size = 1 + static_cast<int>(rng.below(4));
    std::vector<double> k0;
    while (static_cast<int>(k0.size()) < k0_size) {
        double theta;
        if (rational) {
            theta = catalog[rng.below(catalog.size())];
        } else {
            theta = lattice::canonical_angle(rng.uniform01() * 2.0 * std::numbers::pi);
        }
        if (!lattice::ZeroChain::contains(k0, theta)) k0.push_back(theta);
    }

    spec.chain.n = spec.n;
    spec.chain.sets.push_back(k0);
    for (int i = 1; i < spec.n; ++i) {
        // nested prefix of the previous level (possibly empty)
        const auto& prev = spec.chain.sets.back();
        const auto keep = rng.below(prev.size() + 1);
        spec.chain.sets.emplace_back(prev.begin(), prev.begin() + static_cast<long>(keep));
    }

    const int zeros = static_cast<int>(rng.below(3));
    for (int j = 0; j < zeros; ++j) {
        // dyadic zeros, |a| <= ~0.75
        ComplexD a{0.0, 0.0};
        do {
            a = ComplexD{static_cast<double>(static_cast<int>(rng.below(17)) - 8) / 16.0,
                         static_cast<double>(static_cast<int>(rng.below(17)) - 8) / 16.0};
        } while (std::abs(a) > 0.75);
        spec.inner_part.blaschke.push_back({a, 1 + static_cast<int>(rng.below(2))});
    }

    if (with_atom) {
        // the atom must sit inside K_{n-1}: promote one K_0 angle through
        // the whole chain
        const double theta = k0[rng.below(k0.size())];
        for (int i = 1; i < spec.n; ++i) {
            auto& level = spec.chain.sets[static_cast<std::size_t>(i)];
            if (!lattice::ZeroChain::contains(level, theta)) level.push_back(theta);
        }
        spec.inner_part.atoms.push_back({theta, 0.6 + 0.5 * rng.uniform01()});
    }
    return spec;
}

template <class C>
std::vector<TaylorPoly<C>> random_cofactors(SplitMix64& rng, int count, int max_degree) {
    std::vector<TaylorPoly<C>> out;
    while (static_cast<int>(out.size()) < count) {
        auto q = random_poly<C>(rng, max_degree);
        if (!q.is_identically_zero()) out.push_back(std::move(q));
    }
    return out;
}

} // namespace fixtures
