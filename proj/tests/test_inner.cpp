#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hardylat/inner.hpp"
#include "test_util.hpp"

using namespace hardylat;
using namespace hardylat::inner;
using namespace testutil;

TEST_CASE("blaschke_series: origin convention and the a=1/2 expansion") {
    CHECK(exactly_equal(blaschke_series({{ComplexD{0, 0}, 1}}, 4), TaylorF::monomial(1).truncated(4)));

    // (1/2 - z) sum (z/2)^k = 1/2 - (3/4) z - (3/8) z^2 - ...
    const auto b = blaschke_series({{ComplexD{0.5, 0}, 1}}, 2);
    CHECK(std::abs(evaluate(b, ComplexD{0, 0}) - ComplexD{0.5, 0}) <= 1e-15);
    CHECK(std::abs(to_complex(b.coeff(1)) - ComplexD{-0.75, 0}) <= 1e-15);
    CHECK(std::abs(to_complex(b.coeff(2)) - ComplexD{-0.375, 0}) <= 1e-15);

    // rational mode: the rotation-free factor has the same coefficients for
    // real positive zeros
    const auto bq = blaschke_series<RatComplex>({{ComplexD{0.5, 0}, 1}}, 2);
    CHECK(bq.coeff(0) == RatComplex{Rational(1) / 2, Rational(0)});
    CHECK(bq.coeff(1) == RatComplex{Rational(-3) / 4, Rational(0)});
    CHECK(bq.coeff(2) == RatComplex{Rational(-3) / 8, Rational(0)});
}

TEST_CASE("blaschke_series: all zeros at the origin give exactly z^m") {
    const auto b = blaschke_series({{ComplexD{0, 0}, 2}, {ComplexD{0, 0}, 1}}, 8);
    CHECK(exactly_equal(b, TaylorF::monomial(3).truncated(8)));
}

TEST_CASE("blaschke_series vanishes at its own zeros") {
    const std::vector<BlaschkeZero> zeros = {
        {ComplexD{0.5, 0.0}, 1}, {ComplexD{-0.3, 0.55}, 2}, {ComplexD{0.0, -0.7}, 1}};
    const auto b = blaschke_series(zeros, 96);
    for (const auto& z : zeros) CHECK(std::abs(evaluate(b, z.a)) <= 1e-10);

    // |a| = 0.9 needs a deeper truncation for the same residual
    const auto edge = blaschke_series({{ComplexD{0.9, 0}, 1}}, 256);
    CHECK(std::abs(evaluate(edge, ComplexD{0.9, 0})) <= 1e-10);
}

TEST_CASE("blaschke_series at 0 has modulus prod |a|^mult") {
    const std::vector<BlaschkeZero> zeros = {
        {ComplexD{0.5, 0.2}, 2}, {ComplexD{-0.1, -0.85}, 1}, {ComplexD{0.9, 0.0}, 1}};
    double expect = 1.0;
    for (const auto& z : zeros)
        for (int m = 0; m < z.multiplicity; ++m) expect *= std::abs(z.a);
    const auto b = blaschke_series(zeros, 64);
    CHECK(std::abs(std::abs(evaluate(b, ComplexD{0, 0})) - expect) <= 1e-10);
}

TEST_CASE("singular_series: empty list, value at 0, radial decay toward the atom") {
    CHECK(exactly_equal(singular_series({}, 8), TaylorF::constant({1.0, 0.0})));

    // one atom at zeta = 1, mass 1: S(0) = exp(-1)
    const auto s1 = singular_series({{0.0, 1.0}}, 96);
    CHECK(std::abs(evaluate(s1, ComplexD{0, 0}) - ComplexD{std::exp(-1.0), 0}) <= 1e-12);

    // r = 0.99 sits deep in the boundary layer; mass 1/4 at N = 512 keeps the
    // truncated values monotone through it
    const auto s = singular_series({{0.0, 0.25}}, 512);
    double prev = 1.0;
    for (double r : {0.5, 0.9, 0.99}) {
        const double v = std::abs(evaluate(s, ComplexD{r, 0}));
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("singular_series: exp additivity over concatenated atom lists") {
    const std::vector<SingularAtom> a = {{0.0, 0.35}};
    const std::vector<SingularAtom> b = {{2.1, 0.6}, {4.0, 0.25}};
    std::vector<SingularAtom> both = a;
    both.insert(both.end(), b.begin(), b.end());

    const int N = 96;
    const auto prod = multiply(singular_series(a, N), singular_series(b, N), N);
    CHECK(max_abs_residual(singular_series(both, N), prod) <= 1e-10);
}

TEST_CASE("inner_modulus_check") {
    const auto b = blaschke_series({{ComplexD{0.5, 0}, 1}}, 64);
    CHECK(inner_modulus_check(b, 512, {}, 1e-6).ok);

    const auto bad = scale(TaylorF::monomial(1), ComplexD{2, 0});
    CHECK_FALSE(inner_modulus_check(bad, 512, {}, 1e-6).ok);

    // atomic part: |S| = 1 on the circle away from the atom, but the partial
    // sums converge slowly near it; a single 0.1-rad exclusion leaves a
    // ~1e-1 boundary layer at N = 96
    const auto s = singular_series({{0.0, 0.25}}, 96);
    const auto near = inner_modulus_check(s, 512, {0.0}, 0.15);
    CHECK(near.ok);
    CHECK(near.boundary_points_checked > 0);

    // widening the excluded arc and doubling N tightens the verdict
    const auto s2 = singular_series({{0.0, 0.25}}, 192);
    std::vector<double> blanket;
    for (int j = -5; j <= 5; ++j) blanket.push_back(0.1 * j);
    const auto wide = inner_modulus_check(s2, 512, blanket, 2e-3);
    CHECK(wide.ok);
}

TEST_CASE("series_divide inverts multiplication") {
    SplitMix64 rng(51);
    for (int t = 0; t < 20; ++t) {
        auto s = random_poly<ComplexD>(rng, 12);
        // force s(0) away from zero
        std::vector<ComplexD> c = s.coeffs();
        c[0] = ComplexD{1.0, 0.25};
        s = TaylorF(std::move(c));
        const auto f = random_poly<ComplexD>(rng, 12);
        const auto h = series_divide(multiply(f, s), s, 12);
        CHECK(max_abs_residual(h, f.truncated(12)) <= 1e-10);
    }
}

TEST_CASE("divides_inner_part: constructed multiples pass, non-multiples fail") {
    const InnerSpec g{{{ComplexD{0.5, 0}, 1}}, {}};
    const auto b = blaschke_series(g.blaschke, 96);

    CHECK(divides_inner_part(g, multiply(b, fpoly({1, 1}), 96), 96, 1e-9).ok);
    CHECK_FALSE(divides_inner_part(g, fpoly({1, 1}), 96, 1e-9).ok);

    const InnerSpec unit{};
    CHECK(divides_inner_part(unit, fpoly({1, 1}), 64, 1e-9).ok);

    CHECK_THROWS_AS(divides_inner_part(g, TaylorF::zero(), 64, 1e-9), std::invalid_argument);
}

TEST_CASE("divides_inner_part: closure under polynomial multiples of G") {
    SplitMix64 rng(52);
    const std::vector<InnerSpec> specs = {
        {{{ComplexD{0.4, 0.3}, 1}}, {}},
        {{{ComplexD{-0.5, 0}, 2}}, {}},
        {{{ComplexD{0.25, -0.6}, 1}}, {{1.2, 0.5}}},
    };
    for (const auto& g : specs) {
        const int N = 2 * g.default_trunc_degree();
        const auto gs = inner_series<ComplexD>(g, N);
        for (int t = 0; t < 8; ++t) {
            auto p = random_poly<ComplexD>(rng, 10);
            if (p.is_identically_zero()) p = fpoly({1});
            const auto rep = divides_inner_part(g, multiply(gs, p, N), N, 1e-7);
            CHECK(rep.ok);
            CHECK(rep.singular_heuristic == !g.atoms.empty());
        }
    }
}

TEST_CASE("singular divisibility rejects a non-multiple") {
    const InnerSpec g{{}, {{0.0, 0.9}}};
    // 1/(S has essential decay toward the atom); a plain polynomial divided
    // by S blows up, which the tail-stability proxy notices
    const auto rep = divides_inner_part(g, fpoly({1}), 192, 1e-6);
    CHECK_FALSE(rep.ok);
    CHECK(rep.singular_heuristic);
}

TEST_CASE("construction preconditions") {
    CHECK_THROWS_AS(blaschke_series({{ComplexD{0.5, 0}, 3}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(blaschke_series({{ComplexD{1.0, 0}, 1}}, 8), std::invalid_argument);
    CHECK_THROWS_AS(blaschke_series({{ComplexD{0.5, 0}, 0}}, 8), std::invalid_argument);
    CHECK_THROWS_AS(singular_series({{0.0, -1.0}}, 8), std::invalid_argument);
    CHECK_THROWS_AS(singular_series({{0.0, 1.0}}, 0), std::invalid_argument);
    CHECK_THROWS_AS(series_divide(fpoly({1}), fpoly({0, 1}), 4), std::invalid_argument);
}

TEST_CASE("inner_series in rational mode rejects atoms") {
    InnerSpec g{{{ComplexD{0.5, 0}, 1}}, {{0.0, 1.0}}};
    CHECK_THROWS_AS(inner_series<RatComplex>(g, 64), std::invalid_argument);
    g.atoms.clear();
    CHECK(inner_series<RatComplex>(g, 64).trunc_degree() == 64);
}
