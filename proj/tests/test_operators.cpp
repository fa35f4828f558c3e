#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hardylat/operators.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hardylat;
using namespace hardylat::ops;
using namespace testutil;

TEST_CASE("apply_shift is the forward coefficient shift") {
    CHECK(exactly_equal(apply_shift(fpoly({1})), fpoly({0, 1})));
    CHECK(exactly_equal(apply_shift(TaylorF::monomial(3)), TaylorF::monomial(4)));
    CHECK(exactly_equal(apply_shift(fpoly({1, 2})), fpoly({0, 1, 2})));
}

TEST_CASE("apply_tn: two-term form on the spec'd inputs") {
    for (int n = 1; n <= 6; ++n) {
        const auto t = apply_tn(qpoly_int({1}), n);
        CHECK(exactly_equal(t, qpoly({{0, 1}, {n + 1, 1}})));
    }
    // T_1 z = z^2 + z^2/2 = (3/2) z^2
    CHECK(exactly_equal(apply_tn(qpoly_int({0, 1}), 1), qpoly({{0, 1}, {0, 1}, {3, 2}})));
    // T_3 z^2 = ((2+1+3)/(2+1)) z^3 = 2 z^3
    CHECK(exactly_equal(apply_tn(qpoly_int({0, 0, 1}), 3), qpoly({{0, 1}, {0, 1}, {0, 1}, {2, 1}})));
}

TEST_CASE("apply_tn equals the weighted-shift rule exactly in rational mode") {
    SplitMix64 rng(31);
    for (int t = 0; t < 40; ++t) {
        const auto f = random_poly<RatComplex>(rng, 30);
        for (int n = 1; n <= 5; ++n)
            CHECK(exactly_equal(apply_tn(f, n), apply_tn_weighted(f, n)));
    }
}

TEST_CASE("apply_tn dual path in float mode stays within relative 1e-15") {
    SplitMix64 rng(32);
    for (int t = 0; t < 40; ++t) {
        const auto f = random_poly<ComplexD>(rng, 30);
        for (int n = 1; n <= 5; ++n) {
            const double resid = max_abs_residual(apply_tn(f, n), apply_tn_weighted(f, n));
            CHECK(resid <= 1e-15 * std::max(1.0, hardy_norm(f)));
        }
    }
}

TEST_CASE("apply_riemann_liouville: monomial rule against the spec values") {
    SplitMix64 rng(33);
    const auto f = random_poly<RatComplex>(rng, 20);
    CHECK(exactly_equal(apply_riemann_liouville(f, 1), integrate(f)));

    // V_2 z = z^3/6, V_3 1 = z^3/3!
    CHECK(exactly_equal(apply_riemann_liouville(qpoly_int({0, 1}), 2),
                        qpoly({{0, 1}, {0, 1}, {0, 1}, {1, 6}})));
    CHECK(exactly_equal(apply_riemann_liouville(qpoly_int({1}), 3),
                        qpoly({{0, 1}, {0, 1}, {0, 1}, {1, 6}})));
}

TEST_CASE("apply_riemann_liouville agrees with contour quadrature of the kernel") {
    // 20 disk points on two rings
    std::vector<ComplexD> points;
    for (int j = 0; j < 10; ++j) {
        const double th = 2.0 * M_PI * j / 10.0;
        points.push_back(0.45 * ComplexD{std::cos(th), std::sin(th)});
        points.push_back(0.85 * ComplexD{std::cos(th + 0.17), std::sin(th + 0.17)});
    }
    for (int n = 1; n <= 3; ++n) {
        for (int k = 0; k <= 10; ++k) {
            const TaylorF zk = TaylorF::monomial(k);
            const TaylorF image = apply_riemann_liouville(zk, n);
            for (const auto& z : points) {
                const ComplexD by_rule = evaluate(image, z);
                const ComplexD by_quad = oracles::riemann_liouville_quadrature(zk, n, z);
                CHECK(std::abs(by_rule - by_quad) <= 1e-10);
            }
        }
    }
}

TEST_CASE("apply_riemann_liouville equals n-fold integration, n <= 8, degree <= 60") {
    SplitMix64 rng(34);
    for (int t = 0; t < 12; ++t) {
        const auto f = random_poly<RatComplex>(rng, 60);
        TaylorQ iterated = f;
        for (int n = 1; n <= 8; ++n) {
            iterated = integrate(iterated);
            CHECK(exactly_equal(iterated, apply_riemann_liouville(f, n)));
        }
    }
}

TEST_CASE("apply_nth_derivative: spec examples and kernel annihilation") {
    CHECK(exactly_equal(apply_nth_derivative(fpoly({0, 1}), 1), fpoly({1})));
    CHECK(apply_nth_derivative(TaylorF::monomial(2), 3).is_identically_zero());
    // V_2 D^2 kills the affine head completely
    CHECK(apply_riemann_liouville(apply_nth_derivative(qpoly_int({1, 1}), 2), 2).is_identically_zero());
}

TEST_CASE("verify_inverse: D^n V_n = Id, V_n D^n = Id on shifted samples") {
    CHECK(exactly_equal(apply_nth_derivative(apply_riemann_liouville(qpoly_int({1}), 1), 1),
                        qpoly_int({1})));
    // V_2 D^2 z^5 = 20 * (3!/5!) z^5 = z^5
    const TaylorQ z5 = TaylorQ::monomial(5);
    CHECK(exactly_equal(apply_riemann_liouville(apply_nth_derivative(z5, 2), 2), z5));

    SplitMix64 rng(35);
    for (int t = 0; t < 25; ++t) {
        const auto f = random_poly<RatComplex>(rng, 40);
        for (int n = 1; n <= 5; ++n) {
            const auto rep = verify_inverse(n, f);
            CHECK(rep.dn_vn_exact);
            CHECK(rep.vn_dn_exact);
        }
    }
}

TEST_CASE("verify_intertwining: hand values and the exact identity") {
    // n=1, f=z: both sides z^3/2
    const auto r1 = verify_intertwining(1, qpoly_int({0, 1}));
    CHECK(r1.exact_equal);
    CHECK(exactly_equal(r1.lhs, qpoly({{0, 1}, {0, 1}, {0, 1}, {1, 2}})));

    // n=2, f=1: both sides z^3/2
    const auto r2 = verify_intertwining(2, qpoly_int({1}));
    CHECK(r2.exact_equal);
    CHECK(exactly_equal(r2.rhs, qpoly({{0, 1}, {0, 1}, {0, 1}, {1, 2}})));

    const auto r0 = verify_intertwining(4, TaylorQ::zero());
    CHECK(r0.max_abs_residual == 0.0);

    SplitMix64 rng(36);
    for (int t = 0; t < 10; ++t) {
        const auto f = random_poly<RatComplex>(rng, 60);
        for (int n = 1; n <= 8; ++n) CHECK(verify_intertwining(n, f).exact_equal);
    }
}

TEST_CASE("V_n is an H^2 contraction coefficientwise; D^n restores the norm") {
    SplitMix64 rng(37);
    for (int t = 0; t < 30; ++t) {
        const auto f = random_poly<ComplexD>(rng, 30);
        for (int n = 1; n <= 4; ++n) {
            const auto v = apply_riemann_liouville(f, n);
            CHECK(hardy_norm(v) <= hardy_norm(f) + 1e-13);
            CHECK(hardy_norm(apply_nth_derivative(v, n)) ==
                  doctest::Approx(hardy_norm(f)).epsilon(1e-12));
        }
    }
}

TEST_CASE("matrix_of: band structure and frozen entries") {
    const auto shift = matrix_of<RatComplex>(OperatorTag::shift(), 3);
    CHECK(shift.entries.size() == 2);
    CHECK(shift.at(1, 0) == RatComplex(1));
    CHECK(shift.at(2, 1) == RatComplex(1));

    const auto t1 = matrix_of<RatComplex>(OperatorTag::t_n(1), 3);
    CHECK(t1.at(1, 0) == RatComplex(2));
    CHECK(t1.at(2, 1) == RatComplex{Rational(3) / 2, Rational(0)});

    const auto rl2 = matrix_of<RatComplex>(OperatorTag::riemann_liouville(2), 4);
    CHECK(rl2.at(2, 0) == RatComplex{Rational(1) / 2, Rational(0)});
    CHECK(rl2.at(3, 1) == RatComplex{Rational(1) / 6, Rational(0)});

    const auto t2 = matrix_of<RatComplex>(OperatorTag::t_n(2), 4);
    CHECK(t2.at(1, 0) == RatComplex(3));
    CHECK(t2.at(2, 1) == RatComplex(2));
    CHECK(t2.at(3, 2) == RatComplex{Rational(5) / 3, Rational(0)});

    CHECK(matrix_of<ComplexD>(OperatorTag::nth_derivative(5), 3).entries.empty());
}

TEST_CASE("matrix application matches the functional operators") {
    SplitMix64 rng(38);
    const std::vector<OperatorTag> tags = {
        OperatorTag::shift(), OperatorTag::volterra(), OperatorTag::t_n(2),
        OperatorTag::riemann_liouville(3), OperatorTag::nth_derivative(2)};
    for (int t = 0; t < 15; ++t) {
        const auto fq = random_poly<RatComplex>(rng, 12);
        const auto ff = to_float(fq);
        for (const auto& tag : tags) {
            const int dim = 20;
            const auto mq = matrix_of<RatComplex>(tag, dim);
            CHECK(exactly_equal(mq.apply(fq), apply_operator(tag, fq).truncated(dim - 1)));
            const auto mf = matrix_of<ComplexD>(tag, dim);
            CHECK(max_abs_residual(mf.apply(ff), apply_operator(tag, ff).truncated(dim - 1)) <= 1e-13);
        }
    }
}

TEST_CASE("operator tag formatting") {
    CHECK(to_string(OperatorTag::shift()) == "shift");
    CHECK(to_string(OperatorTag::riemann_liouville(3)) == "riemann_liouville(3)");
    CHECK(to_string(OperatorTag::t_n(2)) == "t_n(2)");
}

TEST_CASE("parameter preconditions") {
    const TaylorF f = fpoly({1, 1});
    CHECK_THROWS_AS(apply_tn(f, 0), std::invalid_argument);
    CHECK_THROWS_AS(apply_riemann_liouville(f, 0), std::invalid_argument);
    CHECK_THROWS_AS(apply_nth_derivative(f, 0), std::invalid_argument);
    CHECK_THROWS_AS(matrix_of<ComplexD>(OperatorTag::shift(), 0), std::invalid_argument);
    CHECK_THROWS_AS(verify_intertwining(0, f), std::invalid_argument);
}
