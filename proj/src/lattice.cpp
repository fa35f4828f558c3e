#include "hardylat/lattice.hpp"

#include <limits>

#include <Eigen/Dense>

namespace hardylat::lattice {

ValidationReport validate_spec(const IdealSpec& spec) {
    ValidationReport rep;
    auto fail = [&](std::string msg) {
        rep.valid = false;
        rep.errors.push_back(std::move(msg));
    };

    if (spec.n < 1) fail("n must be >= 1");
    if (spec.chain.n != spec.n) fail("zero chain n does not match spec n");
    if (static_cast<int>(spec.chain.sets.size()) != spec.n)
        fail("zero chain must list exactly n sets K_0..K_{n-1}");

    if (rep.valid) {
        for (int i = 0; i + 1 < spec.n; ++i) {
            for (double theta : spec.chain.level(i + 1)) {
                if (!ZeroChain::contains(spec.chain.level(i), theta))
                    fail("nesting violated: K_" + std::to_string(i + 1) + " contains angle " +
                         std::to_string(theta) + " missing from K_" + std::to_string(i));
            }
        }
        const auto& deepest = spec.chain.level(spec.n - 1);
        for (const auto& atom : spec.inner_part.atoms) {
            if (!(atom.mass > 0.0)) fail("atom mass must be positive");
            if (!ZeroChain::contains(deepest, atom.theta))
                fail("singular atom at angle " + std::to_string(atom.theta) +
                     " lies outside K_{n-1}");
        }
    }

    for (std::size_t i = 0; i < spec.inner_part.blaschke.size(); ++i) {
        const auto& z = spec.inner_part.blaschke[i];
        if (std::abs(z.a) >= 1.0) fail("Blaschke zero not in the open disk");
        if (z.multiplicity < 1) fail("Blaschke multiplicity must be >= 1");
        if (std::abs(z.a) > 1.0 - 1e-3)
            rep.warnings.push_back("Blaschke zero within 1e-3 of the boundary; truncation quality degrades");
        for (std::size_t j = i + 1; j < spec.inner_part.blaschke.size(); ++j) {
            if (z.a == spec.inner_part.blaschke[j].a)
                rep.warnings.push_back("duplicate Blaschke zeros; multiplicities should be merged");
        }
    }

    if (!(spec.tol > 0.0)) fail("tolerance must be positive");
    if (spec.trunc_degree < 0) fail("trunc_degree must be non-negative");

    rep.notes.push_back("finite zero list: accumulation-point condition holds vacuously");
    rep.notes.push_back("finite K_0 \\ K_{n-1} is isolated automatically");
    rep.notes.push_back("finite sets have zero arc-length measure; the ideal is not forced to be zero");
    return rep;
}

CarlesonReport carleson_integral(const IdealSpec& spec, int quad_points, double drop_threshold) {
    if (quad_points < 256) throw std::invalid_argument("carleson_integral: quad_points must be >= 256");
    if (!(drop_threshold > 1.0)) throw std::invalid_argument("carleson_integral: drop threshold must exceed 1");

    CarlesonReport rep;
    rep.drop_threshold = drop_threshold;

    std::vector<ComplexD> points;
    if (!spec.chain.sets.empty()) {
        for (double theta : spec.chain.level(0))
            points.push_back({std::cos(theta), std::sin(theta)});
    }
    for (const auto& z : spec.inner_part.blaschke) points.push_back(z.a);

    if (points.empty()) {
        // rho == 1 by the empty-set convention, so the integral is exactly 0.
        rep.refinements = {0.0, 0.0, 0.0};
        rep.flagged = {0, 0, 0};
        return rep;
    }

    constexpr double kClamp = 1e-14;
    const double two_pi = 2.0 * std::numbers::pi;
    auto quadrature = [&](int m) {
        const double h = two_pi / m;
        double total = 0.0;
        int flagged = 0;
        for (int i = 0; i < m; ++i) {
            const double th = (i + 0.5) * h;
            const ComplexD z{std::cos(th), std::sin(th)};
            double rho = std::numeric_limits<double>::infinity();
            for (const auto& p : points) rho = std::min(rho, std::abs(z - p));
            if (rho < kClamp) {
                rho = kClamp;
                ++flagged;
            }
            total += std::log(rho);
        }
        return std::pair{total * h, flagged};
    };

    int m = quad_points;
    for (int level = 0; level < 3; ++level, m *= 2) {
        auto [v, fl] = quadrature(m);
        rep.refinements.push_back(v);
        rep.flagged.push_back(fl);
    }
    rep.value = rep.refinements[0];

    const double v0 = rep.refinements[0], v1 = rep.refinements[1], v2 = rep.refinements[2];
    rep.divergent = (v0 < 0.0 && v1 <= drop_threshold * v0) &&
                    (v1 < 0.0 && v2 <= drop_threshold * v1);
    return rep;
}

namespace {

struct CatalogEntry {
    double theta;
    RatComplex point;
};

RatComplex rc(long long pn, long long pd, long long qn, long long qd) {
    return {Rational(pn) / Rational(pd), Rational(qn) / Rational(qd)};
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;
        auto push = [&](long long pn, long long pd, long long qn, long long qd) {
            const double re = static_cast<double>(pn) / pd;
            const double im = static_cast<double>(qn) / qd;
            v.push_back({canonical_angle(std::atan2(im, re)), rc(pn, pd, qn, qd)});
        };
        push(1, 1, 0, 1);
        push(0, 1, 1, 1);
        push(-1, 1, 0, 1);
        push(0, 1, -1, 1);
        for (int sr : {1, -1}) {
            for (int si : {1, -1}) {
                push(3 * sr, 5, 4 * si, 5);
                push(4 * sr, 5, 3 * si, 5);
                push(5 * sr, 13, 12 * si, 13);
                push(12 * sr, 13, 5 * si, 13);
            }
        }
        return v;
    }();
    return entries;
}

} // namespace

std::optional<RatComplex> unit_point_exact(double theta) {
    for (const auto& e : catalog())
        if (same_angle(e.theta, theta)) return e.point;
    return std::nullopt;
}

const std::vector<double>& exact_unit_angles() {
    static const std::vector<double> angles = [] {
        std::vector<double> v;
        for (const auto& e : catalog()) v.push_back(e.theta);
        std::sort(v.begin(), v.end());
        return v;
    }();
    return angles;
}

DistanceReport distance_to_span(const TaylorF& f, const std::vector<TaylorF>& span) {
    if (span.empty()) throw std::invalid_argument("distance_to_span: empty span");
    DistanceReport rep;

    // Normalizing each spanning vector and f leaves the span and the relative
    // distance unchanged while taming the Gram conditioning.
    const double fnorm = hardy_norm(f);
    if (fnorm == 0.0) return rep;
    std::vector<TaylorF> unit;
    unit.reserve(span.size());
    for (const auto& v : span) {
        const double n = hardy_norm(v);
        unit.push_back(n > 0.0 ? scale(v, ComplexD{1.0 / n, 0.0}) : v);
    }
    const TaylorF fh = scale(f, ComplexD{1.0 / fnorm, 0.0});

    const auto m = static_cast<Eigen::Index>(unit.size());
    Eigen::MatrixXcd gram(m, m);
    Eigen::VectorXcd c(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j)
            gram(i, j) = hardy_inner(unit[static_cast<std::size_t>(j)], unit[static_cast<std::size_t>(i)]);
        c(i) = hardy_inner(fh, unit[static_cast<std::size_t>(i)]);
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gram);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(m - 1);
    rep.gram_condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();

    Eigen::VectorXcd x;
    if (smin <= 1e-13 * smax) {
        rep.pseudo_inverse_used = true;
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(gram);
        x = cod.solve(c);
    } else {
        x = gram.ldlt().solve(c);
    }

    const double proj2 = c.dot(x).real(); // c^H x on the normalized data
    rep.distance = fnorm * std::sqrt(std::max(0.0, 1.0 - proj2));
    return rep;
}

DistanceReport distance_to_span(const TaylorQ& f, const std::vector<TaylorQ>& span) {
    if (span.empty()) throw std::invalid_argument("distance_to_span: empty span");
    DistanceReport rep;

    // An input equal to a spanning vector is the common fast path.
    for (const auto& v : span) {
        if (exactly_equal(f, v)) {
            rep.exact_zero = true;
            return rep;
        }
    }

    const std::size_t m = span.size();
    std::vector<std::vector<RatComplex>> g(m, std::vector<RatComplex>(m));
    std::vector<RatComplex> c(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) g[i][j] = hardy_inner(span[j], span[i]);
        c[i] = hardy_inner(f, span[i]);
    }

    // Gaussian elimination with pivot skipping; the system is consistent by
    // construction, so skipped columns just pin x_j = 0.
    std::vector<RatComplex> x(m, RatComplex(0));
    std::vector<int> pivot_of_col(m, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < m; ++col) {
        std::size_t p = row;
        while (p < m && g[p][col].is_zero()) ++p;
        if (p == m) continue;
        std::swap(g[p], g[row]);
        std::swap(c[p], c[row]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || g[r][col].is_zero()) continue;
            const RatComplex factor = g[r][col] / g[row][col];
            for (std::size_t k = col; k < m; ++k) g[r][k] -= factor * g[row][k];
            c[r] -= factor * c[row];
        }
        pivot_of_col[col] = static_cast<int>(row);
        ++row;
    }
    if (row < m) rep.pseudo_inverse_used = true;
    for (std::size_t col = 0; col < m; ++col)
        if (pivot_of_col[col] >= 0)
            x[col] = c[static_cast<std::size_t>(pivot_of_col[col])] / g[static_cast<std::size_t>(pivot_of_col[col])][col];

    RatComplex proj2(0);
    for (std::size_t i = 0; i < m; ++i) {
        RatComplex ci = hardy_inner(f, span[i]);
        proj2 += scalar_traits<RatComplex>::conj(ci) * x[i];
    }
    Rational dist2 = hardy_norm_sq(f) - proj2.re;
    if (dist2 < 0) dist2 = 0;
    rep.exact_zero = (dist2 == 0);
    rep.distance = std::sqrt(to_double(dist2));
    return rep;
}

} // namespace hardylat::lattice
