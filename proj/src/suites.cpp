#include "hardylat/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>

#include "hardylat/operators.hpp"
#include "hardylat/spaces.hpp"

namespace hardylat::suites {

void validate(const RunConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (cfg.n_max < 1) throw std::invalid_argument("config: n_max must be >= 1");
    if (cfg.trunc_degree < cfg.n_max + 2)
        throw std::invalid_argument("config: trunc_degree must be >= n_max + 2");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
    if (cfg.grid < 16) throw std::invalid_argument("config: grid must be >= 16");
}

int thread_cap() {
    if (const char* env = std::getenv("VL_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 4u));
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Index-sharded parallel loop; each worker writes only its own slots, so
/// results are independent of scheduling.
void parallel_cases(int count, const std::function<void(int)>& body) {
    const int threads = std::min(thread_cap(), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1)) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

double rel_residual(double abs_residual, double scale) {
    return abs_residual / std::max(1.0, scale);
}

template <class C>
double coeff_scale(const TaylorPoly<C>& f, const TaylorPoly<C>& g) {
    double s = 0.0;
    for (const auto& c : f.coeffs()) s = std::max(s, std::abs(to_complex(c)));
    for (const auto& c : g.coeffs()) s = std::max(s, std::abs(to_complex(c)));
    return s;
}

template <class C>
std::vector<SuiteCase> identity_cases_for_trial(const RunConfig& cfg, int trial) {
    std::vector<SuiteCase> out;
    auto rng = case_stream(cfg.seed, static_cast<std::uint64_t>(trial));
    const auto f = random_poly<C>(rng, cfg.trunc_degree - cfg.n_max);

    for (int n = 1; n <= cfg.n_max; ++n) {
        const std::string key = "t" + std::to_string(trial) + ":n" + std::to_string(n);

        const auto inter = ops::verify_intertwining(n, f);
        SuiteCase c1{"intertwining:" + key, fnv1a("intertwining:" + key),
                     inter.max_abs_residual, 0.0, false};
        if constexpr (scalar_traits<C>::exact) {
            c1.ok = inter.exact_equal;
        } else {
            c1.rhs = cfg.tol;
            c1.ok = rel_residual(inter.max_abs_residual, coeff_scale(inter.lhs, inter.rhs)) <= cfg.tol;
        }
        out.push_back(c1);

        const auto inv = ops::verify_inverse(n, f);
        SuiteCase c2{"inverse:" + key, fnv1a("inverse:" + key),
                     std::max(inv.dn_vn_residual, inv.vn_dn_residual), 0.0, false};
        if constexpr (scalar_traits<C>::exact) {
            c2.ok = inv.dn_vn_exact && inv.vn_dn_exact;
        } else {
            c2.rhs = cfg.tol;
            c2.ok = rel_residual(c2.lhs, hardy_norm(f)) <= cfg.tol;
        }
        out.push_back(c2);

        TaylorPoly<C> iterated = f;
        for (int j = 0; j < n; ++j) iterated = integrate(iterated);
        const auto direct = ops::apply_riemann_liouville(f, n);
        SuiteCase c3{"iterated-integral:" + key, fnv1a("iterated-integral:" + key),
                     max_abs_residual(iterated, direct), 0.0, false};
        if constexpr (scalar_traits<C>::exact) {
            c3.ok = exactly_equal(iterated, direct);
        } else {
            c3.rhs = cfg.tol;
            c3.ok = rel_residual(c3.lhs, hardy_norm(f)) <= cfg.tol;
        }
        out.push_back(c3);

        const auto two_term = ops::apply_tn(f, n);
        const auto weighted = ops::apply_tn_weighted(f, n);
        SuiteCase c4{"tn-dual-path:" + key, fnv1a("tn-dual-path:" + key),
                     max_abs_residual(two_term, weighted), 0.0, false};
        if constexpr (scalar_traits<C>::exact) {
            c4.ok = exactly_equal(two_term, weighted);
        } else {
            c4.rhs = cfg.tol;
            c4.ok = rel_residual(c4.lhs, coeff_scale(two_term, weighted)) <= cfg.tol;
        }
        out.push_back(c4);
    }
    return out;
}

/// Perturbs one entry of the T_1 matrix and applies it; the mismatch against
/// the functional path must be detected, or the harness is blind.
template <class C>
SuiteCase corrupt_self_test(const RunConfig& cfg) {
    auto rng = case_stream(cfg.seed, 0x5e1fULL);
    const auto f = random_poly<C>(rng, std::min(cfg.trunc_degree - 2, 12));
    auto m = ops::matrix_of<C>(ops::OperatorTag::t_n(1), f.trunc_degree() + 2);
    m.entries[{1, 0}] = m.entries[{1, 0}] + scalar_traits<C>::ratio(1, 1024);
    const auto via_matrix = m.apply(f);
    const auto direct = ops::apply_tn(f, 1).truncated(m.dim - 1);
    SuiteCase c{"self-test-corrupt", fnv1a("self-test-corrupt"),
                max_abs_residual(via_matrix, direct), 0.0, false};
    c.ok = exactly_equal(via_matrix, direct); // expected false
    return c;
}

template <class C>
SuiteReport identity_suite_impl(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite = "verify-identities";
    std::vector<std::vector<SuiteCase>> slots(static_cast<std::size_t>(cfg.trials));
    parallel_cases(cfg.trials,
                   [&](int i) { slots[static_cast<std::size_t>(i)] = identity_cases_for_trial<C>(cfg, i); });
    for (auto& block : slots)
        for (auto& c : block) rep.cases.push_back(std::move(c));
    if (cfg.self_test_corrupt) rep.cases.push_back(corrupt_self_test<C>(cfg));
    for (const auto& c : rep.cases)
        if (!c.ok) ++rep.failures;
    return rep;
}

} // namespace

SuiteReport run_identity_suite(const RunConfig& cfg) {
    validate(cfg);
    const auto start = std::chrono::steady_clock::now();
    SuiteReport rep = cfg.rational ? identity_suite_impl<RatComplex>(cfg)
                                   : identity_suite_impl<ComplexD>(cfg);
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

SuiteReport run_norm_suite(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.rational)
        throw std::invalid_argument("verify-norms runs in float mode (norms are rootful)");
    const auto start = std::chrono::steady_clock::now();

    SuiteReport rep;
    rep.suite = "verify-norms";
    const int k_max = std::min(4, cfg.n_max);
    const int sub_max = std::min(3, cfg.n_max);
    rep.constants["pointwise"] = 2.0;
    for (int k = 1; k <= k_max; ++k)
        rep.constants["nesting:k" + std::to_string(k)] = spaces::nesting_constant(k);
    for (int n = 1; n <= sub_max; ++n)
        rep.constants["submultiplicative:n" + std::to_string(n)] =
            spaces::submult_chain(n).m_k.back();

    std::vector<std::vector<SuiteCase>> slots(static_cast<std::size_t>(cfg.trials));
    parallel_cases(cfg.trials, [&](int i) {
        auto rng = case_stream(cfg.seed, static_cast<std::uint64_t>(i) + 0x9000ULL);
        auto& out = slots[static_cast<std::size_t>(i)];
        const auto f = random_poly<ComplexD>(rng, cfg.trunc_degree - cfg.n_max);
        const auto g = random_poly<ComplexD>(rng, cfg.trunc_degree - cfg.n_max);
        const std::string key = "t" + std::to_string(i);

        if (f.is_identically_zero()) {
            out.push_back({"vacuous-zero:" + key, fnv1a("vacuous-zero:" + key), 0.0, 0.0, true});
            return;
        }

        const auto pw = spaces::check_pointwise_bound(f, cfg.grid);
        out.push_back({"pointwise:" + key, fnv1a("pointwise:" + key), pw.lhs, pw.rhs, pw.ok});

        for (int k = 1; k <= k_max; ++k) {
            const auto ne = spaces::check_nesting(f, k);
            out.push_back({"nesting:k" + std::to_string(k) + ":" + key,
                           fnv1a("nesting:k" + std::to_string(k) + ":" + key), ne.lhs, ne.rhs, ne.ok});
            const auto de = spaces::check_derivative_embedding(f, k);
            out.push_back({"derivative-embedding:k" + std::to_string(k) + ":" + key,
                           fnv1a("derivative-embedding:k" + std::to_string(k) + ":" + key),
                           de.lhs, de.rhs, de.ok});
        }
        for (int n = 1; n <= sub_max; ++n) {
            const auto su = spaces::check_submultiplicative(f, g, n);
            out.push_back({"submultiplicative:n" + std::to_string(n) + ":" + key,
                           fnv1a("submultiplicative:n" + std::to_string(n) + ":" + key),
                           su.lhs, su.rhs, su.ok});
        }
    });

    for (auto& block : slots)
        for (auto& c : block) rep.cases.push_back(std::move(c));
    for (const auto& c : rep.cases) {
        if (!c.ok) ++rep.failures;
        if (c.rhs > 0.0) {
            const auto tag = c.label.substr(0, c.label.rfind(":t"));
            auto& worst = rep.worst_ratios[tag];
            worst = std::max(worst, c.lhs / c.rhs);
        }
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json cases_json = nlohmann::json::array();
    for (const auto& c : cases) {
        cases_json.push_back({{"label", c.label},
                              {"inputs-digest", c.inputs_digest},
                              {"lhs", c.lhs},
                              {"rhs", c.rhs},
                              {"ok", c.ok}});
    }
    nlohmann::json j{{"suite", suite}, {"cases", cases_json}, {"failures", failures}};
    if (!worst_ratios.empty()) j["worst_ratios"] = worst_ratios;
    if (!constants.empty()) j["constants"] = constants;
    return j;
}

} // namespace hardylat::suites
