#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardylat/rng.hpp"

namespace hardylat::suites {

/// Shared configuration of the randomized verification suites. The random
/// polynomial model draws dyadic coefficients so float and rational runs see
/// the same numbers.
struct RunConfig {
    std::uint64_t seed = 42;
    int trunc_degree = 48;
    int n_max = 5;
    int trials = 200;
    double tol = 1e-12;
    bool rational = true;
    int grid = 1024;
    bool self_test_corrupt = false;
};

/// Throws std::invalid_argument when the configuration is unusable.
void validate(const RunConfig& cfg);

struct SuiteCase {
    std::string label;
    std::uint64_t inputs_digest = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = true;
};

struct SuiteReport {
    std::string suite;
    std::vector<SuiteCase> cases;
    int failures = 0;
    double wall_ms = 0.0; // reported on stderr only; never serialized
    std::map<std::string, double> worst_ratios;
    std::map<std::string, double> constants;

    /// Canonical report body. Excludes wall time so identical seed/config
    /// runs serialize byte-identically.
    nlohmann::json to_json() const;
};

/// Similarity identity suite: intertwining, inverse pair, iterated-integral
/// equivalence, and the T_n dual-path equality, over seeded random
/// polynomials for n = 1..n_max. Exact assertions in rational mode,
/// tolerance tol (relative) in float mode. The corrupt flag injects one
/// perturbed-matrix case that must fail, as a harness sensitivity check.
SuiteReport run_identity_suite(const RunConfig& cfg);

/// Norm/inequality suite (float mode): the pointwise sup bound, the nesting
/// inequality with C_k = sqrt((k!)^2+1), submultiplicativity with the
/// computed constant chain, and the standalone derivative embedding.
SuiteReport run_norm_suite(const RunConfig& cfg);

/// Thread cap from VL_THREADS (>=1); defaults to a small fixed number.
int thread_cap();

} // namespace hardylat::suites
