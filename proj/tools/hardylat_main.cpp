// hardylat: batch verification harness for the shift-plus-Volterra operator
// family, the S_n^2 norm machinery, and invariant-subspace data.
//
// Subcommands: verify-identities, verify-norms, ideal, subspace, matrix.
// Exit codes: 0 all checks pass, 1 mathematical violation, 2 input error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hardylat/json_io.hpp"
#include "hardylat/suites.hpp"

namespace {

using namespace hardylat;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBadInput = 2;

void emit(const io::json& j, const std::string& out_path) {
    const std::string text = io::canonical_dump(j);
    if (out_path.empty() || out_path == "-") {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output path: " + out_path);
        out << text << "\n";
    }
}

io::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input path: " + path);
    io::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    return j;
}

std::vector<TaylorQ> rational_cofactors(const io::json& j) {
    std::vector<TaylorQ> out;
    for (const auto& e : j) {
        auto s = io::series_from_json(e);
        if (io::is_rational(s)) {
            out.push_back(std::get<TaylorQ>(s));
        } else {
            out.push_back(to_rational(std::get<TaylorF>(s)));
        }
    }
    return out;
}

struct CommonFlags {
    suites::RunConfig cfg;
    std::string mode = "rational";
    std::string out;
};

void attach_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--seed", flags.cfg.seed, "RNG seed");
    cmd->add_option("--trials", flags.cfg.trials, "random cases per suite");
    cmd->add_option("--n-max", flags.cfg.n_max, "largest operator parameter n");
    cmd->add_option("--degree", flags.cfg.trunc_degree, "truncation degree budget");
    cmd->add_option("--tol", flags.cfg.tol, "float-mode tolerance");
    cmd->add_option("--mode", flags.mode, "scalar mode: float|rational")
        ->check(CLI::IsMember({"float", "rational"}));
    cmd->add_option("--out", flags.out, "report path (default stdout)");
}

int run_suite(const CommonFlags& flags, bool identities, bool corrupt) {
    suites::RunConfig cfg = flags.cfg;
    cfg.rational = flags.mode == "rational";
    cfg.self_test_corrupt = corrupt;
    const auto rep = identities ? suites::run_identity_suite(cfg) : suites::run_norm_suite(cfg);
    emit(rep.to_json(), flags.out);
    std::cerr << rep.suite << ": " << rep.cases.size() << " cases, " << rep.failures
              << " failures, " << rep.wall_ms << " ms\n";
    return rep.failures == 0 ? kExitOk : kExitViolation;
}

io::json membership_json(const lattice::MembershipReport& rep) {
    return io::json{{"cond_i", rep.cond_i},
                    {"cond_ii", rep.cond_ii},
                    {"in_sn2", rep.in_sn2},
                    {"in_zero_subalgebra", rep.in_zero_subalgebra},
                    {"ok", rep.ok},
                    {"cond_i_exact", rep.cond_i_exact},
                    {"sn2_heuristic", rep.sn2_heuristic},
                    {"worst_boundary_residual", rep.worst_boundary_residual}};
}

int cmd_ideal_validate(const lattice::IdealSpec& spec, const std::string& out, int quad_points) {
    const auto rep = lattice::validate_spec(spec);
    io::json j{{"command", "ideal validate"}, {"valid", rep.valid},
               {"errors", rep.errors}, {"warnings", rep.warnings}, {"notes", rep.notes}};
    if (rep.valid) {
        const auto car = lattice::carleson_integral(spec, quad_points);
        j["carleson"] = io::json{{"value", car.value},
                                 {"refinements", car.refinements},
                                 {"flagged_collisions", car.flagged},
                                 {"divergent", car.divergent}};
    }
    emit(j, out);
    return rep.valid ? kExitOk : kExitBadInput;
}

template <class C>
int generate_members(const lattice::IdealSpec& spec, const std::vector<TaylorPoly<C>>& cofactors,
                     const std::string& out) {
    io::json members = io::json::array();
    io::json reports = io::json::array();
    bool all_ok = true;
    for (const auto& q : cofactors) {
        const auto recipe = lattice::make_member<C>(spec, q);
        members.push_back(io::series_to_json(recipe.member));
        const auto rep = lattice::check_membership(recipe.member, spec);
        all_ok = all_ok && rep.ok;
        reports.push_back(membership_json(rep));
    }
    emit(io::json{{"command", "ideal generate"}, {"members", members},
                  {"membership", reports}, {"all_ok", all_ok}},
         out);
    return all_ok ? kExitOk : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desk-scale toolkit for shift-plus-Volterra operators on truncated Taylor series"};
    app.require_subcommand(1);

    CommonFlags flags;

    auto* vid = app.add_subcommand("verify-identities",
                                   "similarity/inverse/iterated-integral identity suites");
    bool corrupt = false;
    attach_common(vid, flags);
    vid->add_flag("--self-test-corrupt", corrupt,
                  "perturb one operator matrix entry; the suite must then fail");

    auto* vno = app.add_subcommand("verify-norms", "norm and inequality suites (float mode)");
    attach_common(vno, flags);

    auto* ideal = app.add_subcommand("ideal", "validate/generate/check against an ideal spec");
    ideal->require_subcommand(1);
    std::string spec_path, series_path, cofactors_path;
    int quad_points = 4096;
    int random_cofactors = 0;
    auto* iv = ideal->add_subcommand("validate", "validate a spec and its Carleson integral");
    iv->add_option("spec", spec_path, "IdealSpec JSON path")->required();
    iv->add_option("--quad-points", quad_points, "Carleson quadrature size");
    iv->add_option("--out", flags.out, "report path");
    auto* ig = ideal->add_subcommand("generate", "emit members for supplied or random cofactors");
    ig->add_option("spec", spec_path, "IdealSpec JSON path")->required();
    ig->add_option("--cofactors", cofactors_path, "Series JSON array of cofactors");
    ig->add_option("--random", random_cofactors, "draw this many random cofactors");
    ig->add_option("--seed", flags.cfg.seed, "RNG seed");
    ig->add_option("--mode", flags.mode, "scalar mode: float|rational")
        ->check(CLI::IsMember({"float", "rational"}));
    ig->add_option("--out", flags.out, "report path");
    auto* ic = ideal->add_subcommand("check", "check a series against the spec");
    ic->add_option("spec", spec_path, "IdealSpec JSON path")->required();
    ic->add_option("series", series_path, "Series JSON path")->required();
    ic->add_option("--out", flags.out, "report path");

    auto* sub = app.add_subcommand("subspace", "build invariant-subspace bases and test them");
    sub->require_subcommand(1);
    auto* sb = sub->add_subcommand("build", "assemble a SubspaceBasis from cofactors");
    sb->add_option("spec", spec_path, "IdealSpec JSON path")->required();
    sb->add_option("cofactors", cofactors_path, "Series JSON array of cofactors")->required();
    sb->add_option("--out", flags.out, "report path");
    auto* si = sub->add_subcommand("check-invariance", "T_n-invariance of the generated basis");
    si->add_option("spec", spec_path, "IdealSpec JSON path")->required();
    si->add_option("cofactors", cofactors_path, "Series JSON array of cofactors")->required();
    si->add_option("--out", flags.out, "report path");

    auto* mat = app.add_subcommand("matrix", "operator matrices");
    mat->require_subcommand(1);
    auto* md = mat->add_subcommand("dump", "emit the banded monomial-basis matrix as JSON");
    std::string op_name;
    int op_n = 1, dim = 8;
    md->add_option("--op", op_name, "shift|volterra|riemann_liouville|nth_derivative|t_n")
        ->required();
    md->add_option("--n", op_n, "operator parameter n");
    md->add_option("--dim", dim, "matrix dimension");
    md->add_option("--mode", flags.mode, "scalar mode: float|rational")
        ->check(CLI::IsMember({"float", "rational"}));
    md->add_option("--out", flags.out, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (vid->parsed()) return run_suite(flags, /*identities=*/true, corrupt);
        if (vno->parsed()) {
            flags.mode = flags.mode == "rational" && vno->count("--mode") == 0 ? "float" : flags.mode;
            return run_suite(flags, /*identities=*/false, /*corrupt=*/false);
        }

        if (ideal->parsed() || sub->parsed()) {
            const auto spec = io::ideal_spec_from_json(load_json(spec_path));
            const auto validation = lattice::validate_spec(spec);

            if (iv->parsed()) return cmd_ideal_validate(spec, flags.out, quad_points);
            if (!validation.valid) {
                io::json j{{"valid", false}, {"errors", validation.errors}};
                emit(j, flags.out);
                return kExitBadInput;
            }

            if (ic->parsed()) {
                const auto s = io::series_from_json(load_json(series_path));
                const auto rep = io::is_rational(s)
                                     ? lattice::check_membership(std::get<TaylorQ>(s), spec)
                                     : lattice::check_membership(std::get<TaylorF>(s), spec);
                io::json j = membership_json(rep);
                j["command"] = "ideal check";
                emit(j, flags.out);
                return rep.ok ? kExitOk : kExitViolation;
            }

            if (ig->parsed()) {
                const bool rational = flags.mode == "rational";
                if (!cofactors_path.empty()) {
                    const auto cof = rational_cofactors(load_json(cofactors_path));
                    if (cof.empty()) throw std::invalid_argument("empty cofactor list");
                    if (rational) return generate_members<RatComplex>(spec, cof, flags.out);
                    std::vector<TaylorF> coff;
                    for (const auto& q : cof) coff.push_back(to_float(q));
                    return generate_members<ComplexD>(spec, coff, flags.out);
                }
                if (random_cofactors < 1)
                    throw std::invalid_argument("need --cofactors or --random >= 1");
                SplitMix64 rng(flags.cfg.seed);
                if (rational) {
                    std::vector<TaylorQ> cof;
                    while (static_cast<int>(cof.size()) < random_cofactors) {
                        auto q = random_poly<RatComplex>(rng, 6);
                        if (!q.is_identically_zero()) cof.push_back(std::move(q));
                    }
                    return generate_members<RatComplex>(spec, cof, flags.out);
                }
                std::vector<TaylorF> cof;
                while (static_cast<int>(cof.size()) < random_cofactors) {
                    auto q = random_poly<ComplexD>(rng, 6);
                    if (!q.is_identically_zero()) cof.push_back(std::move(q));
                }
                return generate_members<ComplexD>(spec, cof, flags.out);
            }

            // subspace subcommands share cofactor loading
            const auto cof_json = load_json(cofactors_path);
            const auto cof = rational_cofactors(cof_json);
            if (cof.empty()) throw std::invalid_argument("empty cofactor list");
            const bool exact_ok = spec.inner_part.atoms.empty();
            if (sb->parsed()) {
                if (exact_ok) {
                    const auto basis = lattice::build_subspace<RatComplex>(spec, cof);
                    emit(io::subspace_basis_to_json(basis), flags.out);
                } else {
                    std::vector<TaylorF> coff;
                    for (const auto& q : cof) coff.push_back(to_float(q));
                    const auto basis = lattice::build_subspace<ComplexD>(spec, coff);
                    emit(io::subspace_basis_to_json(basis), flags.out);
                }
                return kExitOk;
            }
            if (si->parsed()) {
                io::json j{{"command", "subspace check-invariance"}};
                bool ok;
                double max_dist = 0.0;
                if (exact_ok) {
                    const auto basis = lattice::build_subspace<RatComplex>(spec, cof);
                    const auto inv = lattice::check_invariance(basis);
                    std::vector<TaylorQ> enlarged = basis.elements;
                    for (const auto& g : basis.pre_images)
                        enlarged.push_back(differentiate(ops::apply_shift(g), spec.n));
                    for (const auto& f : basis.elements) {
                        const auto d =
                            lattice::distance_to_span(ops::apply_tn(f, spec.n), enlarged);
                        max_dist = std::max(max_dist, d.distance);
                    }
                    ok = inv.ok;
                    j["exact"] = inv.exact;
                    j["max_residual"] = inv.max_residual;
                } else {
                    std::vector<TaylorF> coff;
                    for (const auto& q : cof) coff.push_back(to_float(q));
                    const auto basis = lattice::build_subspace<ComplexD>(spec, coff);
                    const auto inv = lattice::check_invariance(basis);
                    std::vector<TaylorF> enlarged = basis.elements;
                    for (const auto& g : basis.pre_images)
                        enlarged.push_back(differentiate(ops::apply_shift(g), spec.n));
                    for (const auto& f : basis.elements) {
                        const auto d =
                            lattice::distance_to_span(ops::apply_tn(f, spec.n), enlarged);
                        max_dist = std::max(max_dist, d.distance);
                    }
                    ok = inv.ok;
                    j["exact"] = inv.exact;
                    j["max_residual"] = inv.max_residual;
                }
                j["max_span_distance"] = max_dist;
                j["ok"] = ok;
                emit(j, flags.out);
                return ok ? kExitOk : kExitViolation;
            }
        }

        if (md->parsed()) {
            ops::OperatorTag tag;
            if (op_name == "shift") tag = ops::OperatorTag::shift();
            else if (op_name == "volterra") tag = ops::OperatorTag::volterra();
            else if (op_name == "riemann_liouville") tag = ops::OperatorTag::riemann_liouville(op_n);
            else if (op_name == "nth_derivative") tag = ops::OperatorTag::nth_derivative(op_n);
            else if (op_name == "t_n") tag = ops::OperatorTag::t_n(op_n);
            else throw std::invalid_argument("unknown operator tag: " + op_name);

            if (flags.mode == "rational") {
                emit(io::band_matrix_to_json(ops::matrix_of<RatComplex>(tag, dim)), flags.out);
            } else {
                emit(io::band_matrix_to_json(ops::matrix_of<ComplexD>(tag, dim)), flags.out);
            }
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
