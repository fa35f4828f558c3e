#include "hardylat/json_io.hpp"

#include <stdexcept>

namespace hardylat::io {

namespace {

[[noreturn]] void mode_mismatch(const char* op) {
    throw std::invalid_argument(std::string(op) + ": scalar mode mismatch");
}

} // namespace

SeriesValue add(const SeriesValue& f, const SeriesValue& g) {
    if (f.index() != g.index()) mode_mismatch("add");
    if (is_rational(f)) return hardylat::add(std::get<TaylorQ>(f), std::get<TaylorQ>(g));
    return hardylat::add(std::get<TaylorF>(f), std::get<TaylorF>(g));
}

SeriesValue multiply(const SeriesValue& f, const SeriesValue& g, int keep) {
    if (f.index() != g.index()) mode_mismatch("multiply");
    if (is_rational(f)) return hardylat::multiply(std::get<TaylorQ>(f), std::get<TaylorQ>(g), keep);
    return hardylat::multiply(std::get<TaylorF>(f), std::get<TaylorF>(g), keep);
}

ComplexD hardy_inner(const SeriesValue& f, const SeriesValue& g) {
    if (f.index() != g.index()) mode_mismatch("hardy_inner");
    if (is_rational(f)) return to_complex(hardylat::hardy_inner(std::get<TaylorQ>(f), std::get<TaylorQ>(g)));
    return hardylat::hardy_inner(std::get<TaylorF>(f), std::get<TaylorF>(g));
}

std::string rational_to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        const BigInt num(s.substr(0, slash));
        const BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num) / Rational(den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

json series_to_json(const TaylorF& f) {
    json coeffs = json::array();
    for (const auto& c : f.coeffs()) coeffs.push_back(json::array({c.real(), c.imag()}));
    return json{{"mode", "float"}, {"coeffs", coeffs}};
}

json series_to_json(const TaylorQ& f) {
    json coeffs = json::array();
    for (const auto& c : f.coeffs())
        coeffs.push_back(json::array({rational_to_string(c.re), rational_to_string(c.im)}));
    return json{{"mode", "rational"}, {"coeffs", coeffs}};
}

json series_to_json(const SeriesValue& s) {
    return std::visit([](const auto& f) { return series_to_json(f); }, s);
}

SeriesValue series_from_json(const json& j) {
    if (!j.is_object() || !j.contains("mode") || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw std::invalid_argument("series JSON: expected {\"mode\",\"coeffs\"}");
    const std::string mode = j["mode"].get<std::string>();
    const auto& coeffs = j["coeffs"];
    if (mode == "float") {
        std::vector<ComplexD> c;
        c.reserve(coeffs.size());
        for (const auto& e : coeffs) {
            if (!e.is_array() || e.size() != 2) throw std::invalid_argument("series JSON: bad coefficient");
            c.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        return TaylorF(std::move(c));
    }
    if (mode == "rational") {
        std::vector<RatComplex> c;
        c.reserve(coeffs.size());
        for (const auto& e : coeffs) {
            if (!e.is_array() || e.size() != 2) throw std::invalid_argument("series JSON: bad coefficient");
            c.emplace_back(rational_from_string(e[0].get<std::string>()),
                           rational_from_string(e[1].get<std::string>()));
        }
        return TaylorQ(std::move(c));
    }
    throw std::invalid_argument("series JSON: unknown mode " + mode);
}

json inner_spec_to_json(const inner::InnerSpec& spec) {
    json blaschke = json::array();
    for (const auto& z : spec.blaschke)
        blaschke.push_back(json{{"re", z.a.real()}, {"im", z.a.imag()}, {"mult", z.multiplicity}});
    json atoms = json::array();
    for (const auto& a : spec.atoms) atoms.push_back(json{{"theta", a.theta}, {"mass", a.mass}});
    return json{{"blaschke", blaschke}, {"atoms", atoms}};
}

inner::InnerSpec inner_spec_from_json(const json& j) {
    inner::InnerSpec spec;
    if (j.contains("blaschke")) {
        for (const auto& e : j["blaschke"]) {
            inner::BlaschkeZero z;
            z.a = ComplexD{e.at("re").get<double>(), e.at("im").get<double>()};
            z.multiplicity = e.value("mult", 1);
            spec.blaschke.push_back(z);
        }
    }
    if (j.contains("atoms")) {
        for (const auto& e : j["atoms"]) {
            inner::SingularAtom a;
            a.theta = e.at("theta").get<double>();
            a.mass = e.at("mass").get<double>();
            spec.atoms.push_back(a);
        }
    }
    return spec;
}

json ideal_spec_to_json(const lattice::IdealSpec& spec) {
    json chain = json::array();
    for (const auto& level : spec.chain.sets) {
        json angles = json::array();
        for (double t : level) angles.push_back(t);
        chain.push_back(angles);
    }
    return json{{"n", spec.n},
                {"inner", inner_spec_to_json(spec.inner_part)},
                {"chain", chain},
                {"trunc_degree", spec.trunc_degree},
                {"tol", spec.tol}};
}

lattice::IdealSpec ideal_spec_from_json(const json& j) {
    lattice::IdealSpec spec;
    spec.n = j.at("n").get<int>();
    if (j.contains("inner")) spec.inner_part = inner_spec_from_json(j["inner"]);
    spec.chain.n = spec.n;
    if (j.contains("chain")) {
        for (const auto& level : j["chain"]) {
            std::vector<double> angles;
            for (const auto& t : level) angles.push_back(lattice::canonical_angle(t.get<double>()));
            spec.chain.sets.push_back(std::move(angles));
        }
    }
    if (spec.chain.sets.empty()) spec.chain = lattice::ZeroChain::empty(spec.n);
    spec.trunc_degree = j.value("trunc_degree", 0);
    spec.tol = j.value("tol", 1e-9);
    return spec;
}

namespace {

template <class C>
json band_matrix_json_impl(const ops::BandMatrix<C>& m) {
    json entries = json::array();
    for (const auto& [rc, v] : m.entries) {
        json value;
        if constexpr (scalar_traits<C>::exact) {
            value = json::array({rational_to_string(v.re), rational_to_string(v.im)});
        } else {
            value = json::array({v.real(), v.imag()});
        }
        entries.push_back(json::array({rc.first, rc.second, value}));
    }
    return json{{"dim", m.dim}, {"entries", entries}};
}

} // namespace

json band_matrix_to_json(const ops::BandMatrix<ComplexD>& m) { return band_matrix_json_impl(m); }
json band_matrix_to_json(const ops::BandMatrix<RatComplex>& m) { return band_matrix_json_impl(m); }

json inequality_report_to_json(const std::string& check, int n, double lhs, double rhs,
                               double constant, bool ok) {
    return json{{"check", check}, {"n", n}, {"lhs", lhs}, {"rhs", rhs},
                {"constant", constant}, {"ok", ok}};
}

std::string canonical_dump(const json& j) { return j.dump(2); }

} // namespace hardylat::io
