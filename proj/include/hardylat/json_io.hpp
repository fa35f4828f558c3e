#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "hardylat/inner.hpp"
#include "hardylat/lattice.hpp"
#include "hardylat/operators.hpp"
#include "hardylat/taylor.hpp"

namespace hardylat::io {

using nlohmann::json;

/// Runtime-mode series value for the JSON/CLI boundary. Inside the library
/// the mode is a template parameter; here it is data.
using SeriesValue = std::variant<TaylorF, TaylorQ>;

inline bool is_rational(const SeriesValue& s) { return std::holds_alternative<TaylorQ>(s); }
inline const char* mode_name(const SeriesValue& s) { return is_rational(s) ? "rational" : "float"; }

/// Mode-checked arithmetic at the boundary; mixing float and rational series
/// is a caller error.
SeriesValue add(const SeriesValue& f, const SeriesValue& g);
SeriesValue multiply(const SeriesValue& f, const SeriesValue& g, int keep = kKeepFull);
ComplexD hardy_inner(const SeriesValue& f, const SeriesValue& g);

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

json series_to_json(const SeriesValue& s);
SeriesValue series_from_json(const json& j);

json series_to_json(const TaylorF& f);
json series_to_json(const TaylorQ& f);

json inner_spec_to_json(const inner::InnerSpec& spec);
inner::InnerSpec inner_spec_from_json(const json& j);

json ideal_spec_to_json(const lattice::IdealSpec& spec);
lattice::IdealSpec ideal_spec_from_json(const json& j);

json band_matrix_to_json(const ops::BandMatrix<ComplexD>& m);
json band_matrix_to_json(const ops::BandMatrix<RatComplex>& m);

template <class C>
json subspace_basis_to_json(const lattice::SubspaceBasis<C>& basis) {
    json elems = json::array();
    json pres = json::array();
    for (const auto& p : basis.pre_images) pres.push_back(series_to_json(p));
    for (const auto& e : basis.elements) elems.push_back(series_to_json(e));
    return json{{"n", basis.spec.n}, {"pre_images", pres}, {"elements", elems}};
}

json inequality_report_to_json(const std::string& check, int n, double lhs, double rhs,
                               double constant, bool ok);

/// Canonical serialization: nlohmann keeps object keys sorted, dump(2) is
/// deterministic for identical inputs.
std::string canonical_dump(const json& j);

} // namespace hardylat::io
