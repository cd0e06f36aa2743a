#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "planeaut/equivariant.hpp"
#include "planeaut/family.hpp"

// JSON encodings. Parsing failures throw SchemaError.
namespace pa::io {

using Json = nlohmann::ordered_json;

// Q: "p/q"; Q(zeta_k): {"k": k, "coeffs": [...]}; kappa(x): {"num": [...], "den": [...]}
// with base-field coefficients in ascending degree.
Json to_json(const Num& a, bool cyclotomic);
Json to_json(const Scalar& s);
Num num_from_json(const Json& j, const Field& base);
Scalar scalar_from_json(const Json& j, const Field& f);

// [[[i, j], scalar], ...] in graded-lex order.
Json to_json(const BiPoly& p);
BiPoly poly_from_json(const Json& j, const Field& f);

// {"field": "...", "components": [poly, poly]}
Json to_json(const PlaneEndo& f);
Json to_json(const PlaneAut& f);
// `fallback` is used when the object has no "field".
PlaneEndo endo_from_json(const Json& j, const std::optional<Field>& fallback = std::nullopt);
PlaneAut aut_from_json(const Json& j, const std::optional<Field>& fallback = std::nullopt);

// [[m11, m12], [m21, m22]]; affine maps add "translation".
Json matrix_to_json(const Affine& a);
Affine matrix_from_json(const Json& j, const Field& f);
Json affine_to_json(const Affine& a);

// Finite: [matrix, ...]; torus: {"torus_weights": [a, b]}.
Json to_json(const LinearRep& rho);
LinearRep rep_from_json(const Json& j, const Field& f);

// {"kind", "field", "orders", "generators"} with kind cyclic or finite-abelian;
// kind diagonal-torus carries "weights" and an optional "conjugator".
Json to_json(const GroupAction& G);
GroupAction group_from_json(const Json& j, const std::optional<Field>& fallback = std::nullopt);

Json to_json(const TameDecomposition& d);
Json to_json(const CentralizerDescription& c);
Json to_json(const KRTrace& t);
Json to_json(const PoleRemoval& r);

Json to_json(const LinearizationReport& r, const GroupAction& nu);
// The report and the group it was computed for.
std::pair<LinearizationReport, GroupAction> report_from_json(const Json& j);

}  // namespace pa::io
