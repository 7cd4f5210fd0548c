#pragma once

#include <optional>
#include <string_view>

#include <json.hpp>

#include "normbundle/binary_forms.hpp"
#include "normbundle/bundle.hpp"
#include "normbundle/strata.hpp"

namespace nb {

/// Key order is insertion order, so dumps are byte-stable.
using Json = nlohmann::ordered_json;

/// Throws UsageError on a syntax error.
Json parse_json_text(std::string_view text);
Json read_json_file(const std::string& path);

/// Scalars are strings ("p/q" over Q, residues over F_p); integer JSON numbers are also accepted on input.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, Field field);

/// {"n", "basis": "catalecticant", "coeffs"}. Input may use "basis": "monomial",
/// whose coefficients multiply x0^{n-d} x1^d directly.
Json form_to_json(const BinaryForm& f);
BinaryForm form_from_json(const Json& j, Field field);

/// {"e", "coeffs", "text"}; coefficient j multiplies d0^{e-j} d1^j.
Json dual_form_to_json(const DualForm& phi);

/// The "field" member of a document, unless `override` is set; Q when absent.
Field field_from_json(const Json& doc, std::optional<Field> override);

/// {"n", "k", "field", "points"}.
Json center_to_json(const ProjectionCenter& center);
/// Accepts a center object or any document with a "center" member. Checks
/// that "n" and "k" match the points; the points themselves are validated by ProjectionCenter.
ProjectionCenter center_from_json(const Json& doc, std::optional<Field> override = std::nullopt);

Json immersion_to_json(const ImmersionReport& report);

/// {"kind", "summands", "rank", "h_ladder", "ordinary"}.
Json splitting_report_to_json(const SplittingReport& report, bool ordinary);

/// {"n", "k", "kind", "rho" | "delta"}.
Json stratum_spec_to_json(const StratumSpec& spec);
/// {"spec", "trials", "agreements", "histogram", "quarantined_seeds", ...}.
Json stratum_report_to_json(const StratumReport& report);
Json survey_report_to_json(const SurveyReport& report);

}  // namespace nb
