#include "normbundle/json_io.hpp"

#include <fstream>
#include <sstream>

#include "normbundle/errors.hpp"

namespace nb {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing JSON member \"") + key + "\"");
  return j.at(key);
}

int int_member(const Json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_number_integer()) throw UsageError(std::string("JSON member \"") + key + "\" must be an integer");
  return v.get<int>();
}

Json splitting_to_json(const SplittingType& s) {
  Json j;
  j["label"] = s.label();
  j["summands"] = s.summands;
  return j;
}

}  // namespace

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

Json scalar_to_json(const Scalar& s) { return s.to_string(); }

Scalar scalar_from_json(const Json& j, Field field) {
  if (j.is_string()) return Scalar::parse(field, j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Scalar::parse(field, std::to_string(j.get<std::uint64_t>()));
    return Scalar::parse(field, std::to_string(j.get<std::int64_t>()));
  }
  throw UsageError("coefficient must be a string \"p/q\" or an integer, got " + j.dump());
}

Json form_to_json(const BinaryForm& f) {
  Json j;
  j["n"] = f.degree();
  j["basis"] = "catalecticant";
  Json coeffs = Json::array();
  for (const auto& a : f.coords()) coeffs.push_back(scalar_to_json(a));
  j["coeffs"] = std::move(coeffs);
  return j;
}

BinaryForm form_from_json(const Json& j, Field field) {
  const int n = int_member(j, "n");
  if (n < 1) throw UsageError("form degree must be positive");
  std::string basis = "catalecticant";
  if (j.contains("basis")) {
    if (!j.at("basis").is_string()) throw UsageError("\"basis\" must be a string");
    basis = j.at("basis").get<std::string>();
  }
  const auto& raw = member(j, "coeffs");
  if (!raw.is_array()) throw UsageError("\"coeffs\" must be an array");
  if (raw.size() != static_cast<std::size_t>(n + 1)) {
    throw UsageError("form of degree " + std::to_string(n) + " needs " + std::to_string(n + 1) + " coefficients, got " +
                     std::to_string(raw.size()));
  }
  Vector c;
  for (const auto& x : raw) c.push_back(scalar_from_json(x, field));
  if (basis == "catalecticant") return BinaryForm(n, std::move(c));
  if (basis == "monomial") return BinaryForm::from_monomial(n, c);
  throw UsageError("unknown basis \"" + basis + "\" (expected catalecticant or monomial)");
}

Json dual_form_to_json(const DualForm& phi) {
  Json j;
  j["e"] = phi.degree();
  Json coeffs = Json::array();
  for (const auto& b : phi.coeffs()) coeffs.push_back(scalar_to_json(b));
  j["coeffs"] = std::move(coeffs);
  j["text"] = to_string(phi);
  return j;
}

Field field_from_json(const Json& doc, std::optional<Field> override) {
  if (override) return *override;
  if (!doc.is_object() || !doc.contains("field")) return Field::rationals();
  if (!doc.at("field").is_string()) throw UsageError("\"field\" must be a string");
  return Field::parse(doc.at("field").get<std::string>());
}

Json center_to_json(const ProjectionCenter& center) {
  Json j;
  j["n"] = center.n();
  j["k"] = center.k();
  j["field"] = center.field().name();
  Json pts = Json::array();
  for (const auto& p : center.points()) pts.push_back(form_to_json(p));
  j["points"] = std::move(pts);
  return j;
}

ProjectionCenter center_from_json(const Json& doc, std::optional<Field> override) {
  if (!doc.is_object()) throw UsageError("center must be a JSON object");
  if (!doc.contains("points") && doc.contains("center")) return center_from_json(doc.at("center"), override);
  const Field field = field_from_json(doc, override);
  const int n = int_member(doc, "n");
  const auto& raw = member(doc, "points");
  if (!raw.is_array() || raw.empty()) throw UsageError("\"points\" must be a non-empty array");
  std::vector<BinaryForm> pts;
  for (const auto& p : raw) {
    const auto f = form_from_json(p, field);
    if (f.degree() != n) {
      throw ValidationError("point of degree " + std::to_string(f.degree()) + " in a center with n = " +
                            std::to_string(n));
    }
    pts.push_back(f);
  }
  if (doc.contains("k") && int_member(doc, "k") != static_cast<int>(pts.size())) {
    throw ValidationError("\"k\" = " + std::to_string(int_member(doc, "k")) + " but " + std::to_string(pts.size()) +
                          " points were given");
  }
  return ProjectionCenter(std::move(pts));
}

Json immersion_to_json(const ImmersionReport& report) {
  Json j;
  j["immersive"] = report.immersive;
  j["minor_gcd"] = report.minor_gcd.to_string();
  Json cusps = Json::array();
  for (const auto& p : report.cusps) cusps.push_back(p.to_string());
  j["cusps"] = std::move(cusps);
  return j;
}

Json splitting_report_to_json(const SplittingReport& report, bool ordinary) {
  Json j;
  j["kind"] = to_string(report.splitting.kind);
  j["summands"] = report.splitting.summands;
  j["rank"] = report.matrix_rank;
  j["h_ladder"] = report.ladder.h;
  j["ordinary"] = ordinary;
  j["label"] = report.splitting.label();
  return j;
}

Json stratum_spec_to_json(const StratumSpec& spec) {
  Json j;
  j["n"] = spec.n;
  j["k"] = spec.k;
  j["kind"] = to_string(spec.kind);
  j[spec.kind == BundleKind::normal ? "rho" : "delta"] = spec.value;
  return j;
}

Json stratum_report_to_json(const StratumReport& report) {
  Json j;
  j["spec"] = stratum_spec_to_json(report.spec);
  j["trials"] = report.trials;
  j["agreements"] = report.agreements;
  j["histogram"] = report.histogram;
  j["quarantined_seeds"] = report.quarantined_seeds;
  j["predicted"] = splitting_to_json(report.predicted);
  j["codim"] = report.codim;
  j["rejected_attempt_seeds"] = report.rejected_attempt_seeds;
  Json quarantine = Json::array();
  for (const auto& o : report.outcomes) {
    if (o.agreement) continue;
    Json q;
    q["seed"] = o.seed;
    q["computed"] = splitting_to_json(o.computed);
    q["rank"] = o.matrix_rank;
    q["invariants_ok"] = o.invariants_ok;
    q["semicontinuous"] = o.semicontinuous;
    quarantine.push_back(std::move(q));
  }
  j["quarantine"] = std::move(quarantine);
  return j;
}

Json survey_report_to_json(const SurveyReport& report) {
  auto side = [&](const SplittingType& expected, const std::map<std::string, int>& hist) {
    Json j;
    const auto modal = modal_type(hist);
    j["expected"] = expected.label();
    j["modal"] = modal;
    j["modal_count"] = modal.empty() ? 0 : hist.at(modal);
    j["histogram"] = hist;
    return j;
  };
  Json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["field"] = report.field.name();
  j["trials"] = report.trials;
  j["accepted"] = report.accepted;
  j["dependent"] = report.dependent;
  j["non_ordinary"] = report.non_ordinary;
  j["invariant_violations"] = report.invariant_violations;
  j["normal"] = side(report.expected_normal, report.normal_histogram);
  j["tangent"] = side(report.expected_tangent, report.tangent_histogram);
  return j;
}

}  // namespace nb
