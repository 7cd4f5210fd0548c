#include "normbundle/cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "normbundle/errors.hpp"
#include "normbundle/json_io.hpp"
#include "normbundle/strata.hpp"

namespace nb {

namespace {

/// An error that carries extra fields for the JSON error object.
class DetailedError : public Error {
 public:
  DetailedError(ErrorKind kind, const std::string& what, Json details)
      : Error(kind, what), details_(std::move(details)) {}
  const Json& details() const noexcept { return details_; }

 private:
  Json details_;
};

struct Session {
  std::optional<Field> field;
  std::uint64_t seed = 1;
  int trials = 0;
  bool json = false;
  std::string out_path;

  Field field_or(Field fallback) const { return field ? *field : fallback; }
  int trials_or(int fallback) const { return trials > 0 ? trials : fallback; }
};

struct Output {
  Json json;
  std::string text;
};

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json center_summary(const ProjectionCenter& c) {
  Json j;
  j["n"] = c.n();
  j["k"] = c.k();
  j["field"] = c.field().name();
  return j;
}

void require_ordinary(const ProjectionCenter& center) {
  const auto imm = immersion_report(center);
  if (imm.immersive) return;
  std::string where;
  for (const auto& p : imm.cusps) where += (where.empty() ? "" : ", ") + p.to_string();
  Json details;
  details["center"] = center_summary(center);
  details["immersion"] = immersion_to_json(imm);
  throw DetailedError(ErrorKind::computation,
                      "center is not ordinary: the projection is not an immersion" +
                          (where.empty() ? std::string() : " (cusps at " + where + ")"),
                      std::move(details));
}

void write_bundles(Json& j, std::ostringstream& text, const ProjectionCenter& center) {
  for (const auto kind : {BundleKind::normal, BundleKind::tangent}) {
    const auto r = analyze_bundle(center, kind);
    j[to_string(kind)] = splitting_report_to_json(r, true);
    text << std::left << std::setw(8) << to_string(kind) << std::setw(14) << r.splitting.label() << "rank "
         << r.matrix_rank << "  h: " << join(r.ladder.h) << "\n";
  }
}

Output cmd_analyze(const Session& s, const std::string& path) {
  const auto center = center_from_json(read_json_file(path), s.field);
  require_ordinary(center);
  const auto smooth = smooth_image(center);
  Output o;
  std::ostringstream text;
  o.json["center"] = center_summary(center);
  o.json["ordinary"] = true;
  o.json["smooth"] = smooth ? Json(*smooth) : Json(nullptr);
  text << "center n=" << center.n() << " k=" << center.k() << " field=" << center.field().name() << "\n"
       << "ordinary: yes\n"
       << "smooth image: " << (smooth ? yes_no(*smooth) : std::string("not decided for k >= 3")) << "\n";
  write_bundles(o.json, text, center);
  o.text = text.str();
  return o;
}

StratumSpec spec_from_flags(int n, int k, std::optional<int> rho, std::optional<int> delta,
                            const std::string& kind_text) {
  if (!rho && !delta) throw UsageError("one of --rho or --delta is required");
  const BundleKind inferred = rho ? BundleKind::normal : BundleKind::tangent;
  const BundleKind kind = kind_text.empty() ? inferred : parse_bundle_kind(kind_text);
  if (kind != inferred) {
    throw UsageError(std::string("--kind ") + to_string(kind) + " does not match " + (rho ? "--rho" : "--delta"));
  }
  return {n, k, kind, rho ? *rho : *delta};
}

Output cmd_construct(const Session& s, const StratumSpec& spec) {
  validate(spec);
  if (!construction_bounds_hold(spec)) {
    throw ValidationError(spec.to_string() + " violates the construction bounds (" +
                          (spec.kind == BundleKind::normal ? "3 rho <= n-k+1 and k <= n+1-3 rho"
                                                           : "2 delta <= n-k+1 and k <= n+1-2 delta") +
                          ")");
  }
  const auto sc = construct_special_center(spec, s.seed, s.field_or(Field::rationals()));
  const auto predicted = generic_splitting(spec);
  Output o;
  std::ostringstream text;
  o.json["spec"] = stratum_spec_to_json(spec);
  o.json["seed"] = s.seed;
  o.json["attempt_seed"] = sc.seed;
  Json rejected = Json::array();
  for (std::size_t i = 0; i < sc.rejected_seeds.size(); ++i) {
    Json r;
    r["seed"] = sc.rejected_seeds[i];
    r["reason"] = sc.rejection_reasons[i];
    rejected.push_back(std::move(r));
  }
  o.json["rejected_attempts"] = std::move(rejected);
  o.json["predicted"] = predicted.label();
  o.json["codim"] = stratum_codim(spec);
  o.json["center"] = center_to_json(sc.center);
  Json gens = Json::array();
  for (const auto& g : sc.generators) gens.push_back(dual_form_to_json(g));
  o.json["generators"] = std::move(gens);
  text << spec.to_string() << "  predicted " << predicted.label() << "  codim " << stratum_codim(spec) << "\n"
       << "seed " << s.seed << " (attempt seed " << sc.seed << ", " << sc.rejected_seeds.size() << " rejected)\n";
  for (const auto& p : sc.center.points()) text << "point      " << to_string(p) << "\n";
  for (const auto& g : sc.generators) text << "generator  " << to_string(g) << "\n";
  write_bundles(o.json, text, sc.center);
  o.text = text.str();
  return o;
}

Json terms_to_json(const std::vector<WaringTerm>& terms) {
  Json arr = Json::array();
  for (const auto& t : terms) {
    Json j;
    j["coefficient"] = scalar_to_json(t.coefficient);
    j["a0"] = scalar_to_json(t.power.a0);
    j["a1"] = scalar_to_json(t.power.a1);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string terms_text(const std::vector<WaringTerm>& terms) {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    os << (i ? " + " : "") << t.coefficient << "*(" << t.power.a0 << "*x0 + " << t.power.a1 << "*x1)^" << t.power.n;
  }
  return os.str();
}

Output waring_single(const BinaryForm& f, bool decomp) {
  const int r = waring_rank(f);
  const auto phi = minimal_squarefree_apolar(f);
  Output o;
  std::ostringstream text;
  o.json["field"] = f.field().name();
  o.json["form"] = form_to_json(f);
  o.json["text"] = to_string(f);
  o.json["rank"] = r;
  o.json["witness"] = dual_form_to_json(phi);
  o.json["certified"] = certify_decomposition(f, phi);
  text << "form     " << to_string(f) << "\n"
       << "rank     " << r << "\n"
       << "witness  " << to_string(phi) << "\n";
  if (decomp) {
    const auto terms = decompose(f, phi);
    o.json["decomposition"] = terms_to_json(terms);
    o.json["reexpanded_equal"] = expand_terms(terms, f.field(), f.degree()) == f;
    text << "f =      " << terms_text(terms) << "\n";
  }
  o.text = text.str();
  return o;
}

Output waring_simultaneous(const std::vector<BinaryForm>& forms, bool decomp) {
  const int n = forms.front().degree();
  for (const auto& f : forms) {
    if (f.degree() != n) throw ValidationError("simultaneous forms must have the same degree");
  }
  for (int e = 1; e <= n; ++e) {
    const auto basis = simultaneous_apolar(forms, e);
    if (basis.empty()) continue;
    const auto phi = find_squarefree(basis);
    if (!phi) continue;
    Output o;
    std::ostringstream text;
    o.json["field"] = forms.front().field().name();
    o.json["forms"] = forms.size();
    o.json["n"] = n;
    o.json["degree"] = e;
    o.json["apolar_dimension"] = basis.size();
    o.json["witness"] = dual_form_to_json(*phi);
    text << forms.size() << " forms of degree " << n << "\n"
         << "common squarefree apolar form of degree " << e << " (apolar space dimension " << basis.size()
         << ")\nwitness  " << to_string(*phi) << "\n";
    if (decomp) {
      Json all = Json::array();
      for (std::size_t i = 0; i < forms.size(); ++i) {
        const auto terms = decompose(forms[i], *phi);
        all.push_back(terms_to_json(terms));
        text << "f" << i + 1 << " =     " << terms_text(terms) << "\n";
      }
      o.json["decompositions"] = std::move(all);
    }
    o.text = text.str();
    return o;
  }
  throw ComputationError("no common squarefree apolar form of degree <= " + std::to_string(n));
}

Output cmd_waring(const Session& s, const std::string& path, bool decomp) {
  const auto doc = read_json_file(path);
  const Field field = field_from_json(doc, s.field);
  if (doc.is_object() && doc.contains("forms")) {
    const auto& raw = doc.at("forms");
    if (!raw.is_array() || raw.empty()) throw UsageError("\"forms\" must be a non-empty array");
    std::vector<BinaryForm> forms;
    for (const auto& f : raw) forms.push_back(form_from_json(f, field));
    return waring_simultaneous(forms, decomp);
  }
  const auto& form = doc.is_object() && doc.contains("form") ? doc.at("form") : doc;
  return waring_single(form_from_json(form, field), decomp);
}

Output cmd_formulas(int n, int k, std::optional<int> rho, std::optional<int> delta) {
  std::vector<StratumSpec> specs;
  if (rho) specs.push_back({n, k, BundleKind::normal, *rho});
  if (delta) specs.push_back({n, k, BundleKind::tangent, *delta});
  if (specs.empty()) {
    if (k < 1 || k >= n - 2) {
      throw ValidationError("need 1 <= k < n-2, got n = " + std::to_string(n) + ", k = " + std::to_string(k));
    }
    for (const auto kind : {BundleKind::normal, BundleKind::tangent}) {
      const int top = kind == BundleKind::normal ? n - k - 2 : n - k - 1;
      for (int v = generic_value(kind, n, k); v <= top; ++v) specs.push_back({n, k, kind, v});
    }
  }
  Output o;
  std::ostringstream text;
  o.json["n"] = n;
  o.json["k"] = k;
  o.json["grassmannian_dim"] = grassmannian_dim(n, k);
  Json rows = Json::array();
  text << "n=" << n << " k=" << k << "  dim Gr = " << grassmannian_dim(n, k) << "\n"
       << std::left << std::setw(9) << "kind" << std::setw(10) << "value" << std::setw(22) << "splitting"
       << std::setw(7) << "codim" << std::setw(12) << "family_dim" << "constructible\n";
  for (const auto& spec : specs) {
    validate(spec);
    const auto g = generic_splitting(spec);
    const char* name = spec.kind == BundleKind::normal ? "rho" : "delta";
    Json row;
    row["kind"] = to_string(spec.kind);
    row[name] = spec.value;
    row["splitting"] = g.label();
    row["summands"] = g.summands;
    row["codim"] = stratum_codim(spec);
    row["family_dim"] = stratum_family_dim(spec);
    row["constructible"] = construction_bounds_hold(spec);
    row["invariants_ok"] = g.satisfies_invariants();
    rows.push_back(std::move(row));
    text << std::setw(9) << to_string(spec.kind) << std::setw(10) << (std::string(name) + "=" + std::to_string(spec.value))
         << std::setw(22) << g.label() << std::setw(7) << stratum_codim(spec) << std::setw(12)
         << stratum_family_dim(spec) << yes_no(construction_bounds_hold(spec)) << "\n";
  }
  o.json["rows"] = std::move(rows);
  o.text = text.str();
  return o;
}

void histogram_text(std::ostringstream& text, const char* name, const Json& side, int accepted) {
  text << name << ": expected " << side["expected"].get<std::string>() << ", modal "
       << side["modal"].get<std::string>() << " (" << side["modal_count"].get<int>() << "/" << accepted << ")\n";
  for (const auto& [label, count] : side["histogram"].items()) text << "  " << label << "  " << count.get<int>() << "\n";
}

Output cmd_survey(const Session& s, int n, int k) {
  const auto r = survey_generic(n, k, s.trials_or(1000), s.seed, s.field_or(Field::prime(kSurveyPrime)));
  Output o;
  o.json = survey_report_to_json(r);
  o.json["seed"] = s.seed;
  std::ostringstream text;
  text << "survey n=" << n << " k=" << k << " field=" << r.field.name() << " trials=" << r.trials
       << " seed=" << s.seed << "\n"
       << "accepted " << r.accepted << ", dependent " << r.dependent << ", non-ordinary " << r.non_ordinary
       << ", invariant violations " << r.invariant_violations << "\n";
  histogram_text(text, "normal", o.json["normal"], r.accepted);
  histogram_text(text, "tangent", o.json["tangent"], r.accepted);
  o.text = text.str();
  return o;
}

Output cmd_verify(const Session& s, const StratumSpec& spec) {
  const auto r = verify_equivalence(spec, s.trials_or(25), s.seed, s.field_or(Field::rationals()));
  Output o;
  o.json = stratum_report_to_json(r);
  o.json["seed"] = s.seed;
  std::ostringstream text;
  text << spec.to_string() << "  predicted " << r.predicted.label() << "  codim " << r.codim << "\n"
       << "agreements " << r.agreements << "/" << r.trials << ", quarantined " << r.quarantined_seeds.size()
       << ", rejected attempts " << r.rejected_attempt_seeds.size() << "\n";
  for (const auto& [label, count] : r.histogram) text << "  " << label << "  " << count << "\n";
  o.text = text.str();
  return o;
}

void emit_error(std::ostream& err, ErrorKind kind, const std::string& message, const Json* details = nullptr) {
  Json e;
  e["kind"] = to_string(kind);
  e["exit_code"] = exit_code(kind);
  e["message"] = message;
  if (details) {
    for (const auto& [key, value] : details->items()) e[key] = value;
  }
  Json j;
  j["error"] = std::move(e);
  err << j.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Splitting types of normal and restricted tangent bundles of projected rational normal curves",
               "normbundle"};
  app.require_subcommand(1);
  app.fallthrough();

  Session session;
  std::string field_text;
  app.add_option("--field", field_text, "Q or Fp:<prime>");
  app.add_option("--seed", session.seed, "base RNG seed (default 1)");
  app.add_option("--trials", session.trials, "trial count")->check(CLI::PositiveNumber);
  app.add_flag("--json", session.json, "JSON output");
  app.add_option("--out", session.out_path, "write the output to this file");

  std::string path;
  int n = 0, k = 0;
  std::optional<int> rho, delta;
  std::string kind_text;
  bool want_rank = false, want_decompose = false, want_all = false;

  auto* analyze = app.add_subcommand("analyze", "splitting types of a center file");
  analyze->add_option("center", path, "center JSON file")->required();

  auto add_nk = [&](CLI::App* sub) {
    sub->add_option("--n", n, "degree of the rational normal curve")->required();
    sub->add_option("--k", k, "number of points spanning the center")->required();
  };
  auto add_stratum = [&](CLI::App* sub) {
    add_nk(sub);
    auto* r = sub->add_option("--rho", rho, "multiplicity of O(n+2) in the normal bundle");
    auto* d = sub->add_option("--delta", delta, "multiplicity of O(n+1) in the tangent bundle");
    r->excludes(d);
    return std::pair{r, d};
  };

  auto* construct = app.add_subcommand("construct", "build a center in a prescribed stratum");
  add_stratum(construct);
  construct->add_option("--kind", kind_text, "normal or tangent");

  auto* verify = app.add_subcommand("verify", "construct many centers and compare with the generic splitting");
  add_stratum(verify);
  verify->add_option("--kind", kind_text, "normal or tangent");

  auto* waring = app.add_subcommand("waring", "Waring rank and decomposition of a form file");
  waring->add_option("file", path, "form JSON file, or {\"forms\": [...]}")->required();
  auto* f_rank = waring->add_flag("--rank", want_rank, "rank and squarefree witness only");
  auto* f_dec = waring->add_flag("--decompose", want_decompose, "explicit decomposition");
  f_rank->excludes(f_dec);

  auto* formulas = app.add_subcommand("formulas", "stratum formulas");
  auto [f_rho, f_delta] = add_stratum(formulas);
  auto* f_all = formulas->add_flag("--all", want_all, "all valid strata (default)");
  f_all->excludes(f_rho)->excludes(f_delta);

  auto* survey = app.add_subcommand("survey", "splitting types of uniformly random centers");
  add_nk(survey);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, ErrorKind::usage, e.what());
    return exit_code(ErrorKind::usage);
  }

  try {
    if (!field_text.empty()) session.field = Field::parse(field_text);
    Output o;
    if (analyze->parsed()) {
      o = cmd_analyze(session, path);
    } else if (construct->parsed()) {
      o = cmd_construct(session, spec_from_flags(n, k, rho, delta, kind_text));
    } else if (verify->parsed()) {
      o = cmd_verify(session, spec_from_flags(n, k, rho, delta, kind_text));
    } else if (waring->parsed()) {
      o = cmd_waring(session, path, want_decompose);
    } else if (formulas->parsed()) {
      o = cmd_formulas(n, k, rho, delta);
    } else {
      o = cmd_survey(session, n, k);
    }
    const std::string rendered = session.json ? o.json.dump(2) + "\n" : o.text;
    if (session.out_path.empty()) {
      out << rendered;
    } else {
      std::ofstream file(session.out_path, std::ios::binary);
      if (!file) throw UsageError("cannot write " + session.out_path);
      file << rendered;
    }
    return 0;
  } catch (const DetailedError& e) {
    emit_error(err, e.kind(), e.what(), &e.details());
    return exit_code(e.kind());
  } catch (const Error& e) {
    emit_error(err, e.kind(), e.what());
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    emit_error(err, ErrorKind::usage, std::string("malformed JSON input: ") + e.what());
    return exit_code(ErrorKind::usage);
  }
}

}  // namespace nb
