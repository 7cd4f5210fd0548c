#include "normbundle/strata.hpp"

#include <algorithm>

#include "normbundle/errors.hpp"
#include "normbundle/random.hpp"

namespace nb {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

/// Squarefree forms whose roots are pairwise distinct across all of them.
std::vector<DualForm> random_squarefree_duals(Rng& rng, Field field, int degree, int count) {
  std::vector<ProjectivePoint> roots;
  const long magnitude = std::max(6, 2 * degree * count);
  std::vector<DualForm> out;
  for (int j = 0; j < count; ++j) {
    BinaryPoly prod = BinaryPoly::constant(Scalar(field, 1));
    for (int placed = 0; placed < degree;) {
      const auto p = ProjectivePoint::normalized(rng.scalar(field, magnitude), Scalar(field, 1));
      if (std::find(roots.begin(), roots.end(), p) != roots.end()) continue;
      roots.push_back(p);
      prod = prod * BinaryPoly::vanishing_at(p);
      ++placed;
    }
    out.push_back(DualForm::from_poly(prod));
  }
  return out;
}

/// Rows of the linear conditions phi o f = 0 on the coordinates of f.
void append_conditions(const DualForm& phi, int n, std::vector<Vector>& rows) {
  const int e = phi.degree();
  for (int i = 0; i <= n - e; ++i) {
    Vector r(idx(n + 1), Scalar(phi.field()));
    for (int j = 0; j <= e; ++j) r[idx(i + j)] = phi.coeff(j);
    rows.push_back(std::move(r));
  }
}

}  // namespace

std::string StratumSpec::to_string() const {
  return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " " + nb::to_string(kind) + " " +
         (kind == BundleKind::normal ? "rho=" : "delta=") + std::to_string(value);
}

int rho_value(int n, int k, int r) {
  if (3 * k >= n - 1) {
    if (r < 1 || r >= n - k) {
      throw ValidationError("rho: r = " + std::to_string(r) + " outside 1 <= r < n-k for 3k >= n-1");
    }
    return r;
  }
  if (r < 0 || r > 2 * k - 1) {
    throw ValidationError("rho: r = " + std::to_string(r) + " outside 0 <= r <= 2k-1 for 3k < n-1");
  }
  return n - 3 * k + r - 1;
}

int delta_value(int n, int k, int r) {
  if (2 * k <= n) {
    if (2 * r < 1 || 2 * r > k - 1) {
      throw ValidationError("delta: r = " + std::to_string(r) + " outside 1 <= 2r <= k-1 for 2k <= n");
    }
    return r;
  }
  if (r > n - k - 1) throw ValidationError("delta: r = " + std::to_string(r) + " exceeds n-k-1 for 2k > n");
  const int v = n - 3 * k + r - 1;
  if (v < 0) throw ValidationError("delta: value n-3k+r-1 = " + std::to_string(v) + " is negative");
  return v;
}

int generic_value(BundleKind kind, int n, int k) {
  return kind == BundleKind::normal ? std::max(0, n - 1 - 3 * k) : std::max(0, n - 2 * k);
}

void validate(const StratumSpec& s) {
  if (s.k < 1 || s.k >= s.n - 2) {
    throw ValidationError("need 1 <= k < n-2, got n=" + std::to_string(s.n) + " k=" + std::to_string(s.k));
  }
  const int lo = generic_value(s.kind, s.n, s.k);
  const int hi = s.kind == BundleKind::normal ? s.n - s.k - 2 : s.n - s.k - 1;
  if (s.value < lo || s.value > hi) {
    throw ValidationError(std::string(s.kind == BundleKind::normal ? "rho" : "delta") + " = " +
                          std::to_string(s.value) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] for n=" + std::to_string(s.n) + " k=" + std::to_string(s.k));
  }
}

bool construction_bounds_hold(const StratumSpec& s) {
  if (s.kind == BundleKind::normal) return 3 * s.value <= s.n - s.k + 1 && s.k <= s.n + 1 - 3 * s.value;
  return 2 * s.value <= s.n - s.k + 1 && s.k <= s.n + 1 - 2 * s.value;
}

SplittingType generic_splitting(const StratumSpec& s) {
  validate(s);
  const int n = s.n;
  const int k = s.k;
  std::vector<int> out(idx(s.value), ladder_base(s.kind, n));
  if (s.kind == BundleKind::normal) {
    const int a = n - 1 - s.value - k;
    if (a <= 0) throw ValidationError("A = n-1-rho-k is not positive");
    const int b = 2 * k / a;
    out.insert(out.end(), idx(a - 2 * k + b * a), n + 2 + b);
    out.insert(out.end(), idx(2 * k - b * a), n + 3 + b);
  } else {
    const int a = n - s.value - k;
    if (a <= 0) throw ValidationError("A = n-delta-k is not positive");
    const int b = k / a;
    out.insert(out.end(), idx(a - k + b * a), n + 1 + b);
    out.insert(out.end(), idx(k - b * a), n + 2 + b);
  }
  return make_splitting(s.kind, n, k, std::move(out));
}

int stratum_codim(const StratumSpec& s) {
  validate(s);
  if (s.kind == BundleKind::normal) return s.value * (3 * s.k - s.n + 1 + s.value);
  return s.value * (2 * s.k - s.n + s.value);
}

int expected_dim_secant_grassmannian(int n, int s, int r) {
  if (s < 0 || s > r || r > n) throw ValidationError("expected dimension needs 0 <= s <= r <= n");
  return std::min((s + 1) * (n - s), (s + 1) * (r - s) + r + 1);
}

int grassmannian_dim(int n, int k) { return k * (n + 1 - k); }

int stratum_family_dim(const StratumSpec& s) {
  const int v = s.value;
  if (s.kind == BundleKind::normal) return v * (s.n - 1 - v) + s.k * (s.n - 3 * v + 1 - s.k);
  return v * (s.n - v) + s.k * (s.n - 2 * v + 1 - s.k);
}

SpecialCenter construct_special_center(const StratumSpec& spec, std::uint64_t seed, Field field) {
  validate(spec);
  if (!construction_bounds_hold(spec)) {
    throw ValidationError("construction bounds fail for " + spec.to_string() +
                          (spec.kind == BundleKind::normal ? " (need 3 rho <= n-k+1 and k <= n+1-3 rho)"
                                                           : " (need 2 delta <= n-k+1 and k <= n+1-2 delta)"));
  }
  field.require_admissible(spec.n);
  const int n = spec.n;
  const int k = spec.k;
  const bool normal = spec.kind == BundleKind::normal;
  const int gen_degree = normal ? n - 2 : n - 1;
  const int per_generator = normal ? 3 : 2;
  const std::size_t target_rank = idx(normal ? n - 1 - spec.value : n - spec.value);

  std::vector<std::uint64_t> rejected;
  std::vector<std::string> reasons;
  for (int attempt = 0; attempt < kConstructionRetries; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt));
    Rng rng(s);
    auto reject = [&](std::string why) {
      rejected.push_back(s);
      reasons.push_back(std::move(why));
    };

    std::vector<DualForm> gens = random_squarefree_duals(rng, field, gen_degree, spec.value);
    std::vector<Vector> rows;
    for (const auto& g : gens) append_conditions(g, n, rows);
    const auto conditions = DenseMatrix::from_rows(field, rows, idx(n + 1));
    if (rank(conditions) != idx(per_generator * spec.value)) {
      reject("generators impose dependent conditions");
      continue;
    }
    const auto basis = kernel_basis(conditions);
    std::vector<BinaryForm> pts;
    for (int i = 0; i < k; ++i) {
      Vector a(idx(n + 1), Scalar(field));
      for (const auto& v : basis) {
        const Scalar c = rng.scalar(field, 5);
        for (std::size_t d = 0; d < a.size(); ++d) a[d] += c * v[d];
      }
      pts.emplace_back(n, std::move(a));
    }
    std::optional<ProjectionCenter> center;
    try {
      center.emplace(pts);
    } catch (const ValidationError&) {
      reject("sampled points are dependent");
      continue;
    }
    if (!ordinary_singularities(*center)) {
      reject("center is not ordinary");
      continue;
    }
    const std::size_t r = rank(normal ? normal_matrix(*center) : tangent_matrix(*center));
    if (r != target_rank) {
      reject("matrix rank " + std::to_string(r) + " instead of " + std::to_string(target_rank));
      continue;
    }
    return SpecialCenter{std::move(*center), std::move(gens), s, std::move(rejected), std::move(reasons)};
  }
  std::string msg = "construction of " + spec.to_string() + " failed after " + std::to_string(kConstructionRetries) +
                    " attempts from seed " + std::to_string(seed) + ":";
  for (std::size_t i = 0; i < rejected.size(); ++i) msg += " [" + std::to_string(rejected[i]) + ": " + reasons[i] + "]";
  throw ComputationError(msg);
}

StratumReport verify_equivalence(const StratumSpec& spec, int trials, std::uint64_t seed, Field field) {
  if (trials < 0) throw ValidationError("trial count must be non-negative");
  StratumReport report{spec, generic_splitting(spec), stratum_codim(spec), trials, 0, {}, {}, {}, {}};
  const int levels = saturation_level(spec.kind, spec.k) + 2;
  const auto predicted_ladder = ladder_from_splitting(report.predicted, levels);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    const SpecialCenter sc = construct_special_center(spec, trial_seed, field);
    for (auto r : sc.rejected_seeds) report.rejected_attempt_seeds.push_back(r);
    const SplittingReport sr = analyze_bundle(sc.center, spec.kind);
    TrialOutcome out{trial_seed, sr.splitting, sr.matrix_rank, sr.splitting == report.predicted, true, true};
    ++report.histogram[sr.splitting.label()];
    if (out.agreement) {
      ++report.agreements;
    } else {
      out.invariants_ok = sr.splitting.satisfies_invariants();
      const auto computed_ladder = ladder_from_splitting(sr.splitting, levels);
      for (int j = 0; j < levels; ++j)
        if (computed_ladder[idx(j)] < predicted_ladder[idx(j)]) out.semicontinuous = false;
      report.quarantined_seeds.push_back(trial_seed);
    }
    report.outcomes.push_back(std::move(out));
  }
  return report;
}

SurveyReport survey_generic(int n, int k, int trials, std::uint64_t seed, Field field) {
  if (k < 1 || k >= n - 2) throw ValidationError("survey needs 1 <= k < n-2");
  if (trials < 0) throw ValidationError("trial count must be non-negative");
  field.require_admissible(n);
  SurveyReport report{n,
                      k,
                      field,
                      trials,
                      0,
                      0,
                      0,
                      0,
                      {},
                      {},
                      generic_splitting({n, k, BundleKind::normal, generic_value(BundleKind::normal, n, k)}),
                      generic_splitting({n, k, BundleKind::tangent, generic_value(BundleKind::tangent, n, k)})};
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<BinaryForm> pts;
    for (int i = 0; i < k; ++i) {
      Vector a;
      for (int d = 0; d <= n; ++d) a.push_back(rng.scalar(field, 20));
      pts.emplace_back(n, std::move(a));
    }
    std::optional<ProjectionCenter> center;
    try {
      center.emplace(pts);
    } catch (const ValidationError&) {
      ++report.dependent;
      continue;
    }
    if (!ordinary_singularities(*center)) {
      ++report.non_ordinary;
      continue;
    }
    try {
      const auto normal = splitting_type(*center, BundleKind::normal);
      const auto tangent = splitting_type(*center, BundleKind::tangent);
      ++report.accepted;
      ++report.normal_histogram[normal.label()];
      ++report.tangent_histogram[tangent.label()];
    } catch (const ComputationError&) {
      ++report.invariant_violations;
    }
  }
  return report;
}

std::string modal_type(const std::map<std::string, int>& histogram) {
  std::string best;
  int count = -1;
  for (const auto& [key, c] : histogram)
    if (c > count) {
      best = key;
      count = c;
    }
  return best;
}

}  // namespace nb
