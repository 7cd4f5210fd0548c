#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "normbundle/binary_forms.hpp"
#include "normbundle/bundle.hpp"

namespace nb {

/// A stratum of centers: `value` is rho (normal kind) or delta (tangent kind),
/// the multiplicity of the minimal summand n+2 (resp. n+1).
struct StratumSpec {
  int n;
  int k;
  BundleKind kind;
  int value;

  std::string to_string() const;
  friend bool operator==(const StratumSpec&, const StratumSpec&) = default;
};

/// rho^{n,k}_r: r when 3k >= n-1 and 1 <= r < n-k; n-3k+r-1 when 3k < n-1 and 0 <= r <= 2k-1.
int rho_value(int n, int k, int r);
/// delta^{n,k}_r read literally: r when 2k <= n and 1 <= 2r <= k-1; n-3k+r-1 when
/// 2k > n and r <= n-k-1. The ranges are not consistent with the tangent strata
/// that occur in practice, so StratumSpec takes delta directly.
int delta_value(int n, int k, int r);

/// max(0, n-1-3k) for normal, max(0, n-2k) for tangent.
int generic_value(BundleKind kind, int n, int k);

/// Throws ValidationError unless 1 <= k < n-2 and generic_value <= value <= n-k-2 (normal) / n-k-1 (tangent).
void validate(const StratumSpec& spec);
/// value <= (n-k+1)/3 and k <= n+1-3 value (normal); value <= (n-k+1)/2 and k <= n+1-2 value (tangent).
bool construction_bounds_hold(const StratumSpec& spec);

/// {(n+2)^rho, (n+2+B)^{A-2k+BA}, (n+3+B)^{2k-BA}} with A = n-1-rho-k, B = floor(2k/A);
/// tangent: {(n+1)^delta, (n+1+B)^{A-k+BA}, (n+2+B)^{k-BA}} with A = n-delta-k, B = floor(k/A).
SplittingType generic_splitting(const StratumSpec& spec);

/// rho(3k-n+1+rho) or delta(2k-n+delta).
int stratum_codim(const StratumSpec& spec);

/// min{(s+1)(n-s), (s+1)(r-s)+r+1} for 0 <= s <= r <= n.
int expected_dim_secant_grassmannian(int n, int s, int r);

/// dim Gr(P^{k-1}, P^n) = k(n+1-k).
int grassmannian_dim(int n, int k);
/// Dimension of the family of (Phi, L): rho(n-1-rho) + k(n-3rho+1-k) for normal,
/// delta(n-delta) + k(n-2delta+1-k) for tangent.
int stratum_family_dim(const StratumSpec& spec);

/// Lines in 3-secant planes to C_5: a codimension-3 stratum of Gr(P^1, P^5) with
/// bidegree (1, 6). Recorded, not recomputed.
inline constexpr int kQuinticStratumCodim = 3;
inline constexpr int kQuinticStratumBidegree[2] = {1, 6};

inline constexpr int kConstructionRetries = 32;

struct SpecialCenter {
  ProjectionCenter center;
  /// Squarefree generators of degree n-2 (normal) or n-1 (tangent).
  std::vector<DualForm> generators;
  /// Seed of the attempt that succeeded.
  std::uint64_t seed;
  /// Seeds of discarded attempts, in order.
  std::vector<std::uint64_t> rejected_seeds;
  /// One reason per rejected seed.
  std::vector<std::string> rejection_reasons;
};

/// Samples `value` squarefree dual forms, takes k random points of their common
/// apolar space and keeps the first attempt whose center is ordinary with
/// matrix rank n-1-rho (normal) or n-delta (tangent). Attempt 0 uses `seed`,
/// attempt i > 0 uses derive_seed(seed, i).
SpecialCenter construct_special_center(const StratumSpec& spec, std::uint64_t seed,
                                       Field field = Field::rationals());

struct TrialOutcome {
  std::uint64_t seed;
  SplittingType computed;
  std::size_t matrix_rank;
  bool agreement;
  /// For disagreements: invariants hold and the computed ladder dominates the predicted one.
  bool invariants_ok;
  bool semicontinuous;
};

struct StratumReport {
  StratumSpec spec;
  SplittingType predicted;
  int codim;
  int trials;
  int agreements;
  std::map<std::string, int> histogram;
  std::vector<std::uint64_t> quarantined_seeds;
  std::vector<std::uint64_t> rejected_attempt_seeds;
  std::vector<TrialOutcome> outcomes;
};

/// Trial i constructs a center from derive_seed(seed, i) and compares its
/// splitting with generic_splitting(spec).
StratumReport verify_equivalence(const StratumSpec& spec, int trials, std::uint64_t seed,
                                 Field field = Field::rationals());

struct SurveyReport {
  int n;
  int k;
  Field field;
  int trials;
  /// Samples that were independent and ordinary.
  int accepted;
  int dependent;
  int non_ordinary;
  int invariant_violations;
  std::map<std::string, int> normal_histogram;
  std::map<std::string, int> tangent_histogram;
  SplittingType expected_normal;
  SplittingType expected_tangent;
};

/// Uniform random centers over `field`; trial i uses derive_seed(seed, i).
SurveyReport survey_generic(int n, int k, int trials, std::uint64_t seed, Field field = Field::prime(kSurveyPrime));

/// Most frequent key; ties go to the smallest key.
std::string modal_type(const std::map<std::string, int>& histogram);

}  // namespace nb
