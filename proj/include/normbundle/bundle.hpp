#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normbundle/binary_forms.hpp"
#include "normbundle/binary_poly.hpp"
#include "normbundle/matrix.hpp"

namespace nb {

enum class BundleKind { normal, tangent };

const char* to_string(BundleKind kind) noexcept;
BundleKind parse_bundle_kind(std::string_view text);

/// The span L of k independent points of P^n, given as degree-n forms.
class ProjectionCenter {
 public:
  /// Throws ValidationError unless the points share degree and field, are
  /// independent, the field is admissible, and k < n - 2.
  explicit ProjectionCenter(std::vector<BinaryForm> points);

  int n() const noexcept { return n_; }
  int k() const noexcept { return static_cast<int>(points_.size()); }
  const Field& field() const noexcept { return field_; }
  const std::vector<BinaryForm>& points() const noexcept { return points_; }

  /// k x (n+1), row i holding the coordinates of point i.
  DenseMatrix point_matrix() const;

 private:
  Field field_;
  int n_;
  std::vector<BinaryForm> points_;
};

/// A different spanning set of the same L: row i of the result is sum_j g(i, j) p_j.
ProjectionCenter change_basis(const ProjectionCenter& center, const DenseMatrix& g);

/// The center moved by the substitution x0 -> alpha x0 + beta x1, x1 -> gamma x0 + delta x1,
/// which preserves C_n.
ProjectionCenter reparametrize(const ProjectionCenter& center, const Scalar& alpha, const Scalar& beta,
                               const Scalar& gamma, const Scalar& delta);

/// Degrees of the line-bundle summands, kept sorted ascending.
struct SplittingType {
  BundleKind kind;
  int n;
  int k;
  std::vector<int> summands;

  int expected_rank() const noexcept;
  int expected_degree() const noexcept;
  int min_summand() const noexcept;
  int max_summand() const noexcept;
  /// Human-readable breaches of the rank, degree and bound invariants.
  std::vector<std::string> invariant_violations() const;
  bool satisfies_invariants() const { return invariant_violations().empty(); }
  /// "(7,11)"
  std::string label() const;

  friend bool operator==(const SplittingType&, const SplittingType&) = default;
};

SplittingType make_splitting(BundleKind kind, int n, int k, std::vector<int> summands);

/// h(j) for j = 0, 1, ...
struct TwistLadder {
  BundleKind kind;
  std::vector<std::size_t> h;
};

/// Twist at which the ladder must have saturated: 2k (normal) or k (tangent).
int saturation_level(BundleKind kind, int k) noexcept;
/// n + 2 (normal) or n + 1 (tangent).
int ladder_base(BundleKind kind, int n) noexcept;

/// The 3k x (n-1) matrix with rows (a_0..a_{n-2}), (-2a_1..-2a_{n-1}), (a_2..a_n) per point.
DenseMatrix normal_matrix(const ProjectionCenter& center);
/// The 2k x n matrix with rows (a_0..a_{n-1}), (-a_1..-a_n) per point.
DenseMatrix tangent_matrix(const ProjectionCenter& center);

/// Global sections at twist j of the presentation map. Normal kind: (j+3)k x (j+1)(n-1)
/// with column (i, m) carrying a_i t^2 - 2a_{i+1} ts + a_{i+2} s^2 times s^m t^{j-m}.
/// Tangent kind: (j+2)k x (j+1)n from a_i t - a_{i+1} s. Level 0 is normal_matrix / tangent_matrix.
DenseMatrix twist_matrix(const ProjectionCenter& center, BundleKind kind, int j);

/// Levels 0 .. saturation_level + extra_levels.
TwistLadder twist_ladder(const ProjectionCenter& center, BundleKind kind, int extra_levels = 1);

/// Monotonicity, convexity and saturation breaches of a ladder for the given (n, k).
std::vector<std::string> ladder_violations(const TwistLadder& ladder, int n, int k);

/// Differencing: d(j) = h(j) - h(j-1) counts summands of degree <= base + j.
SplittingType splitting_from_ladder(const TwistLadder& ladder, int n, int k);

/// h(j) = sum_i max(0, base + j - n_i + 1) for j = 0 .. levels-1.
std::vector<std::size_t> ladder_from_splitting(const SplittingType& splitting, int levels);

/// Process-wide tally of ladder invariant checks run by splitting_type.
struct LadderAudit {
  std::uint64_t checks;
  std::uint64_t violations;
};
LadderAudit ladder_audit() noexcept;
void reset_ladder_audit() noexcept;

struct ImmersionReport {
  bool immersive;
  /// gcd of the 2x2 minors of the Jacobian of the projected parametrization.
  BinaryPoly minor_gcd;
  /// Roots of minor_gcd lying in the field.
  std::vector<ProjectivePoint> cusps;
};

/// Rows span the functionals vanishing on L: the canonical kernel basis of the point matrix.
DenseMatrix quotient_matrix(const ProjectionCenter& center);
/// psi_m(s, t) = sum_d q(m, d) s^{n-d} t^d for each row of q.
std::vector<BinaryPoly> projected_parametrization(const DenseMatrix& q);
ImmersionReport immersion_report(const DenseMatrix& q);
ImmersionReport immersion_report(const ProjectionCenter& center);
bool ordinary_singularities(const ProjectionCenter& center);

/// k = 1: rank Cat_p(2, n-2) >= 3. k = 2: the 3x3 minors of Cat_{lambda f1 + mu f2}(2, n-2)
/// have constant gcd and the center is ordinary. nullopt for k >= 3.
std::optional<bool> smooth_image(const ProjectionCenter& center);

/// Throws ComputationError naming the cusp when the center is not ordinary,
/// and when the computed ladder breaks an invariant.
SplittingType splitting_type(const ProjectionCenter& center, BundleKind kind);

/// Splitting plus the data it was recovered from.
struct SplittingReport {
  SplittingType splitting;
  TwistLadder ladder;
  std::size_t matrix_rank;
};
SplittingReport analyze_bundle(const ProjectionCenter& center, BundleKind kind);

}  // namespace nb
