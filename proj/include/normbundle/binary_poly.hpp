#pragma once

#include <string>
#include <vector>

#include "normbundle/scalar.hpp"

namespace nb {

/// A point (s : t) of P^1, normalized to (x : 1) or (1 : 0).
struct ProjectivePoint {
  Scalar s;
  Scalar t;

  static ProjectivePoint normalized(const Scalar& s, const Scalar& t);
  bool at_infinity() const { return t.is_zero(); }
  std::string to_string() const;
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

/// Deterministic ordering: (1 : 0) first, then affine points by canonical_less.
bool point_less(const ProjectivePoint& a, const ProjectivePoint& b);

/// Homogeneous polynomial of nominal degree d in (s, t); coefficient i
/// multiplies s^{d-i} t^i. Zero coefficients at either end are factors of t or s.
class BinaryPoly {
 public:
  BinaryPoly(Field field, int degree);
  BinaryPoly(int degree, Vector coeffs);
  static BinaryPoly from_ints(Field field, const std::vector<long>& coeffs);
  static BinaryPoly constant(const Scalar& c);
  /// c * s^{s_power} t^{t_power}
  static BinaryPoly monomial(const Scalar& c, int s_power, int t_power);
  /// The linear form vanishing at p: t_p * s - s_p * t.
  static BinaryPoly vanishing_at(const ProjectivePoint& p);

  int degree() const noexcept { return degree_; }
  const Field& field() const noexcept { return field_; }
  const Scalar& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  const Vector& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const;

  BinaryPoly derivative_s() const;
  BinaryPoly derivative_t() const;
  Scalar evaluate(const Scalar& s, const Scalar& t) const;
  Scalar evaluate(const ProjectivePoint& p) const { return evaluate(p.s, p.t); }

  /// Scales so the first nonzero coefficient is 1; zero stays zero.
  BinaryPoly monic() const;
  BinaryPoly scaled(const Scalar& c) const;

  std::string to_string() const;

  friend BinaryPoly operator+(const BinaryPoly& a, const BinaryPoly& b);
  friend BinaryPoly operator-(const BinaryPoly& a, const BinaryPoly& b);
  friend BinaryPoly operator*(const BinaryPoly& a, const BinaryPoly& b);
  friend bool operator==(const BinaryPoly& a, const BinaryPoly& b);

 private:
  Field field_;
  int degree_;
  Vector coeffs_;
};

/// Monic gcd of two homogeneous forms. Powers of s and t are split off
/// first; the remaining cores are compared by Euclid on t = 1.
/// Throws ComputationError when both inputs are zero.
BinaryPoly poly_gcd(const BinaryPoly& a, const BinaryPoly& b);

/// Exact division; throws ComputationError when b does not divide a.
BinaryPoly poly_divide(const BinaryPoly& a, const BinaryPoly& b);

/// True iff the form has no repeated projective root (gcd with both partials
/// is constant). Throws ComputationError on the zero form.
bool is_squarefree(const BinaryPoly& a);

/// Distinct projective roots lying in the coefficient field, sorted by
/// point_less. Over F_p this uses equal-degree splitting of gcd(f, x^p - x);
/// over Q the rational root theorem. Throws on the zero form.
std::vector<ProjectivePoint> roots_in_field(const BinaryPoly& a);

}  // namespace nb
