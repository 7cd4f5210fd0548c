#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normbundle/binary_poly.hpp"
#include "normbundle/matrix.hpp"
#include "normbundle/scalar.hpp"

namespace nb {

/// A degree-n binary form in catalecticant coordinates:
///   f = sum_d C(n, d) a_d x0^{n-d} x1^d.
/// The same vector (a_0 : ... : a_n) is the form's point in P^n.
class BinaryForm {
 public:
  BinaryForm(int n, Vector coords);
  static BinaryForm zero(Field field, int n);
  /// From plain coefficients c_d of x0^{n-d} x1^d; divides by the binomials.
  static BinaryForm from_monomial(int n, const Vector& coeffs);
  static BinaryForm from_ints(Field field, const std::vector<long>& coords);

  int degree() const noexcept { return n_; }
  const Field& field() const noexcept { return field_; }
  const Scalar& coord(int d) const { return a_.at(static_cast<std::size_t>(d)); }
  const Vector& coords() const noexcept { return a_; }
  Vector monomial_coeffs() const;
  bool is_zero() const;

  /// f(alpha x0 + beta x1, gamma x0 + delta x1).
  BinaryForm substitute(const Scalar& alpha, const Scalar& beta, const Scalar& gamma, const Scalar& delta) const;

  BinaryForm scaled(const Scalar& c) const;
  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b);
  friend bool operator==(const BinaryForm& a, const BinaryForm& b);

 private:
  Field field_;
  int n_;
  Vector a_;
};

/// phi = sum_j b_j d0^{e-j} d1^j, stored with plain coefficients.
class DualForm {
 public:
  DualForm(int e, Vector coeffs);
  static DualForm from_ints(Field field, const std::vector<long>& coeffs);
  static DualForm from_poly(const BinaryPoly& p);
  /// The dual linear form of [a0 : a1], namely a1 d0 - a0 d1.
  static DualForm annihilator_of(const ProjectivePoint& p);

  int degree() const noexcept { return e_; }
  const Field& field() const noexcept { return field_; }
  const Scalar& coeff(int j) const { return b_.at(static_cast<std::size_t>(j)); }
  const Vector& coeffs() const noexcept { return b_; }
  bool is_zero() const;

  /// phi(p) = sum_j b_j a0^{e-j} a1^j.
  Scalar evaluate(const Scalar& a0, const Scalar& a1) const;
  /// The same coefficients read as a polynomial in (s, t) = (a0, a1); its
  /// roots are the points whose powers phi annihilates.
  BinaryPoly as_poly() const;

  friend DualForm operator*(const DualForm& a, const DualForm& b);
  friend bool operator==(const DualForm& a, const DualForm& b);

 private:
  Field field_;
  int e_;
  Vector b_;
};

/// (a0 x0 + a1 x1)^n; its catalecticant coordinates are a0^{n-d} a1^d.
struct LinearFormPower {
  Scalar a0;
  Scalar a1;
  int n;

  BinaryForm expand() const;
};

/// phi o f, a form of degree n - e with coordinates c_i = sum_j b_j a_{i+j}.
BinaryForm contract(const DualForm& phi, const BinaryForm& f);

/// The (e+1) x (n-e+1) Hankel matrix with entry (i, j) = a_{i+j}; 1 <= e <= n-1.
DenseMatrix catalecticant(const BinaryForm& f, int e);

/// Basis of the degree-e part of Ann(f), i.e. the kernel of Cat_f(n-e, e).
/// Accepts 1 <= e <= n so that top-degree apolar forms are reachable.
std::vector<DualForm> apolar_forms(const BinaryForm& f, int e);

/// Common apolar forms of degree e: kernel of the stacked Cat_{f_i}(n-e, e).
std::vector<DualForm> simultaneous_apolar(std::span<const BinaryForm> forms, int e);

/// Looks for a squarefree element of span(basis): the basis itself, all
/// pairwise sums, then 16 seeded random combinations. For a pencil (two
/// basis vectors of degree e) it then tests 2e - 1 distinct members, which
/// certifies that none is squarefree when all fail: the discriminant of the
/// pencil has degree 2e - 2 in the pencil parameter.
std::optional<DualForm> find_squarefree(const std::vector<DualForm>& basis, std::uint64_t seed = 0x5eedULL);

/// Sylvester's algorithm: minimal length of a decomposition f = sum c_j L_j^n.
int waring_rank(const BinaryForm& f);

/// Lowest-degree squarefree apolar form of f (always exists, degree <= n+1
/// for a nonzero form); the witness that certifies waring_rank.
DualForm minimal_squarefree_apolar(const BinaryForm& f);

struct WaringTerm {
  Scalar coefficient;
  LinearFormPower power;
};

/// Apolar and squarefree: a decomposition of length deg phi exists.
bool certify_decomposition(const BinaryForm& f, const DualForm& phi);

/// f = sum_j c_j L_j^n with L_j dual to the roots of phi. Throws
/// ValidationError if phi is not apolar or not squarefree, and
/// ComputationError if some root of phi lies outside the field.
std::vector<WaringTerm> decompose(const BinaryForm& f, const DualForm& phi);

/// Rebuilds sum c_j L_j^n.
BinaryForm expand_terms(const std::vector<WaringTerm>& terms, Field field, int n);

/// Membership in the closure sigma_s(C_n): rank Cat_f(s, n-s) <= s, and
/// always true once 2s >= n + 1.
bool ps_membership(const BinaryForm& f, int s);

std::string to_string(const DualForm& phi);
std::string to_string(const BinaryForm& f);

}  // namespace nb
