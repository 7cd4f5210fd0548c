#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace nb {

/// 2^62 - 57, the largest prime below 2^62.
inline constexpr std::uint64_t kDefaultPrime = 4611686018427387847ULL;
/// 2^31 - 1, used for fast Monte-Carlo surveys.
inline constexpr std::uint64_t kSurveyPrime = 2147483647ULL;

/// Either the rationals or a prime field F_p with 2 < p < 2^63.
class Field {
 public:
  static Field rationals() noexcept { return Field{0}; }
  static Field prime(std::uint64_t p);
  /// Accepts "Q" or "Fp:<prime>".
  static Field parse(std::string_view text);

  bool is_rational() const noexcept { return p_ == 0; }
  std::uint64_t characteristic() const noexcept { return p_; }
  std::string name() const;

  /// Throws ValidationError unless the field is safe for forms of degree n
  /// (characteristic zero or p > 2n).
  void require_admissible(int n) const;

  bool operator==(const Field&) const = default;

 private:
  explicit Field(std::uint64_t p) noexcept : p_(p) {}
  std::uint64_t p_;
};

bool is_prime_u64(std::uint64_t n) noexcept;

/// An exact element of a Field. Rationals are kept canonical by GMP;
/// prime-field elements are residues in [0, p).
class Scalar {
 public:
  explicit Scalar(Field field);
  Scalar(Field field, long value);

  static Scalar from_rational(Field field, const mpq_class& q);
  /// Wraps a residue already reduced into [0, p).
  static Scalar from_residue(Field field, std::uint64_t residue);
  /// Parses "a", "-a" or "a/b" (decimal integers); b must be invertible in the field.
  static Scalar parse(Field field, std::string_view text);

  const Field& field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Rationals print as "p/q" or "p"; residues print as their value in [0, p).
  std::string to_string() const;

  const mpq_class& rational() const;
  std::uint64_t residue() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Total order used only to make outputs deterministic (rationals by value,
  /// residues by representative).
  friend bool canonical_less(const Scalar& a, const Scalar& b);

 private:
  Scalar(Field field, std::uint64_t residue, int);
  void check_same_field(const Scalar& rhs) const;

  Field field_;
  std::variant<mpq_class, std::uint64_t> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

using Vector = std::vector<Scalar>;

/// Binomial coefficient as a field element.
Scalar binomial(Field field, int n, int k);

namespace modp {
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  return a >= b ? a - b : a + p - b;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) noexcept;
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
}  // namespace modp

}  // namespace nb
