#include "normbundle/scalar.hpp"

#include <algorithm>
#include <ostream>

#include "normbundle/errors.hpp"

namespace nb {

namespace modp {

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) noexcept {
  std::uint64_t result = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) result = mul(result, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw ComputationError("division by zero in F_" + std::to_string(p));
  return pow(a, p - 2, p);
}

}  // namespace modp

bool is_prime_u64(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These witnesses are deterministic for all 64-bit inputs.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = modp::pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = modp::mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p <= 2 || p >= (1ULL << 63) || !is_prime_u64(p)) {
    throw ValidationError("not an admissible odd prime below 2^63: " + std::to_string(p));
  }
  return Field{p};
}

Field Field::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.starts_with("Fp:")) {
    auto digits = text.substr(3);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw UsageError("malformed field selector: " + std::string(text));
    }
    if (digits.size() > 19) throw UsageError("prime too large: " + std::string(text));
    return prime(std::stoull(std::string(digits)));
  }
  if (text == "Fp") return prime(kDefaultPrime);
  throw UsageError("unknown field selector '" + std::string(text) + "' (expected Q or Fp:<prime>)");
}

std::string Field::name() const {
  return is_rational() ? std::string("Q") : "Fp:" + std::to_string(p_);
}

void Field::require_admissible(int n) const {
  if (!is_rational() && p_ <= 2 * static_cast<std::uint64_t>(std::max(n, 1))) {
    throw ValidationError("prime " + std::to_string(p_) + " must exceed 2n = " + std::to_string(2 * n));
  }
}

Scalar::Scalar(Field field) : field_(field) {
  if (field_.is_rational()) {
    value_ = mpq_class(0);
  } else {
    value_ = std::uint64_t{0};
  }
}

Scalar::Scalar(Field field, long value) : field_(field) {
  if (field_.is_rational()) {
    value_ = mpq_class(value);
  } else {
    const auto p = field_.characteristic();
    const auto magnitude = static_cast<std::uint64_t>(value < 0 ? -(value + 1) + 1ULL : value) % p;
    value_ = value < 0 ? (magnitude == 0 ? 0 : p - magnitude) : magnitude;
  }
}

Scalar::Scalar(Field field, std::uint64_t residue, int) : field_(field), value_(residue) {}

namespace {

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "mpz_fdiv_ui needs 64-bit unsigned long");

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

}  // namespace

Scalar Scalar::from_rational(Field field, const mpq_class& q) {
  if (field.is_rational()) {
    Scalar s(field);
    s.value_ = q;
    return s;
  }
  const auto p = field.characteristic();
  const std::uint64_t num = reduce_mpz(q.get_num(), p);
  const std::uint64_t den = reduce_mpz(q.get_den(), p);
  if (den == 0) {
    throw ValidationError("denominator of " + q.get_str() + " vanishes in " + field.name());
  }
  return Scalar(field, modp::mul(num, modp::inv(den, p), p), 0);
}

Scalar Scalar::from_residue(Field field, std::uint64_t residue) {
  if (field.is_rational()) throw ComputationError("from_residue requires a prime field");
  return Scalar(field, residue % field.characteristic(), 0);
}

Scalar Scalar::parse(Field field, std::string_view text) {
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (!s.empty() && allow_sign && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw UsageError("malformed scalar '" + std::string(text) + "' (expected \"p/q\")");
  }
  std::string num_str(num);
  if (!num_str.empty() && num_str.front() == '+') num_str.erase(0, 1);
  mpz_class n(num_str, 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return from_rational(field, q);
}

bool Scalar::is_zero() const noexcept {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
  return std::get<std::uint64_t>(value_) == 0;
}

bool Scalar::is_one() const noexcept {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
  return std::get<std::uint64_t>(value_) == 1;
}

std::string Scalar::to_string() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
  return std::to_string(std::get<std::uint64_t>(value_));
}

const mpq_class& Scalar::rational() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw ComputationError("rational value requested from an element of " + field_.name());
}

std::uint64_t Scalar::residue() const {
  if (const auto* r = std::get_if<std::uint64_t>(&value_)) return *r;
  throw ComputationError("residue requested from a rational scalar");
}

void Scalar::check_same_field(const Scalar& rhs) const {
  if (!(field_ == rhs.field_)) {
    throw ComputationError("mixed-field arithmetic: " + field_.name() + " vs " + rhs.field_.name());
  }
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  if (auto* q = std::get_if<mpq_class>(&r.value_)) {
    *q = -*q;
  } else {
    auto& v = std::get<std::uint64_t>(r.value_);
    v = v == 0 ? 0 : field_.characteristic() - v;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q += std::get<mpq_class>(rhs.value_);
  } else {
    auto& v = std::get<std::uint64_t>(value_);
    v = modp::add(v, std::get<std::uint64_t>(rhs.value_), field_.characteristic());
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q -= std::get<mpq_class>(rhs.value_);
  } else {
    auto& v = std::get<std::uint64_t>(value_);
    v = modp::sub(v, std::get<std::uint64_t>(rhs.value_), field_.characteristic());
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q *= std::get<mpq_class>(rhs.value_);
  } else {
    auto& v = std::get<std::uint64_t>(value_);
    v = modp::mul(v, std::get<std::uint64_t>(rhs.value_), field_.characteristic());
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same_field(rhs);
  if (rhs.is_zero()) throw ComputationError("division by zero");
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q /= std::get<mpq_class>(rhs.value_);
  } else {
    auto& v = std::get<std::uint64_t>(value_);
    const auto p = field_.characteristic();
    v = modp::mul(v, modp::inv(std::get<std::uint64_t>(rhs.value_), p), p);
  }
  return *this;
}

Scalar Scalar::inverse() const {
  Scalar one(field_, 1);
  return one / *this;
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar result(field_, 1);
  Scalar base(*this);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

bool canonical_less(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  if (const auto* q = std::get_if<mpq_class>(&a.value_)) return *q < std::get<mpq_class>(b.value_);
  return std::get<std::uint64_t>(a.value_) < std::get<std::uint64_t>(b.value_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar binomial(Field field, int n, int k) {
  if (k < 0 || k > n) return Scalar(field);
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Scalar::from_rational(field, mpq_class(c));
}

}  // namespace nb
