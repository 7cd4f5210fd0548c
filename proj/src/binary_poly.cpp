#include "normbundle/binary_poly.hpp"

#include <algorithm>
#include <sstream>

#include "normbundle/errors.hpp"

namespace nb {

ProjectivePoint ProjectivePoint::normalized(const Scalar& s, const Scalar& t) {
  if (!t.is_zero()) return ProjectivePoint{s / t, Scalar(t.field(), 1)};
  if (!s.is_zero()) return ProjectivePoint{Scalar(s.field(), 1), Scalar(s.field())};
  throw ValidationError("(0 : 0) is not a point of P^1");
}

std::string ProjectivePoint::to_string() const { return "(" + s.to_string() + ":" + t.to_string() + ")"; }

bool point_less(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.at_infinity() != b.at_infinity()) return a.at_infinity();
  if (a.at_infinity()) return false;
  return canonical_less(a.s, b.s);
}

BinaryPoly::BinaryPoly(Field field, int degree)
    : field_(field), degree_(degree), coeffs_(static_cast<std::size_t>(degree + 1), Scalar(field)) {
  if (degree < 0) throw ValidationError("negative polynomial degree");
}

BinaryPoly::BinaryPoly(int degree, Vector coeffs)
    : field_(coeffs.empty() ? Field::rationals() : coeffs.front().field()), degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree < 0 || coeffs_.size() != static_cast<std::size_t>(degree + 1)) {
    throw ValidationError("binary polynomial of degree " + std::to_string(degree) + " needs " +
                          std::to_string(degree + 1) + " coefficients");
  }
  for (const auto& c : coeffs_)
    if (!(c.field() == field_)) throw ValidationError("binary polynomial with mixed fields");
}

BinaryPoly BinaryPoly::from_ints(Field field, const std::vector<long>& coeffs) {
  Vector v;
  for (long c : coeffs) v.emplace_back(field, c);
  return BinaryPoly(static_cast<int>(coeffs.size()) - 1, std::move(v));
}

BinaryPoly BinaryPoly::constant(const Scalar& c) { return BinaryPoly(0, Vector{c}); }

BinaryPoly BinaryPoly::monomial(const Scalar& c, int s_power, int t_power) {
  BinaryPoly p(c.field(), s_power + t_power);
  p.coeffs_[static_cast<std::size_t>(t_power)] = c;
  return p;
}

BinaryPoly BinaryPoly::vanishing_at(const ProjectivePoint& p) { return BinaryPoly(1, Vector{p.t, -p.s}); }

bool BinaryPoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_zero(); });
}

BinaryPoly BinaryPoly::derivative_s() const {
  if (degree_ == 0) return BinaryPoly(field_, 0);
  BinaryPoly d(field_, degree_ - 1);
  for (int i = 0; i < degree_; ++i) d.coeffs_[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)] * Scalar(field_, degree_ - i);
  return d;
}

BinaryPoly BinaryPoly::derivative_t() const {
  if (degree_ == 0) return BinaryPoly(field_, 0);
  BinaryPoly d(field_, degree_ - 1);
  for (int i = 1; i <= degree_; ++i) d.coeffs_[static_cast<std::size_t>(i - 1)] = coeffs_[static_cast<std::size_t>(i)] * Scalar(field_, i);
  return d;
}

Scalar BinaryPoly::evaluate(const Scalar& s, const Scalar& t) const {
  // Horner in the ratio, kept homogeneous: sum c_i s^{d-i} t^i.
  Scalar acc(field_);
  Scalar t_power(field_, 1);
  std::vector<Scalar> s_powers(static_cast<std::size_t>(degree_ + 1), Scalar(field_, 1));
  for (int i = 1; i <= degree_; ++i) s_powers[static_cast<std::size_t>(i)] = s_powers[static_cast<std::size_t>(i - 1)] * s;
  for (int i = 0; i <= degree_; ++i) {
    const auto& c = coeffs_[static_cast<std::size_t>(i)];
    if (!c.is_zero()) acc += c * s_powers[static_cast<std::size_t>(degree_ - i)] * t_power;
    t_power *= t;
  }
  return acc;
}

BinaryPoly BinaryPoly::monic() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return scaled(c.inverse());
  }
  return *this;
}

BinaryPoly BinaryPoly::scaled(const Scalar& c) const {
  BinaryPoly r(*this);
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

std::string BinaryPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= degree_; ++i) {
    const auto& c = coeffs_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << c;
    if (degree_ - i > 0) os << "*s" << (degree_ - i > 1 ? "^" + std::to_string(degree_ - i) : "");
    if (i > 0) os << "*t" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return first ? "0" : os.str();
}

BinaryPoly operator+(const BinaryPoly& a, const BinaryPoly& b) {
  if (a.degree_ != b.degree_) throw ComputationError("adding binary forms of different degrees");
  BinaryPoly r(a);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
  return r;
}

BinaryPoly operator-(const BinaryPoly& a, const BinaryPoly& b) {
  if (a.degree_ != b.degree_) throw ComputationError("subtracting binary forms of different degrees");
  BinaryPoly r(a);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
  return r;
}

BinaryPoly operator*(const BinaryPoly& a, const BinaryPoly& b) {
  BinaryPoly r(a.field_, a.degree_ + b.degree_);
  for (int i = 0; i <= a.degree_; ++i) {
    const auto& x = a.coeffs_[static_cast<std::size_t>(i)];
    if (x.is_zero()) continue;
    for (int j = 0; j <= b.degree_; ++j) {
      const auto& y = b.coeffs_[static_cast<std::size_t>(j)];
      if (!y.is_zero()) r.coeffs_[static_cast<std::size_t>(i + j)] += x * y;
    }
  }
  return r;
}

bool operator==(const BinaryPoly& a, const BinaryPoly& b) {
  return a.field_ == b.field_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
}

namespace {

// Univariate helpers; vectors are low-degree-first and trimmed (empty = zero).
using Uni = Vector;

void trim(Uni& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

int uni_degree(const Uni& u) { return static_cast<int>(u.size()) - 1; }

Uni uni_monic(Uni u) {
  trim(u);
  if (u.empty()) return u;
  const Scalar inv = u.back().inverse();
  for (auto& c : u) c *= inv;
  return u;
}

/// Remainder of a by b (b nonzero); quotient optionally returned.
Uni uni_rem(Uni a, const Uni& b, Uni* quotient = nullptr) {
  trim(a);
  const Field field = b.front().field();
  const int db = uni_degree(b);
  const Scalar lead_inv = b.back().inverse();
  Uni q;
  if (quotient) q.assign(static_cast<std::size_t>(std::max(0, uni_degree(a) - db + 1)), Scalar(field));
  while (uni_degree(a) >= db) {
    const int shift = uni_degree(a) - db;
    const Scalar f = a.back() * lead_inv;
    if (quotient) q[static_cast<std::size_t>(shift)] = f;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(shift + i)] -= f * b[static_cast<std::size_t>(i)];
    a.pop_back();
    trim(a);
  }
  if (quotient) {
    trim(q);
    *quotient = std::move(q);
  }
  return a;
}

Uni uni_gcd(Uni a, Uni b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Uni r = uni_rem(a, b);
    a = std::move(b);
    b = uni_monic(std::move(r));
  }
  return uni_monic(std::move(a));
}

Uni uni_mul_mod(const Uni& a, const Uni& b, const Uni& m) {
  if (a.empty() || b.empty()) return {};
  const Field field = a.front().field();
  Uni r(a.size() + b.size() - 1, Scalar(field));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return uni_rem(std::move(r), m);
}

Uni uni_pow_mod(Uni base, std::uint64_t e, const Uni& m) {
  const Field field = m.front().field();
  Uni result{Scalar(field, 1)};
  result = uni_rem(result, m);
  base = uni_rem(base, m);
  while (e > 0) {
    if (e & 1) result = uni_mul_mod(result, base, m);
    base = uni_mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

Uni uni_sub(Uni a, const Uni& b) {
  if (a.size() < b.size()) a.resize(b.size(), Scalar(b.front().field()));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Homogeneous form split as s^{s_power} t^{t_power} core(s, t), where the
/// core has nonzero s^{d'} and t^{d'} coefficients; `affine` is core(x, 1).
struct Stripped {
  int s_power = 0;
  int t_power = 0;
  Uni affine;
};

Stripped strip(const BinaryPoly& p) {
  const int d = p.degree();
  int first = 0;
  while (first <= d && p.coeff(first).is_zero()) ++first;
  int last = d;
  while (last >= 0 && p.coeff(last).is_zero()) --last;
  Stripped out;
  out.t_power = first;
  out.s_power = d - last;
  const int core_degree = last - first;
  // core coefficient j multiplies s^{core_degree - j} t^j, i.e. x^{core_degree - j}.
  out.affine.assign(static_cast<std::size_t>(core_degree + 1), Scalar(p.field()));
  for (int j = 0; j <= core_degree; ++j) out.affine[static_cast<std::size_t>(core_degree - j)] = p.coeff(first + j);
  return out;
}

BinaryPoly rehomogenize(const Uni& u, int s_power, int t_power, Field field) {
  const int g = uni_degree(u);
  BinaryPoly out(field, g + s_power + t_power);
  Vector coeffs(static_cast<std::size_t>(out.degree() + 1), Scalar(field));
  for (int i = 0; i <= g; ++i) coeffs[static_cast<std::size_t>(t_power + i)] = u[static_cast<std::size_t>(g - i)];
  return BinaryPoly(out.degree(), std::move(coeffs));
}

/// Roots of a monic univariate polynomial that splits into distinct linear
/// factors over F_p.
void split_linear_factors(const Uni& g, std::uint64_t p, std::vector<Scalar>& roots) {
  const int d = uni_degree(g);
  if (d <= 0) return;
  const Field field = g.front().field();
  if (d == 1) {
    roots.push_back(-g[0] / g[1]);
    return;
  }
  for (std::uint64_t a = 0;; ++a) {
    Uni shifted{Scalar::from_residue(field, a % p), Scalar(field, 1)};
    Uni w = uni_pow_mod(shifted, (p - 1) / 2, g);
    Uni one{Scalar(field, 1)};
    Uni factor = uni_gcd(g, uni_sub(w, one));
    const int df = uni_degree(factor);
    if (df > 0 && df < d) {
      Uni cofactor;
      uni_rem(g, factor, &cofactor);
      split_linear_factors(factor, p, roots);
      split_linear_factors(uni_monic(cofactor), p, roots);
      return;
    }
    if (a > 4096) throw ComputationError("equal-degree splitting did not converge");
  }
}

std::vector<Scalar> affine_roots_modp(const Uni& u) {
  const Field field = u.front().field();
  const std::uint64_t p = field.characteristic();
  Uni monic = uni_monic(u);
  if (uni_degree(monic) < 1) return {};
  Uni x{Scalar(field), Scalar(field, 1)};
  Uni xp = uni_pow_mod(x, p, monic);
  Uni linear_part = uni_gcd(monic, uni_sub(xp, x));
  std::vector<Scalar> roots;
  split_linear_factors(linear_part, p, roots);
  return roots;
}

std::vector<mpz_class> divisors_of(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, int>> factors;
  constexpr unsigned long kTrialLimit = 1UL << 20;
  for (unsigned long q = 2; q <= kTrialLimit && mpz_class(q) * q <= n; ++q) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
        ++e;
      }
      factors.emplace_back(mpz_class(q), e);
    }
  }
  if (n > 1) {
    if (n > mpz_class(kTrialLimit) * kTrialLimit && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) {
      throw ComputationError("rational root search cannot factor coefficient " + n.get_str() +
                             "; use certify-only mode");
    }
    factors.emplace_back(n, 1);
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [prime, e] : factors) {
    const std::size_t count = divs.size();
    mpz_class power = 1;
    for (int k = 1; k <= e; ++k) {
      power *= prime;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * power);
    }
  }
  return divs;
}

std::vector<Scalar> affine_roots_rational(const Uni& u) {
  const Field field = u.front().field();
  const int m = uni_degree(u);
  if (m < 1) return {};
  mpz_class lcm = 1;
  for (const auto& c : u) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : u) ints.push_back(c.rational().get_num() * (lcm / c.rational().get_den()));
  const auto numerators = divisors_of(ints.front());
  const auto denominators = divisors_of(ints.back());
  std::vector<Scalar> roots;
  for (const auto& num : numerators) {
    for (const auto& den : denominators) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      if (g != 1) continue;
      for (int sign : {1, -1}) {
        const mpz_class x = sign * num;
        // sum c_i x^i den^{m-i}
        mpz_class acc = 0, xp = 1;
        std::vector<mpz_class> den_pows(static_cast<std::size_t>(m + 1), 1);
        for (int i = 1; i <= m; ++i) den_pows[static_cast<std::size_t>(i)] = den_pows[static_cast<std::size_t>(i - 1)] * den;
        for (int i = 0; i <= m; ++i) {
          acc += ints[static_cast<std::size_t>(i)] * xp * den_pows[static_cast<std::size_t>(m - i)];
          xp *= x;
        }
        if (acc == 0) roots.push_back(Scalar::from_rational(field, mpq_class(x, den)));
      }
    }
  }
  return roots;
}

}  // namespace

BinaryPoly poly_gcd(const BinaryPoly& a, const BinaryPoly& b) {
  if (!(a.field() == b.field())) throw ComputationError("gcd of forms over different fields");
  const bool a_zero = a.is_zero();
  const bool b_zero = b.is_zero();
  if (a_zero && b_zero) throw ComputationError("gcd(0, 0) is undefined");
  if (a_zero) return b.monic();
  if (b_zero) return a.monic();
  const auto sa = strip(a);
  const auto sb = strip(b);
  Uni g = uni_gcd(sa.affine, sb.affine);
  return rehomogenize(g, std::min(sa.s_power, sb.s_power), std::min(sa.t_power, sb.t_power), a.field()).monic();
}

BinaryPoly poly_divide(const BinaryPoly& a, const BinaryPoly& b) {
  if (b.is_zero()) throw ComputationError("division by the zero form");
  if (b.degree() > a.degree()) throw ComputationError("divisor degree exceeds dividend degree");
  if (a.is_zero()) return BinaryPoly(a.field(), a.degree() - b.degree());
  const auto sa = strip(a);
  const auto sb = strip(b);
  if (sb.s_power > sa.s_power || sb.t_power > sa.t_power) throw ComputationError("inexact binary form division");
  Uni q;
  Uni r = uni_rem(sa.affine, sb.affine, &q);
  if (!r.empty()) throw ComputationError("inexact binary form division");
  return rehomogenize(q, sa.s_power - sb.s_power, sa.t_power - sb.t_power, a.field());
}

bool is_squarefree(const BinaryPoly& a) {
  if (a.is_zero()) throw ComputationError("squarefree test of the zero form");
  if (a.degree() <= 1) return true;
  const BinaryPoly g = poly_gcd(poly_gcd(a, a.derivative_s()), a.derivative_t());
  return g.degree() == 0;
}

std::vector<ProjectivePoint> roots_in_field(const BinaryPoly& a) {
  if (a.is_zero()) throw ComputationError("roots of the zero form");
  const Field field = a.field();
  const auto st = strip(a);
  std::vector<ProjectivePoint> out;
  if (st.t_power > 0) out.push_back(ProjectivePoint{Scalar(field, 1), Scalar(field)});
  if (st.s_power > 0) out.push_back(ProjectivePoint{Scalar(field), Scalar(field, 1)});
  const auto affine = field.is_rational() ? affine_roots_rational(st.affine) : affine_roots_modp(st.affine);
  for (const auto& x : affine) out.push_back(ProjectivePoint{x, Scalar(field, 1)});
  std::sort(out.begin(), out.end(), point_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace nb
