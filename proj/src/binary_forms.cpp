#include "normbundle/binary_forms.hpp"

#include <algorithm>
#include <sstream>

#include "normbundle/errors.hpp"
#include "normbundle/random.hpp"

namespace nb {

namespace {

void require_same_field(const Vector& v, const Field& field, const char* what) {
  for (const auto& c : v)
    if (!(c.field() == field)) throw ValidationError(std::string(what) + " with mixed fields");
}

/// Hankel block with `rows` = r + 1 rows and n - r + 1 columns, 0 <= r <= n.
DenseMatrix hankel(const BinaryForm& f, int r) {
  const int n = f.degree();
  DenseMatrix m(f.field(), static_cast<std::size_t>(r + 1), static_cast<std::size_t>(n - r + 1));
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= n - r; ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = f.coord(i + j);
  return m;
}

std::vector<DualForm> to_dual_forms(const std::vector<Vector>& kernel, int e) {
  std::vector<DualForm> out;
  out.reserve(kernel.size());
  for (const auto& v : kernel) out.emplace_back(e, v);
  return out;
}

}  // namespace

BinaryForm::BinaryForm(int n, Vector coords)
    : field_(coords.empty() ? Field::rationals() : coords.front().field()), n_(n), a_(std::move(coords)) {
  if (n < 0 || a_.size() != static_cast<std::size_t>(n + 1)) {
    throw ValidationError("binary form of degree " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                          " coordinates, got " + std::to_string(a_.size()));
  }
  require_same_field(a_, field_, "binary form");
}

BinaryForm BinaryForm::zero(Field field, int n) {
  return BinaryForm(n, Vector(static_cast<std::size_t>(n + 1), Scalar(field)));
}

BinaryForm BinaryForm::from_monomial(int n, const Vector& coeffs) {
  if (n < 0 || coeffs.size() != static_cast<std::size_t>(n + 1)) {
    throw ValidationError("monomial coefficient list has the wrong length");
  }
  const Field field = coeffs.front().field();
  Vector a;
  a.reserve(coeffs.size());
  for (int d = 0; d <= n; ++d) a.push_back(coeffs[static_cast<std::size_t>(d)] / binomial(field, n, d));
  return BinaryForm(n, std::move(a));
}

BinaryForm BinaryForm::from_ints(Field field, const std::vector<long>& coords) {
  Vector a;
  for (long c : coords) a.emplace_back(field, c);
  return BinaryForm(static_cast<int>(coords.size()) - 1, std::move(a));
}

Vector BinaryForm::monomial_coeffs() const {
  Vector c;
  c.reserve(a_.size());
  for (int d = 0; d <= n_; ++d) c.push_back(a_[static_cast<std::size_t>(d)] * binomial(field_, n_, d));
  return c;
}

bool BinaryForm::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& c) { return c.is_zero(); });
}

BinaryForm BinaryForm::substitute(const Scalar& alpha, const Scalar& beta, const Scalar& gamma,
                                  const Scalar& delta) const {
  // Monomial coefficient i of a BinaryPoly multiplies x0^{n-i} x1^i.
  const BinaryPoly first(1, Vector{alpha, beta});
  const BinaryPoly second(1, Vector{gamma, delta});
  std::vector<BinaryPoly> first_pows{BinaryPoly::constant(Scalar(field_, 1))};
  std::vector<BinaryPoly> second_pows{BinaryPoly::constant(Scalar(field_, 1))};
  for (int i = 1; i <= n_; ++i) {
    first_pows.push_back(first_pows.back() * first);
    second_pows.push_back(second_pows.back() * second);
  }
  const Vector c = monomial_coeffs();
  BinaryPoly total(field_, n_);
  for (int d = 0; d <= n_; ++d) {
    if (c[static_cast<std::size_t>(d)].is_zero()) continue;
    total = total + (first_pows[static_cast<std::size_t>(n_ - d)] * second_pows[static_cast<std::size_t>(d)])
                        .scaled(c[static_cast<std::size_t>(d)]);
  }
  return from_monomial(n_, total.coeffs());
}

BinaryForm BinaryForm::scaled(const Scalar& c) const {
  BinaryForm r(*this);
  for (auto& x : r.a_) x *= c;
  return r;
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
  if (a.n_ != b.n_) throw ValidationError("adding forms of different degrees");
  BinaryForm r(a);
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) {
  if (a.n_ != b.n_) throw ValidationError("subtracting forms of different degrees");
  BinaryForm r(a);
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
  return r;
}

bool operator==(const BinaryForm& a, const BinaryForm& b) {
  return a.field_ == b.field_ && a.n_ == b.n_ && a.a_ == b.a_;
}

DualForm::DualForm(int e, Vector coeffs)
    : field_(coeffs.empty() ? Field::rationals() : coeffs.front().field()), e_(e), b_(std::move(coeffs)) {
  if (e < 0 || b_.size() != static_cast<std::size_t>(e + 1)) {
    throw ValidationError("dual form of degree " + std::to_string(e) + " needs " + std::to_string(e + 1) +
                          " coefficients");
  }
  require_same_field(b_, field_, "dual form");
}

DualForm DualForm::from_ints(Field field, const std::vector<long>& coeffs) {
  Vector b;
  for (long c : coeffs) b.emplace_back(field, c);
  return DualForm(static_cast<int>(coeffs.size()) - 1, std::move(b));
}

DualForm DualForm::from_poly(const BinaryPoly& p) { return DualForm(p.degree(), p.coeffs()); }

DualForm DualForm::annihilator_of(const ProjectivePoint& p) { return DualForm(1, Vector{p.t, -p.s}); }

bool DualForm::is_zero() const {
  return std::all_of(b_.begin(), b_.end(), [](const Scalar& c) { return c.is_zero(); });
}

Scalar DualForm::evaluate(const Scalar& a0, const Scalar& a1) const { return as_poly().evaluate(a0, a1); }

BinaryPoly DualForm::as_poly() const { return BinaryPoly(e_, b_); }

DualForm operator*(const DualForm& a, const DualForm& b) { return DualForm::from_poly(a.as_poly() * b.as_poly()); }

bool operator==(const DualForm& a, const DualForm& b) {
  return a.field_ == b.field_ && a.e_ == b.e_ && a.b_ == b.b_;
}

BinaryForm LinearFormPower::expand() const {
  const Field field = a0.field();
  Vector a;
  a.reserve(static_cast<std::size_t>(n + 1));
  for (int d = 0; d <= n; ++d) a.push_back(a0.pow(static_cast<std::uint64_t>(n - d)) * a1.pow(static_cast<std::uint64_t>(d)));
  if (a.empty()) a.emplace_back(field, 1);
  return BinaryForm(n, std::move(a));
}

BinaryForm contract(const DualForm& phi, const BinaryForm& f) {
  const int e = phi.degree();
  const int n = f.degree();
  if (e > n) {
    throw ValidationError("cannot contract a degree-" + std::to_string(n) + " form by a degree-" +
                          std::to_string(e) + " operator");
  }
  if (!(phi.field() == f.field())) throw ValidationError("contraction across different fields");
  Vector c(static_cast<std::size_t>(n - e + 1), Scalar(f.field()));
  for (int i = 0; i <= n - e; ++i)
    for (int j = 0; j <= e; ++j) {
      const auto& b = phi.coeff(j);
      if (!b.is_zero()) c[static_cast<std::size_t>(i)] += b * f.coord(i + j);
    }
  return BinaryForm(n - e, std::move(c));
}

DenseMatrix catalecticant(const BinaryForm& f, int e) {
  if (e < 1 || e > f.degree() - 1) {
    throw ValidationError("catalecticant index e = " + std::to_string(e) + " outside [1, " +
                          std::to_string(f.degree() - 1) + "]");
  }
  return hankel(f, e);
}

std::vector<DualForm> apolar_forms(const BinaryForm& f, int e) {
  if (e < 1 || e > f.degree()) {
    throw ValidationError("apolar degree e = " + std::to_string(e) + " outside [1, " + std::to_string(f.degree()) +
                          "]");
  }
  return to_dual_forms(kernel_basis(hankel(f, f.degree() - e)), e);
}

std::vector<DualForm> simultaneous_apolar(std::span<const BinaryForm> forms, int e) {
  if (forms.empty()) throw ValidationError("simultaneous apolarity needs at least one form");
  const int n = forms.front().degree();
  for (const auto& f : forms) {
    if (f.degree() != n) throw ValidationError("simultaneous apolarity: forms of different degrees");
    if (!(f.field() == forms.front().field())) throw ValidationError("simultaneous apolarity: mixed fields");
  }
  if (e < 1 || e > n) throw ValidationError("apolar degree outside [1, n]");
  std::vector<DenseMatrix> blocks;
  for (const auto& f : forms) blocks.push_back(hankel(f, n - e));
  return to_dual_forms(kernel_basis(vstack(blocks)), e);
}

std::optional<DualForm> find_squarefree(const std::vector<DualForm>& basis, std::uint64_t seed) {
  if (basis.empty()) return std::nullopt;
  const Field field = basis.front().field();
  const int e = basis.front().degree();
  auto combine = [&](const std::vector<Scalar>& weights) {
    Vector b(static_cast<std::size_t>(e + 1), Scalar(field));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (weights[i].is_zero()) continue;
      for (int j = 0; j <= e; ++j) b[static_cast<std::size_t>(j)] += weights[i] * basis[i].coeff(j);
    }
    return DualForm(e, std::move(b));
  };
  auto squarefree = [](const DualForm& phi) { return !phi.is_zero() && is_squarefree(phi.as_poly()); };

  for (const auto& phi : basis)
    if (squarefree(phi)) return phi;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      std::vector<Scalar> w(basis.size(), Scalar(field));
      w[i] = w[j] = Scalar(field, 1);
      if (auto phi = combine(w); squarefree(phi)) return phi;
    }
  Rng rng(seed);
  for (int trial = 0; trial < 16; ++trial) {
    std::vector<Scalar> w;
    for (std::size_t i = 0; i < basis.size(); ++i) w.push_back(rng.scalar(field, 7));
    if (auto phi = combine(w); squarefree(phi)) return phi;
  }
  if (basis.size() == 2) {
    for (long mu = 0; mu <= 2L * e - 2; ++mu) {
      if (auto phi = combine({Scalar(field, 1), Scalar(field, mu)}); squarefree(phi)) return phi;
    }
  }
  return std::nullopt;
}

namespace {

/// Lowest degree carrying a nonzero apolar form (the smaller generator of Ann(f)).
int first_apolar_degree(const BinaryForm& f, std::vector<DualForm>& basis) {
  for (int e = 1; e <= f.degree(); ++e) {
    basis = apolar_forms(f, e);
    if (!basis.empty()) return e;
  }
  throw ComputationError("no apolar form found up to the degree of the form");
}

}  // namespace

int waring_rank(const BinaryForm& f) {
  if (f.is_zero()) throw ValidationError("Waring rank of the zero form is undefined");
  const int n = f.degree();
  if (n <= 1) return 1;
  std::vector<DualForm> basis;
  const int e = first_apolar_degree(f, basis);
  if (find_squarefree(basis)) return e;
  return n - e + 2;
}

DualForm minimal_squarefree_apolar(const BinaryForm& f) {
  if (f.is_zero()) throw ValidationError("the zero form has no Waring decomposition");
  const int n = f.degree();
  if (n == 0) throw ValidationError("constant forms have no apolar operators of positive degree");
  std::vector<DualForm> basis;
  const int e = first_apolar_degree(f, basis);
  if (auto phi = find_squarefree(basis)) return *phi;
  const int r = n - e + 2;
  if (r > n) throw ComputationError("no squarefree apolar form up to degree n");
  basis = apolar_forms(f, r);
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    if (auto phi = find_squarefree(basis, derive_seed(0x5eedULL, seed))) return *phi;
  }
  throw ComputationError("squarefree apolar search failed at degree " + std::to_string(r));
}

bool certify_decomposition(const BinaryForm& f, const DualForm& phi) {
  if (phi.degree() > f.degree() || phi.is_zero()) return false;
  return contract(phi, f).is_zero() && is_squarefree(phi.as_poly());
}

std::vector<WaringTerm> decompose(const BinaryForm& f, const DualForm& phi) {
  const int n = f.degree();
  const int e = phi.degree();
  if (e > n) throw ValidationError("apolar operator degree exceeds the form degree");
  if (phi.is_zero() || !contract(phi, f).is_zero()) throw ValidationError("operator is not apolar to the form");
  if (!is_squarefree(phi.as_poly())) throw ValidationError("operator is not squarefree");
  const auto roots = roots_in_field(phi.as_poly());
  if (static_cast<int>(roots.size()) < e) {
    throw ComputationError("operator has " + std::to_string(e - static_cast<int>(roots.size())) +
                           " roots outside " + f.field().name() + "; use certify-only mode");
  }
  std::vector<LinearFormPower> powers;
  DenseMatrix system(f.field(), static_cast<std::size_t>(n + 1), roots.size());
  for (std::size_t j = 0; j < roots.size(); ++j) {
    powers.push_back(LinearFormPower{roots[j].s, roots[j].t, n});
    const BinaryForm expanded = powers.back().expand();
    for (int d = 0; d <= n; ++d) system(static_cast<std::size_t>(d), j) = expanded.coord(d);
  }
  const auto x = solve(system, f.coords());
  if (!x) throw ComputationError("apolar decomposition system is inconsistent");
  std::vector<WaringTerm> terms;
  for (std::size_t j = 0; j < powers.size(); ++j) terms.push_back(WaringTerm{(*x)[j], powers[j]});
  if (!(expand_terms(terms, f.field(), n) == f)) throw ComputationError("decomposition failed re-expansion");
  return terms;
}

BinaryForm expand_terms(const std::vector<WaringTerm>& terms, Field field, int n) {
  BinaryForm total = BinaryForm::zero(field, n);
  for (const auto& t : terms) total = total + t.power.expand().scaled(t.coefficient);
  return total;
}

bool ps_membership(const BinaryForm& f, int s) {
  const int n = f.degree();
  if (s < 1 || s > n + 1) throw ValidationError("secant index s outside [1, n+1]");
  if (2 * s >= n + 1) return true;
  return rank(catalecticant(f, s)) <= static_cast<std::size_t>(s);
}

std::string to_string(const DualForm& phi) {
  std::ostringstream os;
  bool first = true;
  const int e = phi.degree();
  for (int j = 0; j <= e; ++j) {
    const auto& b = phi.coeff(j);
    if (b.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << b;
    if (e - j > 0) os << "*d0" << (e - j > 1 ? "^" + std::to_string(e - j) : "");
    if (j > 0) os << "*d1" << (j > 1 ? "^" + std::to_string(j) : "");
  }
  return first ? "0" : os.str();
}

std::string to_string(const BinaryForm& f) {
  std::ostringstream os;
  const auto c = f.monomial_coeffs();
  const int n = f.degree();
  bool first = true;
  for (int d = 0; d <= n; ++d) {
    const auto& x = c[static_cast<std::size_t>(d)];
    if (x.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << x;
    if (n - d > 0) os << "*x0" << (n - d > 1 ? "^" + std::to_string(n - d) : "");
    if (d > 0) os << "*x1" << (d > 1 ? "^" + std::to_string(d) : "");
  }
  return first ? "0" : os.str();
}

}  // namespace nb
