#include "normbundle/matrix.hpp"

#include <sstream>
#include <utility>

#include "normbundle/errors.hpp"

namespace nb {

DenseMatrix::DenseMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar(field)) {}

DenseMatrix DenseMatrix::from_rows(Field field, const std::vector<Vector>& rows, std::size_t cols) {
  DenseMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ValidationError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(rows[r][c].field() == field)) throw ValidationError("matrix entry from a different field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

DenseMatrix DenseMatrix::from_ints(Field field, const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  DenseMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ValidationError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Scalar(field, rows[r][c]);
  }
  return m;
}

DenseMatrix DenseMatrix::identity(Field field, std::size_t n) {
  DenseMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(field, 1);
  return m;
}

Vector DenseMatrix::row(std::size_t r) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vector DenseMatrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw ValidationError("dimension mismatch in matrix-vector product");
  Vector out(rows_, Scalar(field_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (!a.is_zero() && !v[c].is_zero()) out[r] += a * v[c];
    }
  return out;
}

bool DenseMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

std::string DenseMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << "]\n";
  }
  return os.str();
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

DenseMatrix vstack(std::span<const DenseMatrix> blocks) {
  if (blocks.empty()) throw ValidationError("vstack of no blocks");
  const Field field = blocks.front().field();
  const std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols || !(b.field() == field)) throw ValidationError("vstack: incompatible blocks");
    rows += b.rows();
  }
  DenseMatrix out(field, rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out(offset + r, c) = b(r, c);
    offset += b.rows();
  }
  return out;
}

namespace {

using ResidueGrid = std::vector<std::vector<std::uint64_t>>;

ResidueGrid residues(const DenseMatrix& m) {
  ResidueGrid g(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) g[r][c] = m(r, c).residue();
  return g;
}

/// In-place reduced row echelon form over F_p; returns pivot columns.
std::vector<std::size_t> rref_modp(ResidueGrid& a, std::size_t cols, std::uint64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    const std::uint64_t inv = modp::inv(a[row][col], p);
    for (std::size_t c = col; c < cols; ++c) a[row][c] = modp::mul(a[row][c], inv, p);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const std::uint64_t f = a[r][col];
      for (std::size_t c = col; c < cols; ++c) {
        if (a[row][c] != 0) a[r][c] = modp::sub(a[r][c], modp::mul(f, a[row][c], p), p);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank_modp(ResidueGrid a, std::size_t cols, std::uint64_t p) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    const std::uint64_t inv = modp::inv(a[row][col], p);
    for (std::size_t r = row + 1; r < a.size(); ++r) {
      if (a[r][col] == 0) continue;
      const std::uint64_t f = modp::mul(a[r][col], inv, p);
      for (std::size_t c = col; c < cols; ++c) {
        if (a[row][c] != 0) a[r][c] = modp::sub(a[r][c], modp::mul(f, a[row][c], p), p);
      }
    }
    ++row;
  }
  return row;
}

/// Fraction-free elimination. Every intermediate entry is a minor of the
/// input, so the division by the previous pivot is exact.
std::size_t rank_bareiss(std::vector<std::vector<mpz_class>> a, std::size_t cols) {
  std::size_t row = 0;
  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t piv = row;
    while (piv < a.size() && sgn(a[piv][col]) == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    for (std::size_t r = row + 1; r < a.size(); ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        tmp = a[row][col] * a[r][c] - a[r][col] * a[row][c];
        mpz_divexact(a[r][c].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = a[row][col];
    ++row;
  }
  return row;
}

std::vector<std::vector<mpz_class>> integer_rows(const DenseMatrix& m) {
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class lcm = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).rational().get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const mpq_class& q = m(r, c).rational();
      a[r][c] = q.get_num() * (lcm / q.get_den());
    }
  }
  return a;
}

std::vector<std::size_t> rref_rational(std::vector<std::vector<mpq_class>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t piv = row;
    while (piv < a.size() && sgn(a[piv][col]) == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    const mpq_class inv = 1 / a[row][col];
    for (std::size_t c = col; c < cols; ++c) a[row][c] *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][col]) == 0) continue;
      const mpq_class f = a[r][col];
      for (std::size_t c = col; c < cols; ++c) {
        if (sgn(a[row][c]) != 0) a[r][c] -= f * a[row][c];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const DenseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.field().is_rational()) return rank_bareiss(integer_rows(m), m.cols());
  return rank_modp(residues(m), m.cols(), m.field().characteristic());
}

EchelonForm rref(const DenseMatrix& m) {
  const Field field = m.field();
  DenseMatrix out(field, m.rows(), m.cols());
  std::vector<std::size_t> pivots;
  if (field.is_rational()) {
    std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c).rational();
    pivots = rref_rational(a, m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Scalar::from_rational(field, a[r][c]);
  } else {
    auto a = residues(m);
    pivots = rref_modp(a, m.cols(), field.characteristic());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Scalar::from_residue(field, a[r][c]);
  }
  return EchelonForm{std::move(out), std::move(pivots)};
}

std::vector<Vector> kernel_basis(const DenseMatrix& m) {
  const auto [reduced, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), Scalar(m.field()));
    v[free] = Scalar(m.field(), 1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const DenseMatrix& m, std::span<const Scalar> rhs) {
  if (rhs.size() != m.rows()) throw ValidationError("solve: right-hand side has the wrong length");
  DenseMatrix augmented(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) augmented(r, c) = m(r, c);
    augmented(r, m.cols()) = rhs[r];
  }
  const auto [reduced, pivots] = rref(augmented);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols(), Scalar(m.field()));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = reduced(i, m.cols());
  return x;
}

}  // namespace nb
