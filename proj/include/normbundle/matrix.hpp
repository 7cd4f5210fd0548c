#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normbundle/scalar.hpp"

namespace nb {

/// Dense row-major matrix of Scalars over a single Field.
class DenseMatrix {
 public:
  DenseMatrix(Field field, std::size_t rows, std::size_t cols);
  /// Rows must all have the same length; an empty row list needs an explicit column count.
  static DenseMatrix from_rows(Field field, const std::vector<Vector>& rows, std::size_t cols);
  static DenseMatrix from_ints(Field field, const std::vector<std::vector<long>>& rows);
  static DenseMatrix identity(Field field, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  DenseMatrix transpose() const;
  Vector apply(std::span<const Scalar> v) const;
  bool is_zero() const;

  std::string to_string() const;

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b);

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

/// Concatenates matrices with equal column counts top to bottom.
DenseMatrix vstack(std::span<const DenseMatrix> blocks);

/// Exact rank. Over Q this runs fraction-free (Bareiss) elimination on the
/// row-wise integer rescaling of the matrix; over F_p plain Gaussian elimination.
std::size_t rank(const DenseMatrix& m);

/// Reduced row echelon form, plus the pivot column of each nonzero row.
struct EchelonForm {
  DenseMatrix reduced;
  std::vector<std::size_t> pivots;
};
EchelonForm rref(const DenseMatrix& m);

/// Canonical null-space basis: one vector per free column f of the reduced
/// echelon form, with 1 at f, zero at the other free columns and the negated
/// reduced entries at the pivot columns. Bit-exact for a given input.
std::vector<Vector> kernel_basis(const DenseMatrix& m);

/// Some x with m x = rhs, or nullopt when the system is inconsistent.
/// Free variables are set to zero, so the answer is deterministic.
std::optional<Vector> solve(const DenseMatrix& m, std::span<const Scalar> rhs);

}  // namespace nb
