#pragma once

// Dense linear algebra over an arithmetic policy from coeff.hpp.
// Everything here is exact; there is no pivoting for stability, only for
// nonzero-ness.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "morsekit/coeff.hpp"
#include "morsekit/matrix.hpp"

namespace morsekit::linalg {

template <class Field>
using FieldMatrix = Matrix<typename Field::Element>;

template <class Field>
using FieldVector = std::vector<typename Field::Element>;

template <class Field>
FieldMatrix<Field> from_integers(const Field& field, const IntMatrix& a) {
  FieldMatrix<Field> out(a.rows(), a.cols(), field.zero());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = field.from_integer(a(r, c));
  return out;
}

template <class Field>
RatMatrix to_rational(const Field& field, const FieldMatrix<Field>& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = field.to_rational(a(r, c));
  return out;
}

template <class Field>
FieldMatrix<Field> multiply(const Field& field, const FieldMatrix<Field>& a,
                            const FieldMatrix<Field>& b) {
  FieldMatrix<Field> out(a.rows(), b.cols(), field.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (field.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(i, j) = field.add(out(i, j), field.mul(a(i, k), b(k, j)));
    }
  return out;
}

template <class Field>
bool equal(const Field& field, const FieldMatrix<Field>& a, const FieldMatrix<Field>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!field.is_zero(field.sub(a(r, c), b(r, c)))) return false;
  return true;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class Field>
std::vector<std::size_t> row_reduce(const Field& field, FieldMatrix<Field>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && field.is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    const auto inv = field.inverse(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = field.mul(m(row, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || field.is_zero(m(r, col))) continue;
      const auto factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m(r, c) = field.sub(m(r, c), field.mul(factor, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Field>
std::size_t rank(const Field& field, FieldMatrix<Field> m) {
  return row_reduce(field, m).size();
}

/// Basis of the null space, one vector per column.
template <class Field>
FieldMatrix<Field> kernel_basis(const Field& field, FieldMatrix<Field> m) {
  const std::size_t n = m.cols();
  const auto pivots = row_reduce(field, m);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : pivots) is_pivot[p] = true;

  FieldMatrix<Field> basis(n, n - pivots.size(), field.zero());
  std::size_t out = 0;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    basis(free_col, out) = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i)
      basis(pivots[i], out) = field.neg(m(i, free_col));
    ++out;
  }
  return basis;
}

/// Inverse of a square upper-triangular matrix with invertible diagonal.
template <class Field>
FieldMatrix<Field> upper_triangular_inverse(const Field& field, const FieldMatrix<Field>& p) {
  const std::size_t n = p.rows();
  FieldMatrix<Field> inv(n, n, field.zero());
  for (std::size_t j = 0; j < n; ++j) {
    // Solve p · x = e_j by back substitution.
    for (std::size_t ii = n; ii-- > 0;) {
      auto acc = (ii == j) ? field.one() : field.zero();
      for (std::size_t k = ii + 1; k < n; ++k)
        acc = field.sub(acc, field.mul(p(ii, k), inv(k, j)));
      inv(ii, j) = field.mul(acc, field.inverse(p(ii, ii)));
    }
  }
  return inv;
}

/// Echelon basis of a growing subspace of F^n: insert() reports whether a
/// vector enlarged the span.
template <class Field>
class IncrementalBasis {
 public:
  IncrementalBasis(Field field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  bool insert(FieldVector<Field> v) {
    for (const auto& [pivot, row] : rows_) {
      if (field_.is_zero(v[pivot])) continue;
      const auto factor = v[pivot];
      for (std::size_t c = 0; c < dim_; ++c)
        v[c] = field_.sub(v[c], field_.mul(factor, row[c]));
    }
    std::size_t pivot = 0;
    while (pivot < dim_ && field_.is_zero(v[pivot])) ++pivot;
    if (pivot == dim_) return false;
    const auto inv = field_.inverse(v[pivot]);
    for (auto& x : v) x = field_.mul(x, inv);
    // Keep existing rows reduced against the new pivot.
    for (auto& [p, row] : rows_) {
      if (field_.is_zero(row[pivot])) continue;
      const auto factor = row[pivot];
      for (std::size_t c = 0; c < dim_; ++c)
        row[c] = field_.sub(row[c], field_.mul(factor, v[c]));
    }
    rows_.emplace_back(pivot, std::move(v));
    return true;
  }

  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  Field field_;
  std::size_t dim_;
  std::vector<std::pair<std::size_t, FieldVector<Field>>> rows_;
};

}  // namespace morsekit::linalg
