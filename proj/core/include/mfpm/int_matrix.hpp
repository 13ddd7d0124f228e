#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "mfpm/arith.hpp"

namespace mfpm {

// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::vector<Integer> row(std::size_t i) const;

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix scaled(const Integer& k) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& o) const = default;

  bool is_zero() const;
  // Bareiss fraction-free elimination; square matrices only.
  Integer determinant() const;

  // Debug dump: "<rows> <cols>" then one whitespace-separated row per line.
  std::string dump() const;
  static IntMatrix parse_dump(std::istream& in);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// A = U * D * V with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

SmithForm smith_normal_form(const IntMatrix& a);
// Nonzero diagonal entries of the Smith form (no transforms computed).
std::vector<Integer> elementary_divisors(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);
// Row Hermite form: echelon, positive pivots, entries above a pivot reduced
// into [0, pivot), zero rows dropped. Spans the same row lattice as `a`.
IntMatrix hermite_normal_form(const IntMatrix& a);

}  // namespace mfpm
