#pragma once

// Linear algebra over the chain rings O_K / pi^gamma.

#include <cstddef>
#include <optional>
#include <vector>

#include "mfpm/int_matrix.hpp"
#include "mfpm/ring_tower.hpp"

namespace mfpm {

using RingVector = std::vector<RingElement>;

RingVector zero_vector(const RingPtr& ring, std::size_t n);

class ChainRingMatrix {
 public:
  ChainRingMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
  static ChainRingMatrix identity(RingPtr ring, std::size_t n);
  static ChainRingMatrix from_integers(RingPtr ring, const IntMatrix& a);
  static ChainRingMatrix from_rows(RingPtr ring, const std::vector<RingVector>& rows,
                                   std::size_t cols);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  RingElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const RingElement& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  // Checked assignment: the entry must live in this matrix's ring.
  void set(std::size_t i, std::size_t j, const RingElement& x);
  RingVector row(std::size_t i) const;

  ChainRingMatrix operator*(const ChainRingMatrix& o) const;
  // A * x for a column vector x.
  RingVector apply(const RingVector& x) const;
  // x^T * A for a row vector x.
  RingVector apply_left(const RingVector& x) const;
  ChainRingMatrix transpose() const;
  bool operator==(const ChainRingMatrix& o) const;

 private:
  RingPtr ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RingElement> data_;
};

// T * A = H with H the Howell form of the row span of A: echelon rows whose
// pivots are the canonical pi^v, entries above a pivot reduced modulo pi^v,
// and closed under the annihilator shifts pi^(gamma - v) * row. H has only
// its nonzero rows.
struct HowellForm {
  ChainRingMatrix H;
  ChainRingMatrix T;
  std::vector<std::size_t> pivot_cols;
};

HowellForm howell_form(const ChainRingMatrix& a);

// Generators of {x : A x = 0}, in Howell form (empty when the kernel is 0).
std::vector<RingVector> kernel(const ChainRingMatrix& a);

// Solution set particular + span(kernel) of A x = b.
struct AffineSolution {
  RingVector particular;
  std::vector<RingVector> kernel;
};

std::optional<AffineSolution> solve_affine(const ChainRingMatrix& a, const RingVector& b);

// Given the exact solution set of A x = b over a lower precision of the same
// field, returns the solution set over the ring of `a` (empty when no vector
// of the lower set lifts).
std::optional<AffineSolution> lift_solutions(const ChainRingMatrix& a, const RingVector& b,
                                             const AffineSolution& lower);

// All elements of the span of `generators` (desk scale). Each element appears
// once, ordered by its Howell coordinates.
std::vector<RingVector> span_elements(const RingPtr& ring, std::size_t dim,
                                      const std::vector<RingVector>& generators);
// All points of an affine solution set.
std::vector<RingVector> affine_points(const AffineSolution& sol);
// Number of elements of the span, without enumerating it.
Integer span_cardinality(const RingPtr& ring, std::size_t dim,
                         const std::vector<RingVector>& generators);

}  // namespace mfpm
