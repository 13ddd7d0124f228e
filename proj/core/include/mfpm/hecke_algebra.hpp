#pragma once

// Integral bases of spaces of cusp forms (single weight or a direct sum of
// weights), the Hecke algebra as integer matrices in such a basis, and the
// module S(A) of forms with coefficients in a chain ring A.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "mfpm/chain_matrix.hpp"
#include "mfpm/int_matrix.hpp"
#include "mfpm/qexp.hpp"
#include "mfpm/space_file.hpp"

namespace mfpm {

// One basis element: sum over weights of the components, divided by the
// denominator. The sum has integral q-expansion even when the components do
// not (a divided congruence).
struct BasisRow {
  std::map<int64_t, std::vector<Integer>> components;  // weight -> a_0..a_B
  Integer denominator = 1;

  std::vector<Integer> expansion() const;  // a_0..a_B of the sum
};

class SpaceBasis;
using SpacePtr = std::shared_ptr<const SpaceBasis>;

class SpaceBasis {
 public:
  struct Options {
    // Replace a non-saturated lattice by its saturation (with a warning)
    // instead of failing.
    bool repair_saturation = true;
  };

  // Validates rank and saturation. Rows with one weight each; their Q-span
  // must have dimension equal to the number of rows.
  static SpacePtr create(int64_t level, Group group, DirichletCharacter chi,
                         std::vector<BasisRow> rows, Options opts);
  static SpacePtr create(int64_t level, Group group, DirichletCharacter chi,
                         std::vector<BasisRow> rows) {
    return create(level, group, std::move(chi), std::move(rows), Options{});
  }
  static SpacePtr from_forms(const std::vector<IntQExpansion>& forms, Group group = Group::Gamma1);
  static SpacePtr from_file(const SpaceFile& file, Options opts);
  static SpacePtr from_file(const SpaceFile& file) { return from_file(file, Options{}); }

  int64_t level() const { return level_; }
  Group group() const { return group_; }
  const DirichletCharacter& character() const { return chi_; }
  // Sorted distinct weights.
  const std::vector<int64_t>& weights() const { return weights_; }
  bool single_weight() const { return weights_.size() == 1; }
  int64_t truncation() const { return truncation_; }
  std::size_t dimension() const { return rows_.size(); }
  const std::vector<BasisRow>& rows() const { return rows_; }
  // dimension x truncation matrix of a_1..a_B.
  const IntMatrix& coefficients() const { return coeffs_; }
  IntQExpansion row_expansion(std::size_t i) const;
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::string& digest() const { return digest_; }

  // Number of leading coefficients that determine a form: the Sturm bound for
  // one weight, sum of Sturm bounds + 1 for direct sums, raised until the
  // coefficient matrix has full rank on those columns.
  int64_t injectivity_bound() const { return bound_; }

  // Integer coordinates x with x * rows = f, when f lies in the lattice.
  std::optional<std::vector<Integer>> coordinates_of(const IntQExpansion& f) const;
  std::optional<std::vector<Rational>> rational_coordinates_of(const std::vector<Integer>& a) const;

  std::string describe() const;

 private:
  SpaceBasis() = default;
  void finalize();

  int64_t level_ = 1;
  Group group_ = Group::Gamma1;
  DirichletCharacter chi_ = DirichletCharacter::trivial(1);
  std::vector<int64_t> weights_;
  int64_t truncation_ = 0;
  std::vector<BasisRow> rows_;
  IntMatrix coeffs_;
  std::vector<std::string> warnings_;
  std::string digest_;
  int64_t bound_ = 0;
  // Columns (1-based indices) of a nonsingular square minor, and its inverse
  // as numerators over a common denominator.
  std::vector<int64_t> pivot_cols_;
  IntMatrix pivot_inverse_;
  Integer pivot_den_ = 1;

  friend class HeckeCache;
};

enum class OperatorKind { T, Stroke };

struct HeckeOperator {
  OperatorKind kind = OperatorKind::T;
  int64_t index = 1;
  // Acts on row coordinates: T f_j = sum_i matrix(j, i) f_i.
  IntMatrix matrix;
  // Coefficients compared when verifying the solve.
  int64_t audited_truncation = 0;

  std::string name() const;
};

// Image of the basis row under T_n (or [l]), applied weight by weight.
BasisRow apply_operator(const SpaceBasis& s, const BasisRow& row, OperatorKind kind, int64_t n,
                        int64_t out_bound);

// Throws TruncationError when floor(B / n) (or B / l^2) is below the
// injectivity bound, PreconditionError when the solution is not integral.
HeckeOperator hecke_matrix(const SpaceBasis& s, int64_t n);
HeckeOperator stroke_matrix(const SpaceBasis& s, int64_t ell);

// Thread-safe memo of operator matrices keyed by (basis digest, kind, n),
// optionally persisted to a directory in the debug matrix format.
class HeckeCache {
 public:
  explicit HeckeCache(std::optional<std::filesystem::path> store = std::nullopt);
  const HeckeOperator& get(const SpaceBasis& s, OperatorKind kind, int64_t n);
  std::size_t size() const;
  std::size_t disk_hits() const { return disk_hits_; }

 private:
  using Key = std::tuple<std::string, int, int64_t>;
  std::optional<std::filesystem::path> store_;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::unique_ptr<HeckeOperator>> entries_;
  std::size_t disk_hits_ = 0;
};

// Z-rank of the span of T_1..T_{n_max}; throws TruncationError if some T_n
// cannot be computed.
std::size_t algebra_rank(const SpaceBasis& s, int64_t n_max);

// Entry (i, j) = a_1(T_i f_j) = a_i(f_j), for i = 1..n_max.
IntMatrix pairing_matrix(const SpaceBasis& s, int64_t n_max);

// An element of S(A) for a chain ring A, through its coordinates in the
// reduced basis.
struct CoefficientForm {
  SpacePtr space;
  RingVector coords;

  const RingPtr& ring() const { return coords.front().ring(); }
  // a_1..a_bound of the formal q-expansion.
  RingVector values(int64_t bound) const;
  // Coordinates of T f under an operator.
  CoefficientForm apply(const HeckeOperator& op) const;
  CoefficientForm operator+(const CoefficientForm& o) const;
  CoefficientForm operator-(const CoefficientForm& o) const;
  CoefficientForm scaled(const RingElement& c) const;
  bool is_zero() const;
};

// The form whose values on T_1..T_L are `values` (L = values.size() must be at
// least the injectivity bound). Throws PreconditionError when the vector is
// not in the span.
CoefficientForm form_with_coefficients(const SpacePtr& s, const RingVector& values);
std::optional<CoefficientForm> try_form_with_coefficients(const SpacePtr& s,
                                                          const RingVector& values);
// Reduction of an integral basis combination.
CoefficientForm reduce_form(const SpacePtr& s, const std::vector<Integer>& coords,
                            const RingPtr& ring);

struct LiftedForm {
  std::vector<Integer> coords;
  IntQExpansion expansion;
};
// Coordinatewise least nonnegative lift; coordinates must lie in Z/p^m.
LiftedForm lift_form(const CoefficientForm& f);

}  // namespace mfpm
