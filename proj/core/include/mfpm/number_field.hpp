#pragma once

// Integers of Z[x]/(P) for a monic integer polynomial P, in the power basis.

#include <memory>
#include <string>
#include <vector>

#include "mfpm/arith.hpp"
#include "mfpm/ring_tower.hpp"

namespace mfpm {

class NumberField;
using NfPtr = std::shared_ptr<const NumberField>;

class NfElement {
 public:
  NfElement() = default;
  NfElement(NfPtr field, std::vector<Integer> coeffs);

  const NfPtr& field() const { return field_; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }

  NfElement operator+(const NfElement& o) const;
  NfElement operator-(const NfElement& o) const;
  NfElement operator-() const;
  NfElement operator*(const NfElement& o) const;
  NfElement& operator+=(const NfElement& o) { return *this = *this + o; }
  NfElement& operator-=(const NfElement& o) { return *this = *this - o; }
  NfElement scaled(const Integer& k) const;
  bool operator==(const NfElement& o) const;
  bool operator!=(const NfElement& o) const { return !(*this == o); }
  bool is_zero() const;

  bool divisible_by(const Integer& d) const;
  // Exact division by an integer; throws PreconditionError when not exact.
  NfElement divexact(const Integer& d) const;

  // "c" for rational integers, otherwise "(c0 c1 ... )" low to high.
  std::string to_string() const;

 private:
  void require_same_field(const NfElement& o) const;

  NfPtr field_;
  std::vector<Integer> coeffs_;
};

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  // Monic, degree >= 1, coefficients low to high.
  static NfPtr create(std::vector<Integer> poly);
  // "nf:c0,c1,...,1"
  static NfPtr parse(const std::string& text);

  int degree() const { return static_cast<int>(poly_.size()) - 1; }
  const std::vector<Integer>& poly() const { return poly_; }
  std::string describe() const;
  bool same_as(const NumberField& o) const { return poly_ == o.poly_; }

  NfElement zero() const;
  NfElement one() const;
  NfElement from_integer(const Integer& x) const;
  NfElement generator() const;
  // Parses an integer or "(c0 c1 ...)".
  NfElement parse_element(const std::string& text) const;

  // Roots of the defining polynomial in `ring` that lift simple roots modulo
  // pi (Hensel), sorted by the canonical element order. The position in this
  // list is the prime-choice index recorded by reductions.
  std::vector<RingElement> roots_in(const RingPtr& ring) const;

  std::vector<Integer> reduce(std::vector<Integer> coeffs) const;

 private:
  explicit NumberField(std::vector<Integer> poly) : poly_(std::move(poly)) {}
  std::vector<Integer> poly_;
};

// Image of x under the embedding x -> root.
RingElement reduce_element(const NfElement& x, const RingElement& root);

}  // namespace mfpm
