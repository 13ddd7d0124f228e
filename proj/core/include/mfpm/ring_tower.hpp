#pragma once

// Coefficient rings O_K / pi^gamma for the local fields supported by the
// library: unramified extensions of Q_p of degree f, the cyclotomic fields
// Q_p(zeta_{p^s}), and composita of one of each.
//
// An element is stored through its coordinates in the Z_p-basis
// x^a * pi^b (0 <= a < f, 0 <= b < e), where x is a root of the unramified
// defining polynomial and pi = 1 - zeta_{p^s} is the uniformizer of the
// ramified part. Because the pi-adic valuations e*v_p(c) + b of the terms are
// pairwise distinct modulo e, the ideal pi^gamma is the product of the
// coordinate ideals p^ceil((gamma - b)/e); reducing each coordinate modulo its
// own power of p is therefore a canonical form, and equality of elements is
// equality of coordinate vectors.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mfpm/arith.hpp"

namespace mfpm {

// Precision gamma_K(m) = (m - 1) e + 1.
int64_t gamma(int64_t m, int64_t e);

struct LocalFieldSpec {
  int64_t p = 0;
  // Unramified part: degree f and the monic defining polynomial (low to high
  // coefficients, size f + 1). Degree 1 means no unramified part.
  int unramified_degree = 1;
  std::vector<int64_t> unramified_poly{0, 1};
  // Ramified part Q_p(zeta_{p^s}); s = 0 means none.
  int cyclotomic_exponent = 0;

  static LocalFieldSpec rationals(int64_t p);
  // Uses the shipped polynomial table when `poly` is empty.
  static LocalFieldSpec unramified(int64_t p, int f, std::vector<int64_t> poly = {});
  static LocalFieldSpec cyclotomic(int64_t p, int s);
  static LocalFieldSpec compositum(int64_t p, int f, std::vector<int64_t> poly, int s);

  int ramification_index() const;
  int residue_degree() const { return unramified_degree; }

  // Throws InputError on a non-prime p, a non-monic or reducible polynomial.
  void validate() const;

  bool operator==(const LocalFieldSpec&) const = default;
};

// Shipped degree-f defining polynomials for p in {2,3,5,7} and 2 <= f <= 4.
std::optional<std::vector<int64_t>> shipped_unramified_poly(int64_t p, int f);

// Irreducibility of a monic polynomial over F_p (coefficients low to high).
bool irreducible_mod_p(const std::vector<int64_t>& poly, int64_t p);

class ModRing;
class RingElement;
using RingPtr = std::shared_ptr<const ModRing>;

class ModRing : public std::enable_shared_from_this<ModRing> {
 public:
  static RingPtr create(const LocalFieldSpec& spec, int m);
  static RingPtr integers_mod(int64_t p, int m);
  // Parses `ring p=3 m=2 cyclotomic s=1`, `ring p=5 m=1 unramified f=2
  // [poly=c0,c1,c2]`, and combinations of both clauses.
  static RingPtr parse(const std::string& text);

  const LocalFieldSpec& spec() const { return spec_; }
  int64_t p() const { return spec_.p; }
  int m() const { return m_; }
  int e() const { return e_; }
  int f() const { return f_; }
  int64_t gamma() const { return gamma_; }
  // Working modulus p^m: all coordinate moduli divide it.
  int64_t working_modulus() const { return pm_; }
  // Number of elements p^(f * gamma).
  Integer cardinality() const;
  bool is_base_ring() const { return e_ == 1 && f_ == 1; }

  std::string describe() const;
  bool same_as(const ModRing& other) const {
    return spec_ == other.spec_ && m_ == other.m_;
  }

  // Same field at another precision exponent.
  RingPtr with_precision(int m) const;
  // The subring Z/p^m.
  RingPtr base_ring() const;

  RingElement zero() const;
  RingElement one() const;
  RingElement from_integer(int64_t x) const;
  RingElement from_integer(const Integer& x) const;
  // Canonicalizes the given coordinates (length f * e, index b * f + a).
  RingElement element(std::vector<int64_t> coords) const;
  RingElement uniformizer() const;
  // x, the root of the unramified defining polynomial (zero when f = 1).
  RingElement unramified_generator() const;
  // zeta_{p^s} = 1 - pi; throws when the ring has no ramified part.
  RingElement cyclotomic_zeta() const;
  // The canonical generator pi^v of the ideal pi^v (zero when v >= gamma).
  RingElement pi_power(int64_t v) const;

  // A primitive n-th root of unity, when the ring contains one. Roots of
  // order prime to p are Teichmuller lifts of the smallest primitive element
  // of the residue field (lexicographic in coordinates); the p-power part is a
  // power of zeta_{p^s}. This fixes the embedding choice for character values.
  std::optional<RingElement> root_of_unity(int64_t n) const;

  // All elements in canonical order (desk scale only).
  std::vector<RingElement> elements() const;
  // Canonical representatives of R / pi^k.
  std::vector<RingElement> residues_mod_pi_power(int64_t k) const;

  // Internals used by RingElement.
  int64_t coordinate_modulus(std::size_t index) const { return moduli_[index]; }
  std::size_t coordinate_count() const { return moduli_.size(); }
  std::vector<int64_t> multiply_coords(const std::vector<int64_t>& a,
                                       const std::vector<int64_t>& b) const;

 private:
  ModRing(const LocalFieldSpec& spec, int m);
  void canonicalize(std::vector<int64_t>& coords) const;

  LocalFieldSpec spec_;
  int m_;
  int e_;
  int f_;
  int64_t gamma_;
  int64_t pm_;
  std::vector<int64_t> moduli_;
  // Unramified relation x^f = -sum u_a x^a, and Eisenstein relation
  // pi^e = -sum r_b pi^b, both reduced modulo p^m.
  std::vector<int64_t> unram_poly_;
  std::vector<int64_t> eisenstein_poly_;

  friend class RingElement;
};

class RingElement {
 public:
  RingElement() = default;

  const RingPtr& ring() const { return ring_; }
  const std::vector<int64_t>& coords() const { return coords_; }

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator-() const;
  RingElement operator*(const RingElement& o) const;
  RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
  RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
  RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
  RingElement scaled(int64_t k) const;
  RingElement scaled(const Integer& k) const;
  RingElement pow(uint64_t k) const;

  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }
  // Lexicographic order on coordinates, for deterministic sorting.
  bool operator<(const RingElement& o) const { return coords_ < o.coords_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;
  // pi-adic valuation; gamma for zero.
  int64_t valuation() const;
  // Throws PreconditionError for non-units.
  RingElement inverse() const;

  // Quotient t with pi^v * t = *this; requires valuation() >= v.
  RingElement divide_by_pi_power(int64_t v) const;
  // Canonical representative of *this modulo pi^v.
  RingElement remainder_mod_pi_power(int64_t v) const;

  // Same coordinates reinterpreted at another precision of the same field
  // (a reduction when lowering m, the canonical set-theoretic lift when
  // raising it).
  RingElement at_precision(const RingPtr& target) const;

  std::string to_string() const;

 private:
  RingElement(RingPtr ring, std::vector<int64_t> coords)
      : ring_(std::move(ring)), coords_(std::move(coords)) {}
  void require_same_ring(const RingElement& o) const;

  RingPtr ring_;
  std::vector<int64_t> coords_;

  friend class ModRing;
};

// Image of a residue x mod p^m; throws PreconditionError when `modulus` is not
// the p^m of the ring.
RingElement embed_base(int64_t x, int64_t modulus, const RingPtr& ring);
// alpha == beta in the common parent ring.
bool congruent_mod_pm(const RingElement& alpha, const RingElement& beta);
// The (p-1)-st root of unity congruent to a modulo pi.
RingElement teichmuller(int64_t a, const RingPtr& ring);
// The residue x mod p^m with embed_base(x) = alpha, if there is one.
std::optional<int64_t> in_base_subring(const RingElement& alpha);
// Image under the inclusion K -> L (same p and m; same unramified part or
// none in K; L has the larger cyclotomic exponent).
RingElement embed_into(const RingElement& alpha, const RingPtr& larger);

}  // namespace mfpm
