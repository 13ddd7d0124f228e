#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mfpm/ring_tower.hpp"

namespace mfpm {

// A Dirichlet character modulo M, given by exponents on a fixed list of
// generators of (Z/M)^x. For each prime power q || M the generators are: the
// smallest primitive root modulo q for odd q; -1 for q = 4; -1 and 5 for
// q = 2^a, a >= 3. Each is lifted to Z/M by CRT (congruent to 1 at the other
// prime powers). The character sends generator i of order n_i to
// exp(2 pi i e_i / n_i).
class DirichletCharacter {
 public:
  struct Generator {
    int64_t value;        // element of (Z/M)^x
    int64_t order;        // its order
    int64_t prime;        // prime of the component it generates
    int64_t prime_power;  // the component modulus q
  };

  static DirichletCharacter trivial(int64_t modulus);
  static DirichletCharacter from_exponents(int64_t modulus, std::vector<int64_t> exponents);
  // "M:e1,e2,..." or "trivial" / "none" (then `modulus` is used).
  static DirichletCharacter parse(const std::string& text, int64_t modulus);

  static std::vector<Generator> standard_generators(int64_t modulus);

  int64_t modulus() const { return modulus_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<int64_t>& exponents() const { return exps_; }
  bool is_trivial() const { return order_ == 1; }
  int64_t order() const { return order_; }

  // chi(a) = zeta_order^k; empty when gcd(a, M) > 1.
  std::optional<int64_t> log_value(int64_t a) const;
  // Value in a ring containing the order-th roots of unity (zero off units).
  RingElement value(int64_t a, const RingPtr& ring) const;
  // Value in {-1, 0, 1}; requires order <= 2.
  int64_t integer_value(int64_t a) const;

  // Discrete logarithms of a unit a on the generators (e_i mod n_i).
  std::vector<int64_t> discrete_log(int64_t a) const;

  DirichletCharacter operator*(const DirichletCharacter& o) const;
  DirichletCharacter pow(int64_t k) const;
  // Same character viewed modulo a multiple of the modulus.
  DirichletCharacter extend(int64_t new_modulus) const;
  // The character modulo d | M whose extension is this one, if it exists.
  std::optional<DirichletCharacter> restrict_to(int64_t d) const;
  bool operator==(const DirichletCharacter& o) const {
    return modulus_ == o.modulus_ && exps_ == o.exps_;
  }

  std::string to_string() const;

 private:
  DirichletCharacter(int64_t modulus, std::vector<Generator> gens, std::vector<int64_t> exps);

  int64_t modulus_ = 1;
  std::vector<Generator> gens_;
  std::vector<int64_t> exps_;
  int64_t order_ = 1;
  // Log table over Z/M in units of 1/order_; -1 off units.
  std::shared_ptr<const std::vector<int32_t>> table_;
};

}  // namespace mfpm
