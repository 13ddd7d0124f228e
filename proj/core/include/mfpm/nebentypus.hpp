#pragma once

// Nebentypus decomposition chi = psi * omega^i * eta at an odd prime p, and
// the determinant obstruction to matching a p-power-conductor eta at a level
// prime to p.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfpm/character.hpp"
#include "mfpm/eigen_classify.hpp"

namespace mfpm {

struct CharacterDecomposition {
  int64_t p = 0;
  int64_t level_prime_to_p = 1;  // N
  int r = 0;                     // modulus = N p^r
  DirichletCharacter psi = DirichletCharacter::trivial(1);  // modulo N
  int64_t teichmuller_exponent = 0;                         // i modulo p - 1
  DirichletCharacter eta = DirichletCharacter::trivial(1);  // modulo p^r
  int s = 0;                                                // order of eta is p^s
};

// The Teichmuller character modulo p^r (p odd, r >= 1): a -> the (p-1)-st root
// of unity congruent to a, with the embedding fixed by ModRing::root_of_unity.
DirichletCharacter teichmuller_character(int64_t p, int r);

// Throws PreconditionError for p = 2 and InputError for a non-prime p.
CharacterDecomposition decompose_character(const DirichletCharacter& chi, int64_t p);
// psi * omega^i * eta as a character modulo N p^r.
DirichletCharacter recompose(const CharacterDecomposition& d);

struct EtaValue {
  int64_t generator;  // of (Z/p^r)^x
  RingElement value;
  std::optional<int64_t> base_residue;  // x with embed_base(x) = value
};

struct ObstructionVerdict {
  bool blocked = false;
  bool shortcut = false;  // m >= 2 and eta != 1
  RingPtr ring;           // Z_p[zeta_{p^s}] / pi^gamma(m)
  Integer ambient_size;
  Integer base_image_size;
  std::vector<EtaValue> values;
};

// Materializes eta in the cyclotomic ring at precision m and tests each
// generator value for membership in the image of Z/p^m. Throws when this
// disagrees with the shortcut.
ObstructionVerdict obstruction_check(const CharacterDecomposition& d, int64_t m);

struct DetData {
  int64_t ell = 0;
  RingElement value;  // ell^(k-1) chi(ell)
  std::optional<RingElement> stroke_eigenvalue;
  std::optional<bool> consistent;  // ell * value == stroke eigenvalue
};

// ell^(k-1) chi(ell) in the ring of `e`. When `f` is given, its [ell]
// eigenvalue is computed from the stroke matrix and compared. Requires ell
// prime and prime to the level of chi; ell = p is allowed.
DetData det_data(const EigenSystem& e, int64_t weight, const DirichletCharacter& chi, int64_t ell,
                 const std::optional<CoefficientForm>& f = std::nullopt);

}  // namespace mfpm
