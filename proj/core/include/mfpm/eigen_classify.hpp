#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mfpm/chain_matrix.hpp"
#include "mfpm/hecke_algebra.hpp"
#include "mfpm/number_field.hpp"

namespace mfpm {

// Eigenvalues n -> f(T_n) for n <= bound with gcd(n, away_from) = 1.
struct EigenSystem {
  int64_t away_from = 1;
  int64_t bound = 1;
  RingPtr ring;
  std::map<int64_t, RingElement> values;
  std::string provenance;  // "weak", "dc-weak", "strong:<id>", ...

  const RingElement& at(int64_t n) const;
  // Lexicographic on (n, value) pairs.
  bool operator<(const EigenSystem& o) const;
  bool same_values(const EigenSystem& o) const;
  // "1:1 5:2 7:..." with elements printed canonically.
  std::string to_string() const;
  // Normalization and coprime multiplicativity.
  bool satisfies_hecke_relations() const;
};

// Hecke indices n <= bound coprime to d.
std::vector<int64_t> hecke_indices(int64_t bound, int64_t d);

// Process-wide operator cache used when none is passed explicitly.
HeckeCache& default_hecke_cache();

// Checks T_n f = f(T_n) f for n <= B coprime to D after normalizing by the
// unit a_1(f); throws PreconditionError when a_1(f) is not a unit.
std::optional<EigenSystem> is_weak_eigenform(const CoefficientForm& f, int64_t d, int64_t b,
                                             HeckeCache* cache = nullptr);
// The same test on a direct sum of weights (Hecke operators act weight by
// weight).
std::optional<EigenSystem> is_dc_weak_eigenform(const CoefficientForm& f, int64_t d, int64_t b,
                                                HeckeCache* cache = nullptr);

struct WeakEigenform {
  CoefficientForm form;
  EigenSystem system;
};

// Every normalized weak eigenform away from D at bound B over `ring`, sorted
// by eigen system and then by coordinates. The residue-field layer is a
// search over eigenvalues with linear pruning; higher layers lift each point
// by the linearized eigen equations. Unramified rings only (e = 1).
std::vector<WeakEigenform> enumerate_weak_eigenforms(const SpacePtr& s, const RingPtr& ring,
                                                     int64_t d, int64_t b,
                                                     HeckeCache* cache = nullptr);

// Eigenforms grouped by system: each distinct system with its forms.
struct EigenClass {
  EigenSystem system;
  std::vector<CoefficientForm> forms;
};
std::vector<EigenClass> group_by_system(const std::vector<WeakEigenform>& forms);

// A characteristic-zero normalized eigenform with number-field coefficients.
struct CatalogForm {
  std::string id;
  NfQExpansion expansion;
};
CatalogForm catalog_form(const std::string& id, const IntQExpansion& f);

struct StrongMatch {
  std::string id;
  int root_index;
};
// Catalog members whose reduction along some root agrees with `e` at every
// n <= B coprime to D.
std::vector<StrongMatch> strong_match(const EigenSystem& e, const std::vector<CatalogForm>& catalog);

// Agreement at primes l <= min bound, l not dividing either D and not in
// `excluded`. Systems over different rings are compared in a common overring
// when one embeds into the other.
bool systems_agree(const EigenSystem& a, const EigenSystem& b,
                   const std::set<int64_t>& excluded = {});

struct HalfSumStep {
  int64_t n;
  RingElement eigenvalue;  // (lambda_n + mu_n) / 2
  bool verified;           // T_n h == eigenvalue * h
};
struct HalfSum {
  CoefficientForm h;
  EigenSystem system;
  EigenSystem lambda;
  EigenSystem mu;
  std::vector<HalfSumStep> certificate;
  // No n with lambda_n != mu_n mod p^2 was seen.
  bool possibly_liftable = false;
};

// h = (f + g) / 2 over Z/p^2 for integral eigen-coordinates f, g with
// f = g mod p.
HalfSum half_sum_construct(const SpacePtr& s, const std::vector<Integer>& f,
                           const std::vector<Integer>& g, int64_t p, int64_t d, int64_t b,
                           HeckeCache* cache = nullptr);

// The general mechanism on a single endomorphism: returns T h - ((l + m)/2) h
// for h = (f + g)/2, all over a ring where 2 is a unit.
RingVector half_sum_residual(const ChainRingMatrix& t, const RingVector& f, const RingVector& g,
                             const RingElement& lambda, const RingElement& mu);

}  // namespace mfpm
