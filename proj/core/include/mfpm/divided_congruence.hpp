#pragma once

// Dividing congruences between forms of several weights, stripping p from the
// level by a weight search at prime-to-p level, weight congruences for
// stroke eigenforms, and weight equalization by Eisenstein series.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mfpm/errors.hpp"
#include "mfpm/hecke_algebra.hpp"
#include "mfpm/qexp.hpp"

namespace mfpm {

// Exact Bernoulli numbers B_0..B_n with B_1 = -1/2.
std::vector<Rational> bernoulli_numbers(int n);

// E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n for even k >= 4, level 1.
IntQExpansion eisenstein_series_weight(int64_t k, int64_t bound);
// E_{p-1} for p >= 5; checks a_n = 0 mod p for n >= 1.
IntQExpansion eisenstein_series(int64_t p, int64_t bound);
// A level one form of weight phi(p^m) congruent to 1 mod p^m: E_{p-1}^(p^(m-1))
// for p >= 5, and E_6^(3^(m-2)) for p = 3, m >= 2. Checked coefficientwise.
IntQExpansion equalizing_series(int64_t p, int64_t m, int64_t bound);

struct EqualizedForms {
  std::vector<IntQExpansion> forms;  // all of weight target_weight
  std::vector<int64_t> powers;       // exponent of the equalizing series per input
  int64_t target_weight = 0;
  int64_t audited_truncation = 0;
};

// Multiplies each f_i by the equalizing series to the power
// (k_max - k_i) / phi(p^m); expansions mod p^m are unchanged (verified).
EqualizedForms equalize_weights(const std::vector<IntQExpansion>& forms, int64_t p, int64_t m);

// A coefficient of the sum that is not divisible by pi^m.
class CongruenceFailure : public PreconditionError {
 public:
  CongruenceFailure(const std::string& what, int64_t index)
      : PreconditionError(what), index_(index) {}
  int64_t index() const { return index_; }

 private:
  int64_t index_;
};

template <class C>
struct DividedCongruence {
  std::vector<QExpansion<C>> inputs;
  Integer pi;
  int64_t m = 0;
  QExpansion<C> f;  // sum of the inputs divided by pi^m
  int64_t audited_truncation = 0;
};

// f = sum g_k / pi^m for an integer uniformizer pi. Only the sum needs to be
// divisible. Throws CongruenceFailure at the first bad coefficient.
DividedCongruence<Integer> divide_congruence(const std::vector<IntQExpansion>& g, const Integer& pi,
                                             int64_t m);
DividedCongruence<NfElement> divide_congruence(const std::vector<NfQExpansion>& g,
                                               const Integer& pi, int64_t m);

// Basis of the weight-c space at the target level, or null when not available.
using BasisProvider = std::function<SpacePtr(int64_t weight)>;
// Looks for S_<c>_G1_<N>.basis and then S_<c>_G0_<N>.basis in `dir`.
BasisProvider directory_bases(const std::filesystem::path& dir, int64_t level);

struct StripResult {
  std::optional<int64_t> weight;
  std::optional<CoefficientForm> form;  // in the level-N basis of that weight
  std::vector<int64_t> searched;
  std::vector<int64_t> missing;
  int64_t bound = 0;
  std::vector<std::string> notes;
};

// Smallest c <= c_max such that a_1..a_B of f lie in the reduction of the
// level-N weight-c lattice. An empty result only means none was found.
StripResult strip_level_search(const RingQExpansion& f, int64_t target_level, int64_t c_max,
                               int64_t bound, const BasisProvider& bases);

struct WeightedForm {
  RingQExpansion form;
  int64_t weight = 0;
  DirichletCharacter chi = DirichletCharacter::trivial(1);
};

struct WeightCongruenceVerdict {
  int64_t p = 0;
  int64_t m = 0;
  int64_t h = 1;        // lcm of the orders of the eta_i mod p^m
  int64_t modulus = 1;  // phi(p^m) / h
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  // Sum is a stroke eigenform (weight check) or all eigenvalues agree
  // (variant check).
  bool stroke_eigen = true;
  std::vector<int64_t> primes_checked;
  std::optional<std::size_t> omitted;  // variant check: the index left out

  bool consistent() const { return violations.empty(); }
};

// Needs the f_i mod p linearly independent and sum f_i an eigenform for [l]
// at l prime to D, the levels and p (checked for l < 50). Violations are
// reported; a non-eigen sum without a weight violation throws.
WeightCongruenceVerdict weight_congruence_check(const std::vector<WeightedForm>& forms, int64_t p,
                                                int64_t m, int64_t d);
// Needs sum f_i = 0 mod p^m and, for some i, the f_j (j != i) independent
// mod p.
WeightCongruenceVerdict variant_congruence_check(const std::vector<WeightedForm>& forms, int64_t p,
                                                 int64_t m, int64_t d);

}  // namespace mfpm
