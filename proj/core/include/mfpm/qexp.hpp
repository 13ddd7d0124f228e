#pragma once

// Truncated q-expansions and the coefficient formulas for Hecke, diamond and
// stroke operators.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfpm/arith.hpp"
#include "mfpm/character.hpp"
#include "mfpm/errors.hpp"
#include "mfpm/number_field.hpp"
#include "mfpm/ring_tower.hpp"

namespace mfpm {

enum class Group { Gamma0, Gamma1 };

// Index of Gamma0(M) in SL2(Z), and of +-Gamma1(M) in PSL2(Z).
int64_t gamma0_index(int64_t level);
int64_t gamma1_index(int64_t level);
// floor(k * index / 12)
int64_t sturm_bound(int64_t level, int64_t weight, Group group);

// Coefficient-domain adapters used by the templates below.
inline Integer zero_like(const Integer&) { return 0; }
inline NfElement zero_like(const NfElement& x) { return x.field()->zero(); }
inline RingElement zero_like(const RingElement& x) { return x.ring()->zero(); }
inline Integer scale_int(const Integer& x, const Integer& k) { return x * k; }
inline NfElement scale_int(const NfElement& x, const Integer& k) { return x.scaled(k); }
inline RingElement scale_int(const RingElement& x, const Integer& k) { return x.scaled(k); }
inline bool is_zero_coeff(const Integer& x) { return x == 0; }
inline bool is_zero_coeff(const NfElement& x) { return x.is_zero(); }
inline bool is_zero_coeff(const RingElement& x) { return x.is_zero(); }
inline std::string coeff_string(const Integer& x) { return x.get_str(); }
inline std::string coeff_string(const NfElement& x) { return x.to_string(); }
inline std::string coeff_string(const RingElement& x) { return x.to_string(); }
// chi(d) * x in the coefficient domain of x.
Integer char_times(const DirichletCharacter& chi, int64_t d, const Integer& x);
NfElement char_times(const DirichletCharacter& chi, int64_t d, const NfElement& x);
RingElement char_times(const DirichletCharacter& chi, int64_t d, const RingElement& x);

// Coefficients a_0..a_B (a_0 is zero for cusp forms) with level, weight list
// and optional nebentypus. A weight list of length > 1 tags a member of a
// direct sum of weights.
template <class C>
class QExpansion {
 public:
  QExpansion(std::vector<C> coeffs, int64_t level, std::vector<int64_t> weights,
             std::optional<DirichletCharacter> chi = std::nullopt)
      : coeffs_(std::move(coeffs)), level_(level), weights_(std::move(weights)),
        chi_(std::move(chi)) {
    if (coeffs_.size() < 2) throw PreconditionError("q-expansion needs truncation >= 1");
    if (level_ < 1) throw PreconditionError("q-expansion level must be positive");
  }

  int64_t truncation() const { return static_cast<int64_t>(coeffs_.size()) - 1; }
  const C& operator[](int64_t n) const {
    if (n < 0 || n > truncation()) {
      throw TruncationError("coefficient a_" + std::to_string(n) + " beyond truncation " +
                            std::to_string(truncation()));
    }
    return coeffs_[static_cast<std::size_t>(n)];
  }
  const std::vector<C>& coeffs() const { return coeffs_; }
  C& mutable_coeff(int64_t n) { return coeffs_.at(static_cast<std::size_t>(n)); }

  int64_t level() const { return level_; }
  void set_level(int64_t level) { level_ = level; }
  const std::vector<int64_t>& weights() const { return weights_; }
  void set_weights(std::vector<int64_t> w) { weights_ = std::move(w); }
  int64_t weight() const {
    if (weights_.size() != 1) throw PreconditionError("q-expansion has no single weight");
    return weights_.front();
  }
  const std::optional<DirichletCharacter>& character() const { return chi_; }
  void set_character(std::optional<DirichletCharacter> chi) { chi_ = std::move(chi); }
  // Index of the chosen root for reductions of number-field coefficients.
  std::optional<int> prime_choice() const { return prime_choice_; }
  void set_prime_choice(int index) { prime_choice_ = index; }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (!is_zero_coeff(c)) return false;
    }
    return true;
  }
  bool is_normalized() const { return coeffs_.size() > 1 && coeffs_[1] == one_like(); }

  QExpansion truncated(int64_t b) const {
    if (b > truncation()) throw TruncationError("cannot extend truncation");
    QExpansion out = *this;
    out.coeffs_.resize(static_cast<std::size_t>(b) + 1);
    return out;
  }

  QExpansion operator+(const QExpansion& o) const { return combine(o, false); }
  QExpansion operator-(const QExpansion& o) const { return combine(o, true); }
  QExpansion scaled(const C& k) const {
    QExpansion out = *this;
    for (auto& c : out.coeffs_) c = c * k;
    return out;
  }
  QExpansion scaled_int(const Integer& k) const {
    QExpansion out = *this;
    for (auto& c : out.coeffs_) c = scale_int(c, k);
    return out;
  }
  // Coefficient equality up to the common truncation.
  bool same_coefficients(const QExpansion& o) const {
    const std::size_t n = std::min(coeffs_.size(), o.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!(coeffs_[i] == o.coeffs_[i])) return false;
    }
    return true;
  }

  // "q + 2*q^5 - ..." for integers; comma list for the other domains.
  std::string to_string(int64_t upto = -1) const;

 private:
  C one_like() const;
  QExpansion combine(const QExpansion& o, bool subtract) const {
    const std::size_t n = std::min(coeffs_.size(), o.coeffs_.size());
    std::vector<C> c(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (subtract) {
        c[i] = c[i] - o.coeffs_[i];
      } else {
        c[i] = c[i] + o.coeffs_[i];
      }
    }
    QExpansion out(std::move(c), std::max(level_, o.level_), weights_, chi_);
    if (weights_ != o.weights_) {
      std::vector<int64_t> w = weights_;
      for (int64_t k : o.weights_) {
        if (std::find(w.begin(), w.end(), k) == w.end()) w.push_back(k);
      }
      std::sort(w.begin(), w.end());
      out.weights_ = std::move(w);
    }
    out.prime_choice_ = prime_choice_;
    return out;
  }

  std::vector<C> coeffs_;
  int64_t level_;
  std::vector<int64_t> weights_;
  std::optional<DirichletCharacter> chi_;
  std::optional<int> prime_choice_;
};

template <>
inline Integer QExpansion<Integer>::one_like() const { return 1; }
template <>
inline NfElement QExpansion<NfElement>::one_like() const { return coeffs_[0].field()->one(); }
template <>
inline RingElement QExpansion<RingElement>::one_like() const { return coeffs_[0].ring()->one(); }

template <class C>
std::string QExpansion<C>::to_string(int64_t upto) const {
  const int64_t b = upto < 0 ? truncation() : std::min(upto, truncation());
  std::string out;
  for (int64_t n = 0; n <= b; ++n) {
    if (n) out += ",";
    out += coeff_string(coeffs_[static_cast<std::size_t>(n)]);
  }
  return out;
}

template <>
std::string QExpansion<Integer>::to_string(int64_t upto) const;

using IntQExpansion = QExpansion<Integer>;
using NfQExpansion = QExpansion<NfElement>;
using RingQExpansion = QExpansion<RingElement>;

// a_r(T_n f) = sum over d | gcd(r, n), gcd(d, M) = 1 of d^(k-1) chi(d) a_{rn/d^2}(f).
// For primes dividing the level this is the U-type action. The result has
// truncation floor(B / n), or `out_bound` when given (checked).
template <class C>
QExpansion<C> hecke_Tn(const QExpansion<C>& f, int64_t n, int64_t out_bound = -1) {
  if (n < 1) throw PreconditionError("hecke_Tn: n must be positive");
  const int64_t avail = f.truncation() / n;
  const int64_t b = out_bound < 0 ? avail : out_bound;
  if (b < 1 || b > avail) {
    throw TruncationError("T_" + std::to_string(n) + " needs truncation " +
                          std::to_string(std::max<int64_t>(b, 1) * n) + ", have " +
                          std::to_string(f.truncation()));
  }
  const int64_t k = f.weight();
  const int64_t level = f.level();
  std::vector<int64_t> good_divisors;
  for (int64_t d : arith::divisors(n)) {
    if (arith::gcd(d, level) == 1) good_divisors.push_back(d);
  }
  if (good_divisors.size() > 1 && !f.character()) {
    throw PreconditionError("hecke_Tn: form without character metadata");
  }
  std::vector<Integer> dpow;
  for (int64_t d : good_divisors) dpow.push_back(arith::ipow(Integer(d), static_cast<unsigned long>(k - 1)));

  std::vector<C> out(static_cast<std::size_t>(b) + 1, zero_like(f[0]));
  for (int64_t r = 0; r <= b; ++r) {
    if (r == 0) {
      // constant term: sum over good d | n of d^(k-1) chi(d) a_0
      if (is_zero_coeff(f[0])) continue;
    }
    C acc = zero_like(f[0]);
    for (std::size_t i = 0; i < good_divisors.size(); ++i) {
      const int64_t d = good_divisors[i];
      if (r % d != 0) continue;
      const int64_t idx = r / d * (n / d);
      const C& a = f[idx];
      if (is_zero_coeff(a)) continue;
      C term = d == 1 ? a : char_times(*f.character(), d, scale_int(a, dpow[i]));
      acc = acc + term;
    }
    out[static_cast<std::size_t>(r)] = acc;
  }
  QExpansion<C> res(std::move(out), f.level(), f.weights(), f.character());
  if (f.prime_choice()) res.set_prime_choice(*f.prime_choice());
  return res;
}

// <d> f = chi(d) f on a character eigencomponent.
template <class C>
QExpansion<C> diamond(const QExpansion<C>& f, int64_t d) {
  if (!f.character()) throw PreconditionError("diamond: form without character metadata");
  if (arith::gcd(d, f.level()) != 1) throw PreconditionError("diamond: d not a unit mod level");
  QExpansion<C> out = f;
  for (int64_t n = 0; n <= f.truncation(); ++n) {
    out.mutable_coeff(n) = char_times(*f.character(), d, f[n]);
  }
  return out;
}

// [l] f = l (T_l T_l f - T_{l^2} f); output truncation floor(B / l^2).
template <class C>
QExpansion<C> stroke(const QExpansion<C>& f, int64_t ell) {
  if (!arith::is_prime(ell) || f.level() % ell == 0) {
    throw PreconditionError("stroke: l must be a prime not dividing the level");
  }
  const int64_t b = f.truncation() / (ell * ell);
  if (b < 1) throw TruncationError("stroke: truncation below l^2");
  const auto tt = hecke_Tn(hecke_Tn(f, ell), ell, b);
  const auto t2 = hecke_Tn(f, ell * ell, b);
  return (tt - t2).scaled_int(ell);
}

// Keeps a_n with gcd(n, c) = 1. The declared level becomes M l for primes
// l | c dividing M and M l^2 for the others, unless `new_level` is given.
template <class C>
QExpansion<C> restrict_support(const QExpansion<C>& g, int64_t c, int64_t new_level = 0) {
  if (c < 1) throw PreconditionError("restrict_support: c must be positive");
  QExpansion<C> out = g;
  for (int64_t n = 0; n <= g.truncation(); ++n) {
    if (arith::gcd(n, c) != 1) out.mutable_coeff(n) = zero_like(g[0]);
  }
  int64_t level = g.level();
  for (const auto& [l, e] : arith::factor(c)) {
    (void)e;
    level *= g.level() % l == 0 ? l : l * l;
  }
  out.set_level(new_level > 0 ? new_level : level);
  if (out.character() && out.character()->modulus() != out.level()) {
    out.set_character(out.character()->extend(arith::lcm(out.level(), out.character()->modulus())));
  }
  return out;
}

// Series product, truncation min(B1, B2); weights add.
template <class C>
QExpansion<C> multiply(const QExpansion<C>& f, const QExpansion<C>& g) {
  const int64_t b = std::min(f.truncation(), g.truncation());
  std::vector<C> out(static_cast<std::size_t>(b) + 1, zero_like(f[0]));
  for (int64_t i = 0; i <= b; ++i) {
    if (is_zero_coeff(f[i])) continue;
    for (int64_t j = 0; i + j <= b; ++j) {
      if (is_zero_coeff(g[j])) continue;
      out[static_cast<std::size_t>(i + j)] = out[static_cast<std::size_t>(i + j)] + f[i] * g[j];
    }
  }
  std::vector<int64_t> w;
  for (int64_t a : f.weights()) {
    for (int64_t c : g.weights()) w.push_back(a + c);
  }
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  std::optional<DirichletCharacter> chi;
  if (f.character() && g.character()) chi = *f.character() * *g.character();
  return QExpansion<C>(std::move(out), arith::lcm(f.level(), g.level()), std::move(w), chi);
}

// Coefficientwise reduction into `ring`.
RingQExpansion reduce_mod(const IntQExpansion& f, const RingPtr& ring);
// Reduction along the `root_index`-th root of the defining polynomial in `ring`
// (see NumberField::roots_in); records the index in the result.
RingQExpansion reduce_mod(const NfQExpansion& f, const RingPtr& ring, int root_index);
// Image in a larger ring of the same field or of a containing field.
RingQExpansion embed_expansion(const RingQExpansion& f, const RingPtr& target);

}  // namespace mfpm
