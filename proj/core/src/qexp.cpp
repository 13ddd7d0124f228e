#include "mfpm/qexp.hpp"

namespace mfpm {

int64_t gamma0_index(int64_t level) {
  if (level < 1) throw PreconditionError("level must be positive");
  int64_t idx = level;
  for (const auto& [l, e] : arith::factor(level)) {
    (void)e;
    idx = idx / l * (l + 1);
  }
  return idx;
}

int64_t gamma1_index(int64_t level) {
  if (level < 1) throw PreconditionError("level must be positive");
  if (level == 1) return 1;
  if (level == 2) return 3;
  int64_t idx = level * level;
  for (const auto& [l, e] : arith::factor(level)) {
    (void)e;
    idx = idx / (l * l) * (l * l - 1);
  }
  return idx / 2;
}

int64_t sturm_bound(int64_t level, int64_t weight, Group group) {
  if (weight < 1) throw PreconditionError("weight must be positive");
  const int64_t idx = group == Group::Gamma0 ? gamma0_index(level) : gamma1_index(level);
  return weight * idx / 12;
}

Integer char_times(const DirichletCharacter& chi, int64_t d, const Integer& x) {
  return x * chi.integer_value(d);
}

NfElement char_times(const DirichletCharacter& chi, int64_t d, const NfElement& x) {
  return x.scaled(chi.integer_value(d));
}

RingElement char_times(const DirichletCharacter& chi, int64_t d, const RingElement& x) {
  return x * chi.value(d, x.ring());
}

template <>
std::string QExpansion<Integer>::to_string(int64_t upto) const {
  const int64_t b = upto < 0 ? truncation() : std::min(upto, truncation());
  std::string out;
  for (int64_t n = 0; n <= b; ++n) {
    const Integer& c = coeffs_[static_cast<std::size_t>(n)];
    if (c == 0) continue;
    const Integer mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (n == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += n == 1 ? "q" : "q^" + std::to_string(n);
  }
  return out.empty() ? "0" : out;
}

RingQExpansion reduce_mod(const IntQExpansion& f, const RingPtr& ring) {
  std::vector<RingElement> c;
  c.reserve(f.coeffs().size());
  for (const auto& x : f.coeffs()) c.push_back(ring->from_integer(x));
  return RingQExpansion(std::move(c), f.level(), f.weights(), f.character());
}

RingQExpansion reduce_mod(const NfQExpansion& f, const RingPtr& ring, int root_index) {
  const auto roots = f[0].field()->roots_in(ring);
  if (root_index < 0 || static_cast<std::size_t>(root_index) >= roots.size()) {
    throw PreconditionError("no compatible root with index " + std::to_string(root_index) +
                            " of " + f[0].field()->describe() + " in " + ring->describe() +
                            " (" + std::to_string(roots.size()) + " available)");
  }
  const RingElement& root = roots[static_cast<std::size_t>(root_index)];
  std::vector<RingElement> c;
  c.reserve(f.coeffs().size());
  for (const auto& x : f.coeffs()) c.push_back(reduce_element(x, root));
  RingQExpansion out(std::move(c), f.level(), f.weights(), f.character());
  out.set_prime_choice(root_index);
  return out;
}

RingQExpansion embed_expansion(const RingQExpansion& f, const RingPtr& target) {
  std::vector<RingElement> c;
  c.reserve(f.coeffs().size());
  for (const auto& x : f.coeffs()) c.push_back(embed_into(x, target));
  RingQExpansion out(std::move(c), f.level(), f.weights(), f.character());
  if (f.prime_choice()) out.set_prime_choice(*f.prime_choice());
  return out;
}

}  // namespace mfpm
