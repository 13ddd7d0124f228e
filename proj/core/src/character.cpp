#include "mfpm/character.hpp"

#include <sstream>

#include "mfpm/errors.hpp"

namespace mfpm {

namespace {

constexpr int64_t kMaxModulus = 10'000'000;

int64_t crt_lift(int64_t x, int64_t q, int64_t modulus) {
  // y = x mod q, y = 1 mod modulus / q
  const int64_t rest = modulus / q;
  if (rest == 1) return arith::mod(x, q);
  const int64_t t = arith::mulmod(arith::mod(x - 1, q), arith::invmod(rest % q, q), q);
  return arith::mod(1 + rest * t, modulus);
}

int64_t smallest_primitive_root(int64_t q, int64_t p) {
  const int64_t phi = arith::euler_phi(q);
  for (int64_t g = 2; g < q; ++g) {
    if (g % p == 0) continue;
    if (arith::multiplicative_order(g, q) == phi) return g;
  }
  return 1;  // q = 2
}

}  // namespace

std::vector<DirichletCharacter::Generator> DirichletCharacter::standard_generators(
    int64_t modulus) {
  std::vector<Generator> gens;
  for (const auto& [p, a] : arith::factor(modulus)) {
    const int64_t q = arith::ipow(p, a);
    if (p == 2) {
      if (a >= 2) gens.push_back({crt_lift(-1, q, modulus), 2, 2, q});
      if (a >= 3) gens.push_back({crt_lift(5, q, modulus), q / 4, 2, q});
    } else {
      gens.push_back({crt_lift(smallest_primitive_root(q, p), q, modulus), q / p * (p - 1), p, q});
    }
  }
  return gens;
}

DirichletCharacter::DirichletCharacter(int64_t modulus, std::vector<Generator> gens,
                                       std::vector<int64_t> exps)
    : modulus_(modulus), gens_(std::move(gens)), exps_(std::move(exps)) {
  order_ = 1;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    exps_[i] = arith::mod(exps_[i], gens_[i].order);
    order_ = arith::lcm(order_, gens_[i].order / arith::gcd(gens_[i].order, exps_[i]));
  }
  // Value table by walking the generated group: every unit is a product of
  // generator powers in exactly one way.
  auto table = std::make_shared<std::vector<int32_t>>(static_cast<std::size_t>(modulus_), -1);
  std::vector<int64_t> elems{1 % modulus_};
  std::vector<int64_t> logs{0};
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const int64_t step = exps_[i] * order_ / gens_[i].order;
    std::vector<int64_t> ne, nl;
    ne.reserve(elems.size() * static_cast<std::size_t>(gens_[i].order));
    for (std::size_t k = 0; k < elems.size(); ++k) {
      int64_t x = elems[k], l = logs[k];
      for (int64_t j = 0; j < gens_[i].order; ++j) {
        ne.push_back(x);
        nl.push_back(l);
        x = arith::mulmod(x, gens_[i].value, modulus_);
        l = (l + step) % order_;
      }
    }
    elems = std::move(ne);
    logs = std::move(nl);
  }
  for (std::size_t k = 0; k < elems.size(); ++k) {
    (*table)[static_cast<std::size_t>(elems[k])] = static_cast<int32_t>(logs[k]);
  }
  table_ = std::move(table);
}

DirichletCharacter DirichletCharacter::trivial(int64_t modulus) {
  return from_exponents(modulus, {});
}

DirichletCharacter DirichletCharacter::from_exponents(int64_t modulus,
                                                      std::vector<int64_t> exponents) {
  if (modulus < 1 || modulus > kMaxModulus) {
    throw InputError("character modulus out of range: " + std::to_string(modulus));
  }
  auto gens = standard_generators(modulus);
  if (exponents.empty()) exponents.assign(gens.size(), 0);
  if (exponents.size() != gens.size()) {
    throw InputError("character mod " + std::to_string(modulus) + " needs " +
                     std::to_string(gens.size()) + " exponents");
  }
  return DirichletCharacter(modulus, std::move(gens), std::move(exponents));
}

DirichletCharacter DirichletCharacter::parse(const std::string& text, int64_t modulus) {
  if (text == "none" || text == "trivial" || text.empty()) return trivial(modulus);
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("character spec must be M:e1,e2,...: " + text);
  int64_t m = 0;
  std::vector<int64_t> exps;
  try {
    std::size_t used = 0;
    m = std::stoll(text.substr(0, colon), &used);
    if (used != colon) throw InputError("bad character modulus in " + text);
    std::stringstream rest(text.substr(colon + 1));
    std::string tok;
    while (std::getline(rest, tok, ',')) {
      if (tok.empty()) continue;
      std::size_t n = 0;
      exps.push_back(std::stoll(tok, &n));
      if (n != tok.size()) throw InputError("bad character exponent " + tok);
    }
  } catch (const std::logic_error&) {
    throw InputError("malformed character spec: " + text);
  }
  if (modulus > 0 && m != modulus) {
    if (m < 1 || modulus % m != 0) {
      throw InputError("character modulus " + std::to_string(m) + " does not divide " +
                       std::to_string(modulus));
    }
    return from_exponents(m, std::move(exps)).extend(modulus);
  }
  return from_exponents(m, std::move(exps));
}

std::optional<int64_t> DirichletCharacter::log_value(int64_t a) const {
  const int32_t t = (*table_)[static_cast<std::size_t>(arith::mod(a, modulus_))];
  if (t < 0) return std::nullopt;
  return t;
}

RingElement DirichletCharacter::value(int64_t a, const RingPtr& ring) const {
  const auto k = log_value(a);
  if (!k) return ring->zero();
  if (*k == 0) return ring->one();
  const auto zeta = ring->root_of_unity(order_);
  if (!zeta) {
    throw PreconditionError("ring " + ring->describe() + " has no primitive " +
                            std::to_string(order_) + "-th root of unity for character " +
                            to_string());
  }
  return zeta->pow(static_cast<uint64_t>(*k));
}

int64_t DirichletCharacter::integer_value(int64_t a) const {
  if (order_ > 2) {
    throw PreconditionError("character " + to_string() + " is not integer valued");
  }
  const auto k = log_value(a);
  if (!k) return 0;
  return *k == 0 ? 1 : -1;
}

std::vector<int64_t> DirichletCharacter::discrete_log(int64_t a) const {
  if (arith::gcd(a, modulus_) != 1) throw PreconditionError("discrete_log of a non-unit");
  std::vector<int64_t> out(gens_.size(), 0);
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const Generator& g = gens_[i];
    const int64_t q = g.prime_power;
    int64_t x = arith::mod(a, q);
    if (g.prime == 2) {
      // a = (-1)^s 5^t modulo q
      if (g.order == 2 && arith::mod(g.value, q) == q - 1) {
        out[i] = x % 4 == 1 ? 0 : 1;
        continue;
      }
      if (x % 4 == 3) x = q - x;
    }
    const int64_t base = arith::mod(g.value, q);
    int64_t y = 1;
    int64_t j = 0;
    while (y != x) {
      y = arith::mulmod(y, base, q);
      ++j;
      if (j > g.order) throw PreconditionError("discrete_log failed");
    }
    out[i] = j;
  }
  return out;
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& o) const {
  if (modulus_ != o.modulus_) {
    const int64_t l = arith::lcm(modulus_, o.modulus_);
    return extend(l) * o.extend(l);
  }
  std::vector<int64_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] + o.exps_[i];
  return DirichletCharacter(modulus_, gens_, std::move(e));
}

DirichletCharacter DirichletCharacter::pow(int64_t k) const {
  std::vector<int64_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = arith::mulmod(arith::mod(exps_[i], gens_[i].order), arith::mod(k, gens_[i].order),
                         gens_[i].order);
  }
  return DirichletCharacter(modulus_, gens_, std::move(e));
}

DirichletCharacter DirichletCharacter::extend(int64_t new_modulus) const {
  if (new_modulus % modulus_ != 0) throw PreconditionError("extend: modulus does not divide");
  auto gens = standard_generators(new_modulus);
  std::vector<int64_t> exps(gens.size(), 0);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    // chi(g_i) = zeta_order^k  ->  exponent k * n_i / order modulo n_i
    const int64_t k = log_value(gens[i].value).value_or(0);
    const int64_t n = gens[i].order;
    // the order of chi(g_i) divides n, so k * n / order is an integer
    exps[i] = k * n / order_ % n;
  }
  DirichletCharacter out(new_modulus, std::move(gens), std::move(exps));
  return out;
}

std::optional<DirichletCharacter> DirichletCharacter::restrict_to(int64_t d) const {
  if (d < 1 || modulus_ % d != 0) return std::nullopt;
  // Trivial on units congruent to 1 mod d <=> factors through (Z/d)^x.
  for (int64_t a = 1; a < modulus_; a += d) {
    if (arith::gcd(a, modulus_) != 1) continue;
    if (log_value(a) != 0) return std::nullopt;
  }
  auto gens = standard_generators(d);
  std::vector<int64_t> exps(gens.size(), 0);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    // lift g_i to a unit modulo M
    int64_t x = gens[i].value;
    while (arith::gcd(x, modulus_) != 1) x += d;
    const int64_t k = *log_value(x);
    exps[i] = k * gens[i].order / order_ % gens[i].order;
  }
  return DirichletCharacter(d, std::move(gens), std::move(exps));
}

std::string DirichletCharacter::to_string() const {
  std::ostringstream out;
  out << modulus_ << ":";
  for (std::size_t i = 0; i < exps_.size(); ++i) out << (i ? "," : "") << exps_[i];
  return out.str();
}

}  // namespace mfpm
