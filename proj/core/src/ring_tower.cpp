#include "mfpm/ring_tower.hpp"

#include <algorithm>
#include <sstream>

#include "mfpm/errors.hpp"

namespace mfpm {

namespace {

using Poly = std::vector<int64_t>;  // coefficients over F_p, low to high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& b, int64_t p) {
  trim(a);
  const int64_t lead_inv = arith::invmod(b.back(), p);
  while (a.size() >= b.size()) {
    int64_t c = arith::mulmod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = arith::mod(a[shift + i] - arith::mulmod(c, b[i], p), p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + arith::mulmod(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(r, m, p);
}

Poly poly_gcd(Poly a, Poly b, int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

int64_t ceil_div_nonneg(int64_t a, int64_t b) {
  if (a <= 0) return 0;
  return (a + b - 1) / b;
}

Integer binomial(int64_t n, int64_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

int64_t gamma(int64_t m, int64_t e) {
  if (m < 1 || e < 1) throw PreconditionError("gamma: m and e must be positive");
  return (m - 1) * e + 1;
}

std::optional<std::vector<int64_t>> shipped_unramified_poly(int64_t p, int f) {
  // Conway polynomials, low to high.
  struct Entry {
    int64_t p;
    int f;
    std::vector<int64_t> poly;
  };
  static const std::vector<Entry> table = {
      {2, 2, {1, 1, 1}},       {2, 3, {1, 1, 0, 1}},    {2, 4, {1, 1, 0, 0, 1}},
      {3, 2, {2, 2, 1}},       {3, 3, {1, 2, 0, 1}},    {3, 4, {2, 0, 0, 2, 1}},
      {5, 2, {2, 4, 1}},       {5, 3, {3, 3, 0, 1}},    {5, 4, {2, 4, 4, 0, 1}},
      {7, 2, {3, 6, 1}},       {7, 3, {4, 0, 6, 1}},    {7, 4, {3, 4, 5, 0, 1}},
  };
  for (const auto& e : table) {
    if (e.p == p && e.f == f) return e.poly;
  }
  return std::nullopt;
}

bool irreducible_mod_p(const std::vector<int64_t>& poly, int64_t p) {
  Poly m;
  for (int64_t c : poly) m.push_back(arith::mod(c, p));
  trim(m);
  const int n = static_cast<int>(m.size()) - 1;
  if (n < 1) return false;
  if (n == 1) return true;
  Poly x{0, 1};
  Poly power = poly_mod(x, m, p);
  for (int i = 1; i <= n / 2; ++i) {
    // power <- power^p mod m
    Poly acc{1};
    Poly base = power;
    int64_t e = p;
    while (e > 0) {
      if (e & 1) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
      e >>= 1;
    }
    power = acc;
    Poly diff = power;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = arith::mod(diff[1] - 1, p);
    if (poly_gcd(m, diff, p).size() > 1) return false;
  }
  return true;
}

LocalFieldSpec LocalFieldSpec::rationals(int64_t p) {
  LocalFieldSpec s;
  s.p = p;
  return s;
}

LocalFieldSpec LocalFieldSpec::unramified(int64_t p, int f, std::vector<int64_t> poly) {
  LocalFieldSpec s;
  s.p = p;
  s.unramified_degree = f;
  if (f == 1 && poly.empty()) {
    s.unramified_poly = {0, 1};
  } else if (poly.empty()) {
    auto shipped = shipped_unramified_poly(p, f);
    if (!shipped) {
      throw InputError("no shipped unramified polynomial for p=" + std::to_string(p) +
                       " f=" + std::to_string(f) + "; supply poly=");
    }
    s.unramified_poly = *shipped;
  } else {
    s.unramified_poly = std::move(poly);
  }
  return s;
}

LocalFieldSpec LocalFieldSpec::cyclotomic(int64_t p, int s) {
  LocalFieldSpec spec = rationals(p);
  spec.cyclotomic_exponent = s;
  return spec;
}

LocalFieldSpec LocalFieldSpec::compositum(int64_t p, int f, std::vector<int64_t> poly, int s) {
  LocalFieldSpec spec = unramified(p, f, std::move(poly));
  spec.cyclotomic_exponent = s;
  return spec;
}

int LocalFieldSpec::ramification_index() const {
  if (cyclotomic_exponent == 0) return 1;
  return static_cast<int>(arith::ipow(p, cyclotomic_exponent - 1) * (p - 1));
}

void LocalFieldSpec::validate() const {
  if (!arith::is_prime(p)) throw InputError("ring: p=" + std::to_string(p) + " is not prime");
  if (unramified_degree < 1) throw InputError("ring: unramified degree must be positive");
  if (cyclotomic_exponent < 0) throw InputError("ring: cyclotomic exponent must be >= 0");
  if (static_cast<int>(unramified_poly.size()) != unramified_degree + 1 ||
      unramified_poly.back() != 1) {
    throw InputError("ring: unramified polynomial must be monic of degree f");
  }
  if (unramified_degree > 1 && !irreducible_mod_p(unramified_poly, p)) {
    throw InputError("ring: unramified polynomial is reducible modulo p");
  }
}

// ---------------------------------------------------------------------------

ModRing::ModRing(const LocalFieldSpec& spec, int m) : spec_(spec), m_(m) {
  spec_.validate();
  if (m < 1) throw InputError("ring: precision exponent m must be >= 1");
  e_ = spec_.ramification_index();
  f_ = spec_.unramified_degree;
  gamma_ = mfpm::gamma(m, e_);
  pm_ = arith::ipow(spec_.p, m);
  if (pm_ > (int64_t{1} << 62)) throw InputError("ring: p^m too large");
  moduli_.resize(static_cast<std::size_t>(e_) * f_);
  for (int b = 0; b < e_; ++b) {
    int64_t mod = arith::ipow(spec_.p, static_cast<int>(ceil_div_nonneg(gamma_ - b, e_)));
    for (int a = 0; a < f_; ++a) moduli_[static_cast<std::size_t>(b) * f_ + a] = mod;
  }
  for (int64_t c : spec_.unramified_poly) unram_poly_.push_back(arith::mod(c, pm_));

  if (spec_.cyclotomic_exponent > 0) {
    // Phi_{p^s}(1 - pi) = sum_j (1 - pi)^(j p^(s-1)), made monic.
    const int64_t step = arith::ipow(spec_.p, spec_.cyclotomic_exponent - 1);
    std::vector<Integer> coeffs(static_cast<std::size_t>(e_) + 1, 0);
    for (int64_t j = 0; j < spec_.p; ++j) {
      const int64_t n = j * step;
      for (int64_t k = 0; k <= n; ++k) {
        Integer term = binomial(n, k);
        if (k % 2 == 1) term = -term;
        coeffs[static_cast<std::size_t>(k)] += term;
      }
    }
    const bool negate = (e_ % 2 == 1);
    for (auto& c : coeffs) {
      if (negate) c = -c;
      eisenstein_poly_.push_back(arith::mod(c, pm_));
    }
  } else {
    eisenstein_poly_ = {arith::mod(-spec_.p, pm_), 1};
  }
}

RingPtr ModRing::create(const LocalFieldSpec& spec, int m) {
  return RingPtr(new ModRing(spec, m));
}

RingPtr ModRing::integers_mod(int64_t p, int m) {
  return create(LocalFieldSpec::rationals(p), m);
}

RingPtr ModRing::parse(const std::string& text) {
  std::istringstream in(text);
  std::string token;
  in >> token;
  if (token != "ring") throw InputError("ring spec must start with 'ring': " + text);
  int64_t p = 0;
  int m = 0;
  int f = 1;
  int s = 0;
  std::vector<int64_t> poly;
  auto value_of = [&](const std::string& tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw InputError("ring spec: expected key=value, got " + tok);
    return tok.substr(eq + 1);
  };
  try {
    while (in >> token) {
      if (token == "cyclotomic" || token == "unramified") continue;
      const std::string key = token.substr(0, token.find('='));
      const std::string val = value_of(token);
      if (key == "p") {
        p = std::stoll(val);
      } else if (key == "m") {
        m = std::stoi(val);
      } else if (key == "s") {
        s = std::stoi(val);
      } else if (key == "f") {
        f = std::stoi(val);
      } else if (key == "poly") {
        std::istringstream cs(val);
        std::string c;
        while (std::getline(cs, c, ',')) poly.push_back(std::stoll(c));
      } else {
        throw InputError("ring spec: unknown key " + key);
      }
    }
  } catch (const std::logic_error&) {
    throw InputError("ring spec: malformed number in " + text);
  }
  if (p == 0 || m == 0) throw InputError("ring spec needs p= and m=: " + text);
  return create(LocalFieldSpec::compositum(p, f, poly, s), m);
}

Integer ModRing::cardinality() const {
  return arith::ipow(Integer(spec_.p), static_cast<unsigned long>(f_ * gamma_));
}

std::string ModRing::describe() const {
  std::ostringstream out;
  out << "ring p=" << spec_.p << " m=" << m_;
  if (f_ > 1) {
    out << " unramified f=" << f_ << " poly=";
    for (std::size_t i = 0; i < spec_.unramified_poly.size(); ++i) {
      out << (i ? "," : "") << spec_.unramified_poly[i];
    }
  }
  if (spec_.cyclotomic_exponent > 0) out << " cyclotomic s=" << spec_.cyclotomic_exponent;
  return out.str();
}

RingPtr ModRing::with_precision(int m) const { return create(spec_, m); }

RingPtr ModRing::base_ring() const { return integers_mod(spec_.p, m_); }

void ModRing::canonicalize(std::vector<int64_t>& coords) const {
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = arith::mod(coords[i], moduli_[i]);
}

RingElement ModRing::zero() const {
  return RingElement(shared_from_this(), std::vector<int64_t>(moduli_.size(), 0));
}

RingElement ModRing::one() const { return from_integer(1); }

RingElement ModRing::from_integer(int64_t x) const {
  std::vector<int64_t> c(moduli_.size(), 0);
  c[0] = x;
  return element(std::move(c));
}

RingElement ModRing::from_integer(const Integer& x) const {
  return from_integer(arith::mod(x, pm_));
}

RingElement ModRing::element(std::vector<int64_t> coords) const {
  if (coords.size() != moduli_.size()) throw PreconditionError("element: wrong coordinate count");
  canonicalize(coords);
  return RingElement(shared_from_this(), std::move(coords));
}

RingElement ModRing::uniformizer() const {
  if (e_ == 1) return from_integer(spec_.p);
  std::vector<int64_t> c(moduli_.size(), 0);
  c[static_cast<std::size_t>(f_)] = 1;
  return element(std::move(c));
}

RingElement ModRing::unramified_generator() const {
  std::vector<int64_t> c(moduli_.size(), 0);
  if (f_ > 1) {
    c[1] = 1;
  } else {
    c[0] = arith::mod(-unram_poly_[0], pm_);
  }
  return element(std::move(c));
}

RingElement ModRing::cyclotomic_zeta() const {
  if (spec_.cyclotomic_exponent == 0) throw PreconditionError("ring has no cyclotomic part");
  return one() - uniformizer();
}

RingElement ModRing::pi_power(int64_t v) const {
  if (v >= gamma_) return zero();
  return uniformizer().pow(static_cast<uint64_t>(v));
}

std::vector<int64_t> ModRing::multiply_coords(const std::vector<int64_t>& a,
                                              const std::vector<int64_t>& b) const {
  const std::size_t f = static_cast<std::size_t>(f_);
  const std::size_t e = static_cast<std::size_t>(e_);
  const std::size_t fx = 2 * f - 1;
  const std::size_t ey = 2 * e - 1;
  std::vector<int64_t> prod(fx * ey, 0);
  for (std::size_t b1 = 0; b1 < e; ++b1) {
    for (std::size_t a1 = 0; a1 < f; ++a1) {
      const int64_t x = a[b1 * f + a1];
      if (x == 0) continue;
      for (std::size_t b2 = 0; b2 < e; ++b2) {
        for (std::size_t a2 = 0; a2 < f; ++a2) {
          const int64_t y = b[b2 * f + a2];
          if (y == 0) continue;
          int64_t& slot = prod[(b1 + b2) * fx + a1 + a2];
          slot = (slot + arith::mulmod(x, y, pm_)) % pm_;
        }
      }
    }
  }
  // pi^B with B >= e: pi^e = -sum_{j<e} r_j pi^j.
  for (std::size_t deg = ey; deg-- > e;) {
    for (std::size_t ax = 0; ax < fx; ++ax) {
      const int64_t c = prod[deg * fx + ax];
      if (c == 0) continue;
      prod[deg * fx + ax] = 0;
      for (std::size_t j = 0; j < e; ++j) {
        int64_t& slot = prod[(deg - e + j) * fx + ax];
        slot = arith::mod(slot - arith::mulmod(c, eisenstein_poly_[j], pm_), pm_);
      }
    }
  }
  std::vector<int64_t> out(f * e, 0);
  for (std::size_t by = 0; by < e; ++by) {
    int64_t* row = &prod[by * fx];
    for (std::size_t deg = fx; deg-- > f;) {
      const int64_t c = row[deg];
      if (c == 0) continue;
      row[deg] = 0;
      for (std::size_t i = 0; i < f; ++i) {
        row[deg - f + i] = arith::mod(row[deg - f + i] - arith::mulmod(c, unram_poly_[i], pm_), pm_);
      }
    }
    for (std::size_t ax = 0; ax < f; ++ax) out[by * f + ax] = row[ax];
  }
  canonicalize(out);
  return out;
}

std::optional<RingElement> ModRing::root_of_unity(int64_t n) const {
  if (n < 1) throw PreconditionError("root_of_unity: order must be positive");
  const int64_t p = spec_.p;
  int t = arith::valuation(n, p);
  const int64_t tame = n / arith::ipow(p, t);
  const int64_t q = arith::ipow(p, f_);
  if ((q - 1) % tame != 0) return std::nullopt;

  RingElement result = one();
  if (tame > 1) {
    // Smallest primitive element of the residue field, then its Teichmuller lift.
    RingPtr residue = create(LocalFieldSpec::unramified(p, f_, spec_.unramified_poly), 1);
    const auto primes = arith::factor(q - 1);
    std::optional<RingElement> generator;
    for (const auto& y : residue->elements()) {
      if (y.is_zero()) continue;
      bool primitive = true;
      for (auto [l, k] : primes) {
        if (y.pow(static_cast<uint64_t>((q - 1) / l)).is_one()) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        generator = y;
        break;
      }
    }
    std::vector<int64_t> coords(moduli_.size(), 0);
    for (int a = 0; a < f_; ++a) coords[static_cast<std::size_t>(a)] = generator->coords()[a];
    RingElement w = element(std::move(coords));
    for (int i = 1; i < m_; ++i) w = w.pow(static_cast<uint64_t>(q));
    result = w.pow(static_cast<uint64_t>((q - 1) / tame));
  }
  if (t > 0) {
    const int s = spec_.cyclotomic_exponent;
    if (p == 2 && t == 1 && s == 0) {
      result = -result;
    } else if (t > s) {
      return std::nullopt;
    } else {
      result *= cyclotomic_zeta().pow(static_cast<uint64_t>(arith::ipow(p, s - t)));
    }
  }
  return result;
}

namespace {

std::vector<std::vector<int64_t>> mixed_radix(const std::vector<int64_t>& radices) {
  std::vector<std::vector<int64_t>> out;
  std::vector<int64_t> cur(radices.size(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    for (; i < cur.size(); ++i) {
      if (++cur[i] < radices[i]) break;
      cur[i] = 0;
    }
    if (i == cur.size()) break;
  }
  return out;
}

}  // namespace

std::vector<RingElement> ModRing::elements() const {
  std::vector<RingElement> out;
  for (auto& c : mixed_radix(moduli_)) out.push_back(element(c));
  return out;
}

std::vector<RingElement> ModRing::residues_mod_pi_power(int64_t k) const {
  std::vector<int64_t> radices(moduli_.size());
  for (int b = 0; b < e_; ++b) {
    const int64_t mod = std::min(
        moduli_[static_cast<std::size_t>(b) * f_],
        arith::ipow(spec_.p, static_cast<int>(ceil_div_nonneg(std::min(k, gamma_) - b, e_))));
    for (int a = 0; a < f_; ++a) radices[static_cast<std::size_t>(b) * f_ + a] = mod;
  }
  std::vector<RingElement> out;
  for (auto& c : mixed_radix(radices)) out.push_back(element(c));
  return out;
}

// ---------------------------------------------------------------------------

void RingElement::require_same_ring(const RingElement& o) const {
  if (!ring_ || !o.ring_) throw PreconditionError("operation on an uninitialized ring element");
  if (ring_ != o.ring_ && !ring_->same_as(*o.ring_)) {
    throw RingMismatchError("ring mismatch: " + ring_->describe() + " vs " + o.ring_->describe());
  }
}

RingElement RingElement::operator+(const RingElement& o) const {
  require_same_ring(o);
  std::vector<int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int64_t mod = ring_->moduli_[i];
    c[i] = coords_[i] + o.coords_[i];
    if (c[i] >= mod) c[i] -= mod;
  }
  return RingElement(ring_, std::move(c));
}

RingElement RingElement::operator-(const RingElement& o) const {
  require_same_ring(o);
  std::vector<int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = coords_[i] - o.coords_[i];
    if (c[i] < 0) c[i] += ring_->moduli_[i];
  }
  return RingElement(ring_, std::move(c));
}

RingElement RingElement::operator-() const { return ring_->zero() - *this; }

RingElement RingElement::operator*(const RingElement& o) const {
  require_same_ring(o);
  return RingElement(ring_, ring_->multiply_coords(coords_, o.coords_));
}

RingElement RingElement::scaled(int64_t k) const {
  std::vector<int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int64_t mod = ring_->moduli_[i];
    c[i] = arith::mulmod(coords_[i], arith::mod(k, mod), mod);
  }
  return RingElement(ring_, std::move(c));
}

RingElement RingElement::scaled(const Integer& k) const {
  return scaled(arith::mod(k, ring_->working_modulus()));
}

RingElement RingElement::pow(uint64_t k) const {
  RingElement result = ring_->one();
  RingElement base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

bool RingElement::operator==(const RingElement& o) const {
  require_same_ring(o);
  return coords_ == o.coords_;
}

bool RingElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](int64_t c) { return c == 0; });
}

bool RingElement::is_one() const { return *this == ring_->one(); }

bool RingElement::is_unit() const { return valuation() == 0; }

int64_t RingElement::valuation() const {
  const int64_t p = ring_->p();
  const int f = ring_->f();
  const int e = ring_->e();
  int64_t best = ring_->gamma();
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    const int64_t b = static_cast<int64_t>(i) / f;
    best = std::min<int64_t>(best, e * arith::valuation(coords_[i], p) + b);
  }
  return best;
}

RingElement RingElement::inverse() const {
  if (!is_unit()) throw PreconditionError("inverse of non-unit " + to_string());
  const int64_t q = arith::ipow(ring_->p(), ring_->f());
  // y0 inverts modulo pi; Newton steps y <- y (2 - u y) double the precision.
  RingElement y = pow(static_cast<uint64_t>(q - 2));
  const RingElement two = ring_->from_integer(2);
  for (int iter = 0; iter < 128 && !(*this * y).is_one(); ++iter) {
    y = y * (two - *this * y);
  }
  return y;
}

RingElement RingElement::divide_by_pi_power(int64_t v) const {
  if (v == 0) return *this;
  if (valuation() < v) {
    throw PreconditionError("divide_by_pi_power: " + to_string() + " is not divisible by pi^" +
                            std::to_string(v));
  }
  if (v >= ring_->gamma()) return ring_->zero();
  const int64_t p = ring_->p();
  if (ring_->e() == 1) {
    const int64_t pv = arith::ipow(p, static_cast<int>(v));
    std::vector<int64_t> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] / pv;
    return ring_->element(std::move(c));
  }
  // Work in precision m + v: with pi * w = -r_0 = p * c (c = +-1) we have
  // a / pi^v = a * w^v / (p c)^v, and the division by p^v is exact there.
  RingPtr high = ring_->with_precision(ring_->m() + static_cast<int>(v));
  const auto& rel = high->eisenstein_poly_;
  const int e = ring_->e();
  const int f = ring_->f();
  std::vector<int64_t> wc(static_cast<std::size_t>(e) * f, 0);
  for (int j = 1; j <= e; ++j) wc[static_cast<std::size_t>(j - 1) * f] = rel[static_cast<std::size_t>(j)];
  RingElement w = high->element(wc);
  const int64_t r0 = rel[0] == p ? p : -p;  // r_0 = +-p
  const int64_t c = -r0 / p;
  RingElement lifted = at_precision(high) * w.pow(static_cast<uint64_t>(v));
  const int64_t pv = arith::ipow(p, static_cast<int>(v));
  std::vector<int64_t> q(lifted.coords_.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = lifted.coords_[i] / pv;
  RingElement t = high->element(std::move(q));
  if (c == -1 && v % 2 == 1) t = -t;
  return t.at_precision(ring_);
}

RingElement RingElement::remainder_mod_pi_power(int64_t v) const {
  if (v >= ring_->gamma()) return *this;
  const int f = ring_->f();
  const int e = ring_->e();
  std::vector<int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int64_t b = static_cast<int64_t>(i) / f;
    const int64_t mod = arith::ipow(ring_->p(), static_cast<int>(ceil_div_nonneg(v - b, e)));
    c[i] = arith::mod(coords_[i], mod);
  }
  return ring_->element(std::move(c));
}

RingElement RingElement::at_precision(const RingPtr& target) const {
  if (!(target->spec() == ring_->spec())) {
    throw RingMismatchError("at_precision: different fields " + ring_->describe() + " and " +
                            target->describe());
  }
  return target->element(coords_);
}

std::string RingElement::to_string() const {
  const int f = ring_->f();
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    const int a = static_cast<int>(i) % f;
    const int b = static_cast<int>(i) / f;
    if (!first) out << " + ";
    first = false;
    out << coords_[i];
    if (a > 0) out << "*x" << (a > 1 ? "^" + std::to_string(a) : "");
    if (b > 0) out << "*pi" << (b > 1 ? "^" + std::to_string(b) : "");
  }
  if (first) out << "0";
  return out.str();
}

// ---------------------------------------------------------------------------

RingElement embed_base(int64_t x, int64_t modulus, const RingPtr& ring) {
  if (modulus != ring->working_modulus()) {
    throw PreconditionError("embed_base: residue modulo " + std::to_string(modulus) +
                            " does not match " + ring->describe());
  }
  return ring->from_integer(x);
}

bool congruent_mod_pm(const RingElement& alpha, const RingElement& beta) { return alpha == beta; }

RingElement teichmuller(int64_t a, const RingPtr& ring) {
  const int64_t p = ring->p();
  if (arith::gcd(a, p) != 1) throw PreconditionError("teichmuller: argument is not a unit mod p");
  const int64_t pm = ring->working_modulus();
  return ring->from_integer(arith::powmod(a, static_cast<uint64_t>(pm / p), pm));
}

std::optional<int64_t> in_base_subring(const RingElement& alpha) {
  const auto& c = alpha.coords();
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] != 0) return std::nullopt;
  }
  return c[0];
}

RingElement embed_into(const RingElement& alpha, const RingPtr& larger) {
  const ModRing& small = *alpha.ring();
  const LocalFieldSpec& ks = small.spec();
  const LocalFieldSpec& ls = larger->spec();
  if (ks.p != ls.p || small.m() != larger->m()) {
    throw RingMismatchError("embed_into: p and m must agree");
  }
  if (ks.unramified_degree > 1 && (ks.unramified_degree != ls.unramified_degree ||
                                   ks.unramified_poly != ls.unramified_poly)) {
    throw RingMismatchError("embed_into: unramified parts differ");
  }
  if (ks.cyclotomic_exponent > ls.cyclotomic_exponent) {
    throw RingMismatchError("embed_into: target has a smaller cyclotomic part");
  }
  RingElement x_image = larger->unramified_generator();
  RingElement pi_image = larger->from_integer(ks.p);
  if (small.e() > 1) {
    const int64_t step = arith::ipow(ks.p, ls.cyclotomic_exponent - ks.cyclotomic_exponent);
    pi_image = larger->one() - larger->cyclotomic_zeta().pow(static_cast<uint64_t>(step));
  }
  const int f = small.f();
  RingElement result = larger->zero();
  RingElement pi_pow = larger->one();
  for (int b = 0; b < small.e(); ++b) {
    RingElement x_pow = larger->one();
    for (int a = 0; a < f; ++a) {
      const int64_t c = alpha.coords()[static_cast<std::size_t>(b) * f + a];
      if (c != 0) result += (x_pow * pi_pow).scaled(c);
      x_pow *= x_image;
    }
    pi_pow *= pi_image;
  }
  return result;
}

}  // namespace mfpm
