#include "mfpm/number_field.hpp"

#include <algorithm>
#include <sstream>

#include "mfpm/errors.hpp"

namespace mfpm {

NfElement::NfElement(NfPtr field, std::vector<Integer> coeffs)
    : field_(std::move(field)), coeffs_(field_->reduce(std::move(coeffs))) {}

void NfElement::require_same_field(const NfElement& o) const {
  if (!field_ || !o.field_ || !field_->same_as(*o.field_)) {
    throw RingMismatchError("number field elements from different fields");
  }
}

NfElement NfElement::operator+(const NfElement& o) const {
  require_same_field(o);
  NfElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

NfElement NfElement::operator-(const NfElement& o) const {
  require_same_field(o);
  NfElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

NfElement NfElement::operator-() const { return scaled(-1); }

NfElement NfElement::operator*(const NfElement& o) const {
  require_same_field(o);
  std::vector<Integer> prod(2 * coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return NfElement(field_, std::move(prod));
}

NfElement NfElement::scaled(const Integer& k) const {
  NfElement r = *this;
  for (auto& c : r.coeffs_) c *= k;
  return r;
}

bool NfElement::operator==(const NfElement& o) const {
  require_same_field(o);
  return coeffs_ == o.coeffs_;
}

bool NfElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
}

bool NfElement::divisible_by(const Integer& d) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const Integer& c) {
    return mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()) != 0;
  });
}

NfElement NfElement::divexact(const Integer& d) const {
  if (!divisible_by(d)) throw PreconditionError("inexact division of " + to_string());
  NfElement r = *this;
  for (auto& c : r.coeffs_) c /= d;
  return r;
}

std::string NfElement::to_string() const {
  if (std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Integer& c) { return c == 0; })) {
    return coeffs_[0].get_str();
  }
  std::string out = "(";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out += (i ? " " : "") + coeffs_[i].get_str();
  return out + ")";
}

// ---------------------------------------------------------------------------

NfPtr NumberField::create(std::vector<Integer> poly) {
  if (poly.size() < 2 || poly.back() != 1) {
    throw InputError("number field polynomial must be monic of degree >= 1");
  }
  return NfPtr(new NumberField(std::move(poly)));
}

NfPtr NumberField::parse(const std::string& text) {
  std::string body = text;
  if (body.rfind("nf:", 0) == 0) body = body.substr(3);
  std::vector<Integer> poly;
  std::stringstream in(body);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    Integer c;
    if (tok.empty() || c.set_str(tok, 10) != 0) throw InputError("bad polynomial coefficient '" + tok + "'");
    poly.push_back(c);
  }
  return create(std::move(poly));
}

std::string NumberField::describe() const {
  std::string out = "nf:";
  for (std::size_t i = 0; i < poly_.size(); ++i) out += (i ? "," : "") + poly_[i].get_str();
  return out;
}

std::vector<Integer> NumberField::reduce(std::vector<Integer> c) const {
  const std::size_t d = poly_.size() - 1;
  for (std::size_t i = c.size(); i-- > d;) {
    if (c[i] == 0) continue;
    const Integer lead = c[i];
    for (std::size_t j = 0; j < d; ++j) c[i - d + j] -= lead * poly_[j];
    c[i] = 0;
  }
  c.resize(d);
  return c;
}

NfElement NumberField::zero() const { return NfElement(shared_from_this(), {}); }
NfElement NumberField::one() const { return NfElement(shared_from_this(), {1}); }
NfElement NumberField::from_integer(const Integer& x) const {
  return NfElement(shared_from_this(), {x});
}
NfElement NumberField::generator() const { return NfElement(shared_from_this(), {0, 1}); }

NfElement NumberField::parse_element(const std::string& text) const {
  std::string t = text;
  std::vector<Integer> c;
  if (!t.empty() && t.front() == '(') {
    if (t.back() != ')') throw InputError("unterminated number field element " + text);
    std::stringstream in(t.substr(1, t.size() - 2));
    std::string tok;
    while (in >> tok) {
      Integer x;
      if (x.set_str(tok, 10) != 0) throw InputError("bad coefficient '" + tok + "'");
      c.push_back(x);
    }
    if (c.empty() || c.size() > poly_.size() - 1) {
      throw InputError("number field element has wrong length: " + text);
    }
  } else {
    Integer x;
    if (t.empty() || x.set_str(t, 10) != 0) throw InputError("bad coefficient '" + text + "'");
    c.push_back(x);
  }
  return NfElement(shared_from_this(), std::move(c));
}

namespace {

RingElement eval(const std::vector<Integer>& poly, const RingElement& x) {
  RingElement acc = x.ring()->zero();
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * x + x.ring()->from_integer(poly[i]);
  return acc;
}

}  // namespace

std::vector<RingElement> NumberField::roots_in(const RingPtr& ring) const {
  std::vector<Integer> deriv;
  for (std::size_t i = 1; i < poly_.size(); ++i) deriv.push_back(poly_[i] * Integer(static_cast<long>(i)));
  std::vector<RingElement> roots;
  for (const auto& r0 : ring->residues_mod_pi_power(1)) {
    if (eval(poly_, r0).valuation() < 1) continue;
    if (!eval(deriv, r0).is_unit()) continue;  // only simple residual roots lift uniquely
    RingElement r = r0;
    for (int64_t it = 0; it <= ring->gamma(); ++it) {
      const RingElement val = eval(poly_, r);
      if (val.is_zero()) break;
      r = r - val * eval(deriv, r).inverse();
    }
    if (!eval(poly_, r).is_zero()) throw Error("Hensel lifting did not converge");
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

RingElement reduce_element(const NfElement& x, const RingElement& root) {
  const RingPtr& ring = root.ring();
  RingElement acc = ring->zero();
  const auto& c = x.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * root + ring->from_integer(c[i]);
  return acc;
}

}  // namespace mfpm
