#include "mfpm/nebentypus.hpp"

#include <set>

#include "mfpm/errors.hpp"

namespace mfpm {

namespace {

void require_odd_prime(int64_t p) {
  if (!arith::is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (p == 2) throw PreconditionError("nebentypus decomposition needs an odd prime");
}

// Unit of Z/(a b) congruent to x mod a and 1 mod b, for coprime a, b.
int64_t crt_one(int64_t x, int64_t a, int64_t b) {
  if (a == 1) return 1;
  if (b == 1) return arith::mod(x, a);
  // y = x + a t with y = 1 mod b
  const int64_t t = arith::mulmod(arith::mod(1 - x, b), arith::invmod(arith::mod(a, b), b), b);
  return arith::mod(x + a * t, a * b);
}

// The character modulo `d` given by a -> chi(lift of a that is 1 mod rest).
DirichletCharacter component(const DirichletCharacter& chi, int64_t d, int64_t rest) {
  auto gens = DirichletCharacter::standard_generators(d);
  std::vector<int64_t> exps(gens.size(), 0);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const int64_t k = *chi.log_value(crt_one(gens[i].value, d, rest));
    exps[i] = k * gens[i].order / chi.order() % gens[i].order;
  }
  return DirichletCharacter::from_exponents(d, std::move(exps));
}

}  // namespace

DirichletCharacter teichmuller_character(int64_t p, int r) {
  require_odd_prime(p);
  if (r < 1) throw PreconditionError("Teichmuller character needs r >= 1");
  const int64_t q = arith::ipow(p, r);
  const auto g = DirichletCharacter::standard_generators(q).at(0);
  const auto g0 = DirichletCharacter::standard_generators(p).at(0);
  // omega(g) = omega(g0)^t with g = g0^t mod p, and omega(g0) = zeta_{p-1}.
  int64_t t = 0;
  for (int64_t x = 1; x != arith::mod(g.value, p); x = arith::mulmod(x, g0.value, p)) ++t;
  return DirichletCharacter::from_exponents(q, {t * (q / p) % g.order});
}

CharacterDecomposition decompose_character(const DirichletCharacter& chi, int64_t p) {
  require_odd_prime(p);
  const int64_t modulus = chi.modulus();
  CharacterDecomposition d;
  d.p = p;
  d.r = arith::valuation(modulus, p);
  const int64_t q = arith::ipow(p, d.r);
  d.level_prime_to_p = modulus / q;
  d.psi = component(chi, d.level_prime_to_p, q);
  d.eta = DirichletCharacter::trivial(q);
  if (d.r == 0) return d;

  const DirichletCharacter chi_p = component(chi, q, d.level_prime_to_p);
  const int64_t n = chi_p.generators().at(0).order;  // (p - 1) p^(r-1)
  const int64_t e = chi_p.exponents().at(0);
  const int64_t omega_e = teichmuller_character(p, d.r).exponents().at(0);  // t p^(r-1)
  // e = i * omega_e + e_eta with (p - 1) | e_eta
  const int64_t i = arith::mulmod(arith::mod(e, p - 1), arith::invmod(arith::mod(omega_e, p - 1), p - 1), p - 1);
  d.teichmuller_exponent = i;
  const int64_t e_eta = arith::mod(e - i * omega_e, n);
  d.eta = DirichletCharacter::from_exponents(q, {e_eta});
  d.s = d.eta.order() == 1 ? 0 : arith::valuation(d.eta.order(), p);
  if (arith::ipow(p, d.s) != d.eta.order()) {
    throw std::logic_error("eta does not have p-power order");
  }
  if (!(recompose(d) == chi)) throw std::logic_error("character decomposition does not recompose");
  return d;
}

DirichletCharacter recompose(const CharacterDecomposition& d) {
  const int64_t q = arith::ipow(d.p, d.r);
  const int64_t modulus = d.level_prime_to_p * q;
  DirichletCharacter out = d.psi.extend(modulus) * d.eta.extend(modulus);
  if (d.r > 0) out = out * teichmuller_character(d.p, d.r).pow(d.teichmuller_exponent).extend(modulus);
  return out;
}

ObstructionVerdict obstruction_check(const CharacterDecomposition& d, int64_t m) {
  if (m < 1) throw PreconditionError("precision exponent must be positive");
  ObstructionVerdict v;
  const LocalFieldSpec spec =
      d.s == 0 ? LocalFieldSpec::rationals(d.p) : LocalFieldSpec::cyclotomic(d.p, d.s);
  v.ring = ModRing::create(spec, static_cast<int>(m));
  v.ambient_size = v.ring->cardinality();
  std::set<std::vector<int64_t>> image;
  const int64_t pm = v.ring->working_modulus();
  for (int64_t x = 0; x < pm; ++x) image.insert(embed_base(x, pm, v.ring).coords());
  v.base_image_size = static_cast<unsigned long>(image.size());
  v.shortcut = m >= 2 && !d.eta.is_trivial();
  if (d.r > 0) {
    for (const auto& g : d.eta.generators()) {
      EtaValue ev{g.value, d.eta.value(g.value, v.ring), std::nullopt};
      ev.base_residue = in_base_subring(ev.value);
      if (!ev.base_residue) v.blocked = true;
      v.values.push_back(std::move(ev));
    }
  }
  if (v.blocked != v.shortcut) {
    throw std::logic_error("materialized obstruction test disagrees with the shortcut");
  }
  return v;
}

DetData det_data(const EigenSystem& e, int64_t weight, const DirichletCharacter& chi, int64_t ell,
                 const std::optional<CoefficientForm>& f) {
  if (!arith::is_prime(ell)) throw PreconditionError(std::to_string(ell) + " is not prime");
  if (chi.modulus() % ell == 0) {
    throw PreconditionError("ell = " + std::to_string(ell) + " divides the level");
  }
  if (weight < 1) throw PreconditionError("weight must be positive");
  DetData out;
  out.ell = ell;
  const RingPtr& ring = e.ring;
  out.value = ring->from_integer(ell).pow(static_cast<uint64_t>(weight - 1)) * chi.value(ell, ring);
  if (f) {
    const auto op = stroke_matrix(*f->space, ell);
    const CoefficientForm image = f->apply(op);
    // eigenvalue read off at a unit coordinate
    std::optional<RingElement> c;
    for (std::size_t i = 0; i < f->coords.size() && !c; ++i) {
      if (f->coords[i].is_unit()) c = image.coords[i] * f->coords[i].inverse();
    }
    if (!c) throw PreconditionError("form has no unit coordinate");
    for (std::size_t i = 0; i < f->coords.size(); ++i) {
      if (image.coords[i] != *c * f->coords[i]) throw PreconditionError("form is not an eigenform for the stroke operator");
    }
    out.stroke_eigenvalue = *c;
    out.consistent = ring->from_integer(ell) * out.value == *c;
  }
  return out;
}

}  // namespace mfpm
