#include "mfpm/divided_congruence.hpp"

#include <algorithm>
#include <map>

#include "mfpm/nebentypus.hpp"

namespace mfpm {

namespace {

Integer integer_pow(int64_t p, int64_t m) { return arith::ipow(Integer(p), static_cast<unsigned long>(m)); }

IntQExpansion power(const IntQExpansion& f, int64_t e) {
  std::vector<Integer> one(f.coeffs().size(), 0);
  one[0] = 1;
  IntQExpansion result(std::move(one), 1, {0}, DirichletCharacter::trivial(1));
  IntQExpansion base = f;
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

bool congruent(const IntQExpansion& a, const IntQExpansion& b, const Integer& modulus, int64_t upto) {
  for (int64_t n = 0; n <= upto; ++n) {
    Integer diff = a[n] - b[n];
    if (diff % modulus != 0) return false;
  }
  return true;
}

bool divisible(const Integer& x, const Integer& d) { return x % d == 0; }
Integer divide(const Integer& x, const Integer& d) { return x / d; }
bool divisible(const NfElement& x, const Integer& d) { return x.divisible_by(d); }
NfElement divide(const NfElement& x, const Integer& d) { return x.divexact(d); }

template <class C>
DividedCongruence<C> divide_impl(const std::vector<QExpansion<C>>& g, const Integer& pi, int64_t m) {
  if (g.empty()) throw PreconditionError("divide: no forms given");
  if (pi < 2) throw PreconditionError("divide: the uniformizer must be an integer > 1");
  if (m < 1) throw PreconditionError("divide: exponent must be positive");
  int64_t bound = g.front().truncation();
  int64_t level = 1;
  std::vector<int64_t> weights;
  for (const auto& x : g) {
    bound = std::min(bound, x.truncation());
    level = arith::lcm(level, x.level());
    weights.insert(weights.end(), x.weights().begin(), x.weights().end());
  }
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
  std::optional<DirichletCharacter> chi = g.front().character();
  for (const auto& x : g) {
    if (!chi || !x.character() || !(x.character()->extend(arith::lcm(x.character()->modulus(), chi->modulus())) ==
                                     chi->extend(arith::lcm(x.character()->modulus(), chi->modulus())))) {
      chi.reset();
      break;
    }
  }
  const Integer pim = arith::ipow(pi, static_cast<unsigned long>(m));
  std::vector<C> sum;
  for (int64_t n = 0; n <= bound; ++n) {
    C acc = g.front()[n];
    for (std::size_t k = 1; k < g.size(); ++k) acc = acc + g[k][n];
    if (!divisible(acc, pim)) {
      throw CongruenceFailure("sum is not divisible by " + pi.get_str() + "^" + std::to_string(m) +
                                  " at a_" + std::to_string(n),
                              n);
    }
    sum.push_back(divide(acc, pim));
  }
  QExpansion<C> f(std::move(sum), level, weights, chi);
  return DividedCongruence<C>{g, pi, m, std::move(f), bound};
}

RingVector residue_row(const RingQExpansion& f, const RingPtr& field, int64_t upto) {
  RingVector row;
  for (int64_t n = 0; n <= upto; ++n) row.push_back(f[n].at_precision(field));
  return row;
}

bool independent_mod_p(const std::vector<const RingQExpansion*>& forms, int64_t upto) {
  if (forms.empty()) return true;
  const RingPtr field = forms.front()->coeffs().front().ring()->with_precision(1);
  std::vector<RingVector> rows;
  for (const auto* f : forms) rows.push_back(residue_row(*f, field, upto));
  auto h = howell_form(ChainRingMatrix::from_rows(field, rows, static_cast<std::size_t>(upto) + 1));
  return h.H.rows() == forms.size();
}

struct CheckSetup {
  RingPtr ring;
  int64_t upto = 0;
  std::vector<int64_t> primes;
};

CheckSetup prepare(const std::vector<WeightedForm>& forms, int64_t p, int64_t m, int64_t d) {
  if (forms.empty()) throw PreconditionError("no forms given");
  if (p < 3 || !arith::is_prime(p)) throw PreconditionError("weight congruences need an odd prime");
  CheckSetup s;
  s.ring = forms.front().form.coeffs().front().ring();
  if (s.ring->p() != p || s.ring->m() != m) {
    throw RingMismatchError("forms live in " + s.ring->describe() + ", expected precision " +
                            std::to_string(p) + "^" + std::to_string(m));
  }
  s.upto = forms.front().form.truncation();
  int64_t bad = d * p;
  for (const auto& w : forms) {
    if (!w.form.coeffs().front().ring()->same_as(*s.ring)) throw RingMismatchError("forms in different rings");
    s.upto = std::min(s.upto, w.form.truncation());
    bad = arith::lcm(bad, w.form.level());
    bad = arith::lcm(bad, w.chi.modulus());
  }
  for (int64_t l = 2; l < 50; ++l) {
    if (arith::is_prime(l) && bad % l != 0) s.primes.push_back(l);
  }
  return s;
}

RingElement stroke_eigenvalue(const WeightedForm& w, int64_t l, const RingPtr& ring) {
  return ring->from_integer(l).pow(static_cast<uint64_t>(w.weight)) * w.chi.value(l, ring);
}

// Order of eta modulo p^m, computed in Z_p[zeta_{p^s}] at precision m.
int64_t eta_order(const DirichletCharacter& chi, int64_t p, int64_t m) {
  const auto d = decompose_character(chi, p);
  if (d.eta.is_trivial()) return 1;
  const RingPtr ring = ModRing::create(LocalFieldSpec::cyclotomic(p, d.s), static_cast<int>(m));
  int64_t order = 1;
  for (const auto& g : d.eta.generators()) {
    const RingElement v = d.eta.value(g.value, ring);
    RingElement x = v;
    int64_t k = 1;
    while (!x.is_one()) {
      x *= v;
      ++k;
    }
    order = arith::lcm(order, k);
  }
  return order;
}

void finish(WeightCongruenceVerdict& v, const std::vector<WeightedForm>& forms) {
  v.h = 1;
  for (const auto& w : forms) v.h = arith::lcm(v.h, eta_order(w.chi, v.p, v.m));
  const int64_t phi = arith::ipow(v.p, static_cast<int>(v.m - 1)) * (v.p - 1);
  v.modulus = phi / arith::gcd(phi, v.h);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      if (arith::mod(forms[i].weight - forms[j].weight, v.modulus) != 0) v.violations.emplace_back(i, j);
    }
  }
}

}  // namespace

std::vector<Rational> bernoulli_numbers(int n) {
  if (n < 0) throw PreconditionError("bernoulli: negative index");
  std::vector<Rational> a(static_cast<std::size_t>(n) + 1), b(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    b[m] = a[0];
  }
  if (n >= 1) b[1] = -b[1];
  return b;
}

IntQExpansion eisenstein_series_weight(int64_t k, int64_t bound) {
  if (k < 4 || k % 2 != 0) throw PreconditionError("Eisenstein series need even weight >= 4");
  if (bound < 1) throw PreconditionError("truncation must be positive");
  const Rational bk = bernoulli_numbers(static_cast<int>(k)).back();
  Rational factor = Rational(-2 * k) / bk;
  factor.canonicalize();
  if (factor.get_den() != 1) {
    throw PreconditionError("E_" + std::to_string(k) + " has non-integral coefficients (factor " +
                            factor.get_str() + ")");
  }
  std::vector<Integer> a(static_cast<std::size_t>(bound) + 1, 0);
  a[0] = 1;
  // sigma_{k-1}(n) by sieving over divisors
  for (int64_t dv = 1; dv <= bound; ++dv) {
    const Integer pw = arith::ipow(Integer(dv), static_cast<unsigned long>(k - 1));
    for (int64_t n = dv; n <= bound; n += dv) a[n] += pw;
  }
  for (int64_t n = 1; n <= bound; ++n) a[n] *= factor.get_num();
  return IntQExpansion(std::move(a), 1, {k}, DirichletCharacter::trivial(1));
}

IntQExpansion eisenstein_series(int64_t p, int64_t bound) {
  if (!arith::is_prime(p) || p < 5) throw PreconditionError("E_{p-1} needs a prime p >= 5");
  IntQExpansion e = eisenstein_series_weight(p - 1, bound);
  for (int64_t n = 1; n <= bound; ++n) {
    if (arith::mod(e[n], p) != 0) {
      throw std::logic_error("E_{p-1} is not congruent to 1 mod p at a_" + std::to_string(n));
    }
  }
  return e;
}

IntQExpansion equalizing_series(int64_t p, int64_t m, int64_t bound) {
  if (m < 1) throw PreconditionError("precision exponent must be positive");
  IntQExpansion e = [&] {
    if (p == 3) {
      if (m < 2) throw PreconditionError("no level one form of weight 2 is congruent to 1 mod 3");
      return power(eisenstein_series_weight(6, bound), arith::ipow(3, static_cast<int>(m - 2)));
    }
    return power(eisenstein_series(p, bound), arith::ipow(p, static_cast<int>(m - 1)));
  }();
  std::vector<Integer> one(static_cast<std::size_t>(bound) + 1, 0);
  one[0] = 1;
  if (!congruent(e, IntQExpansion(one, 1, {0}), integer_pow(p, m), bound)) {
    throw std::logic_error("equalizing series is not congruent to 1");
  }
  return e;
}

EqualizedForms equalize_weights(const std::vector<IntQExpansion>& forms, int64_t p, int64_t m) {
  if (forms.empty()) throw PreconditionError("no forms given");
  const int64_t phi = arith::ipow(p, static_cast<int>(m - 1)) * (p - 1);
  EqualizedForms out;
  int64_t bound = forms.front().truncation();
  for (const auto& f : forms) {
    out.target_weight = std::max(out.target_weight, f.weight());
    bound = std::min(bound, f.truncation());
  }
  for (const auto& f : forms) {
    if ((out.target_weight - f.weight()) % phi != 0) {
      throw PreconditionError("weights " + std::to_string(f.weight()) + " and " +
                              std::to_string(out.target_weight) + " are not congruent mod " +
                              std::to_string(phi));
    }
  }
  std::map<int64_t, IntQExpansion> powers;
  std::optional<IntQExpansion> base;
  out.audited_truncation = bound;
  const Integer pm = integer_pow(p, m);
  for (const auto& f : forms) {
    const int64_t j = (out.target_weight - f.weight()) / phi;
    out.powers.push_back(j);
    if (j == 0) {
      out.forms.push_back(f);
      continue;
    }
    if (!base) base = equalizing_series(p, m, bound);
    auto it = powers.find(j);
    if (it == powers.end()) it = powers.emplace(j, power(*base, j)).first;
    IntQExpansion g = multiply(f, it->second);
    g.set_level(f.level());
    g.set_character(f.character());
    if (!congruent(f, g, pm, g.truncation())) throw std::logic_error("equalized form changed mod p^m");
    out.audited_truncation = std::min(out.audited_truncation, g.truncation());
    out.forms.push_back(std::move(g));
  }
  return out;
}

DividedCongruence<Integer> divide_congruence(const std::vector<IntQExpansion>& g, const Integer& pi,
                                             int64_t m) {
  return divide_impl(g, pi, m);
}

DividedCongruence<NfElement> divide_congruence(const std::vector<NfQExpansion>& g,
                                               const Integer& pi, int64_t m) {
  for (const auto& x : g) {
    if (!x[0].field()->same_as(*g.front()[0].field())) {
      throw RingMismatchError("forms have coefficients in different number fields");
    }
  }
  return divide_impl(g, pi, m);
}

BasisProvider directory_bases(const std::filesystem::path& dir, int64_t level) {
  return [dir, level](int64_t c) -> SpacePtr {
    for (const char* group : {"G1", "G0"}) {
      const auto path = dir / ("S_" + std::to_string(c) + "_" + group + "_" + std::to_string(level) + ".basis");
      if (!std::filesystem::exists(path)) continue;
      auto s = SpaceBasis::from_file(read_space_file(path));
      if (s->level() != level || !s->single_weight() || s->weights().front() != c) {
        throw InputError(path.string() + " does not describe weight " + std::to_string(c) +
                         " at level " + std::to_string(level));
      }
      return s;
    }
    return nullptr;
  };
}

StripResult strip_level_search(const RingQExpansion& f, int64_t target_level, int64_t c_max,
                               int64_t bound, const BasisProvider& bases) {
  const RingPtr ring = f[0].ring();
  const int64_t p = ring->p();
  if (target_level < 1 || f.level() % target_level != 0) {
    throw PreconditionError("target level does not divide the level of f");
  }
  int64_t rest = f.level() / target_level;
  while (rest % p == 0) rest /= p;
  if (rest != 1) throw PreconditionError("level of f is not the target level times a power of p");
  if (target_level % p == 0) throw PreconditionError("target level is divisible by p");
  if (bound < 1 || bound > f.truncation()) {
    throw TruncationError("search bound " + std::to_string(bound) + " exceeds the truncation of f");
  }
  if (c_max < 1) throw PreconditionError("weight cap must be positive");

  StripResult out;
  out.bound = bound;
  if (p < 5) out.notes.push_back("p < 5: the search runs, but existence is only known for p >= 5");
  RingVector target;
  for (int64_t n = 1; n <= bound; ++n) target.push_back(f[n]);
  for (int64_t c = 1; c <= c_max; ++c) {
    SpacePtr s = bases(c);
    if (!s) {
      out.missing.push_back(c);
      continue;
    }
    if (s->truncation() < bound) {
      throw TruncationError("weight " + std::to_string(c) + " basis is truncated at " +
                            std::to_string(s->truncation()) + " < " + std::to_string(bound));
    }
    out.searched.push_back(c);
    const std::size_t d = s->dimension();
    if (d == 0) continue;
    ChainRingMatrix a(ring, static_cast<std::size_t>(bound), d);
    for (int64_t n = 0; n < bound; ++n) {
      for (std::size_t j = 0; j < d; ++j) {
        a.set(static_cast<std::size_t>(n), j, ring->from_integer(s->coefficients()(j, static_cast<std::size_t>(n))));
      }
    }
    auto sol = solve_affine(a, target);
    if (!sol) continue;
    CoefficientForm g{s, sol->particular};
    if (g.values(bound) != target) throw std::logic_error("strip-level solution does not reproduce f");
    out.weight = c;
    out.form = std::move(g);
    return out;
  }
  if (out.searched.empty()) {
    throw InputError("no basis data at level " + std::to_string(target_level) + " for weights 1.." +
                     std::to_string(c_max));
  }
  out.notes.push_back("search exhausted");
  return out;
}

WeightCongruenceVerdict weight_congruence_check(const std::vector<WeightedForm>& forms, int64_t p,
                                                int64_t m, int64_t d) {
  const CheckSetup s = prepare(forms, p, m, d);
  std::vector<const RingQExpansion*> ptrs;
  for (const auto& w : forms) ptrs.push_back(&w.form);
  if (!independent_mod_p(ptrs, s.upto)) {
    throw PreconditionError("the forms are linearly dependent mod p");
  }
  WeightCongruenceVerdict v;
  v.p = p;
  v.m = m;
  v.primes_checked = s.primes;
  for (int64_t l : s.primes) {
    std::vector<RingElement> lambda;
    for (const auto& w : forms) lambda.push_back(stroke_eigenvalue(w, l, s.ring));
    // [l] sum f_i = sum lambda_i f_i against lambda_1 sum f_i
    for (int64_t n = 0; n <= s.upto && v.stroke_eigen; ++n) {
      RingElement lhs = s.ring->zero(), rhs = s.ring->zero();
      for (std::size_t i = 0; i < forms.size(); ++i) {
        lhs += lambda[i] * forms[i].form[n];
        rhs += forms[i].form[n];
      }
      if (lhs != lambda.front() * rhs) v.stroke_eigen = false;
    }
  }
  finish(v, forms);
  if (!v.stroke_eigen && v.violations.empty()) {
    throw PreconditionError("the sum is not an eigenform for the stroke operators");
  }
  return v;
}

WeightCongruenceVerdict variant_congruence_check(const std::vector<WeightedForm>& forms, int64_t p,
                                                 int64_t m, int64_t d) {
  const CheckSetup s = prepare(forms, p, m, d);
  for (int64_t n = 0; n <= s.upto; ++n) {
    RingElement acc = s.ring->zero();
    for (const auto& w : forms) acc += w.form[n];
    if (!acc.is_zero()) {
      throw CongruenceFailure("the forms do not sum to 0 mod p^m at a_" + std::to_string(n), n);
    }
  }
  WeightCongruenceVerdict v;
  v.p = p;
  v.m = m;
  for (std::size_t i = 0; i < forms.size() && !v.omitted; ++i) {
    std::vector<const RingQExpansion*> others;
    for (std::size_t j = 0; j < forms.size(); ++j) {
      if (j != i) others.push_back(&forms[j].form);
    }
    if (independent_mod_p(others, s.upto)) v.omitted = i;
  }
  if (!v.omitted) throw PreconditionError("no subfamily of t - 1 forms is independent mod p");
  v.primes_checked = s.primes;
  for (int64_t l : s.primes) {
    const RingElement base = stroke_eigenvalue(forms[*v.omitted], l, s.ring);
    for (const auto& w : forms) {
      if (stroke_eigenvalue(w, l, s.ring) != base) v.stroke_eigen = false;
    }
  }
  finish(v, forms);
  if (!v.stroke_eigen && v.violations.empty()) {
    throw PreconditionError("the stroke eigenvalues disagree although the weights are congruent");
  }
  return v;
}

}  // namespace mfpm
