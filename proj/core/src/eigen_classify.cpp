#include "mfpm/eigen_classify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "mfpm/errors.hpp"

namespace mfpm {

namespace {

HeckeCache& cache_or_default(HeckeCache* cache) {
  return cache ? *cache : default_hecke_cache();
}

// a_n of the form with coordinates x.
RingElement coefficient(const SpaceBasis& s, const RingVector& x, int64_t n) {
  RingElement acc = x.front().ring()->zero();
  const auto col = static_cast<std::size_t>(n - 1);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Integer& c = s.coefficients()(j, col);
    if (c != 0 && !x[j].is_zero()) acc += x[j].scaled(c);
  }
  return acc;
}

void require_bound(const SpaceBasis& s, int64_t b) {
  if (b < 1) throw PreconditionError("eigen bound must be positive");
  if (b > s.truncation()) {
    throw TruncationError("eigen bound " + std::to_string(b) + " exceeds basis truncation " +
                          std::to_string(s.truncation()));
  }
}

bool coords_less(const RingVector& a, const RingVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

EigenSystem system_of(const SpaceBasis& s, const RingVector& x, int64_t d, int64_t b,
                      const std::string& provenance) {
  EigenSystem e;
  e.away_from = d;
  e.bound = b;
  e.ring = x.front().ring();
  e.provenance = provenance;
  for (int64_t n : hecke_indices(b, d)) e.values.emplace(n, coefficient(s, x, n));
  return e;
}

RingVector lift_vector(const RingVector& x, const RingPtr& target) {
  RingVector out;
  out.reserve(x.size());
  for (const auto& c : x) out.push_back(c.at_precision(target));
  return out;
}

}  // namespace

const RingElement& EigenSystem::at(int64_t n) const {
  auto it = values.find(n);
  if (it == values.end()) {
    throw PreconditionError("eigen system has no value at n = " + std::to_string(n));
  }
  return it->second;
}

bool EigenSystem::operator<(const EigenSystem& o) const {
  auto a = values.begin();
  auto b = o.values.begin();
  for (; a != values.end() && b != o.values.end(); ++a, ++b) {
    if (a->first != b->first) return a->first < b->first;
    if (a->second != b->second) return a->second < b->second;
  }
  return a == values.end() && b != o.values.end();
}

bool EigenSystem::same_values(const EigenSystem& o) const {
  if (values.size() != o.values.size()) return false;
  for (auto a = values.begin(), b = o.values.begin(); a != values.end(); ++a, ++b) {
    if (a->first != b->first || a->second != b->second) return false;
  }
  return true;
}

std::string EigenSystem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, v] : values) {
    if (!first) os << ' ';
    first = false;
    const std::string text = v.to_string();
    os << n << ':' << (text.find(' ') == std::string::npos ? text : "(" + text + ")");
  }
  return os.str();
}

bool EigenSystem::satisfies_hecke_relations() const {
  if (auto it = values.find(1); it != values.end() && !it->second.is_one()) return false;
  for (const auto& [m, vm] : values) {
    for (const auto& [n, vn] : values) {
      if (m < 2 || n < m || arith::gcd(m, n) != 1) continue;
      auto it = values.find(m * n);
      if (it != values.end() && it->second != vm * vn) return false;
    }
  }
  return true;
}

std::vector<int64_t> hecke_indices(int64_t bound, int64_t d) {
  std::vector<int64_t> out;
  for (int64_t n = 1; n <= bound; ++n) {
    if (arith::gcd(n, d) == 1) out.push_back(n);
  }
  return out;
}

HeckeCache& default_hecke_cache() {
  static HeckeCache cache;
  return cache;
}

std::optional<EigenSystem> is_weak_eigenform(const CoefficientForm& f, int64_t d, int64_t b,
                                             HeckeCache* cache) {
  const SpaceBasis& s = *f.space;
  require_bound(s, b);
  const RingElement a1 = coefficient(s, f.coords, 1);
  if (!a1.is_unit()) throw PreconditionError("a_1 is not a unit; the form cannot be normalized");
  const CoefficientForm g = f.scaled(a1.inverse());
  auto& hc = cache_or_default(cache);
  for (int64_t n : hecke_indices(b, d)) {
    if (n == 1) continue;
    const auto& op = hc.get(s, OperatorKind::T, n);
    const CoefficientForm tg = g.apply(op);
    const RingElement lambda = coefficient(s, g.coords, n);
    for (std::size_t i = 0; i < g.coords.size(); ++i) {
      if (tg.coords[i] != lambda * g.coords[i]) return std::nullopt;
    }
  }
  return system_of(s, g.coords, d, b, "weak");
}

std::optional<EigenSystem> is_dc_weak_eigenform(const CoefficientForm& f, int64_t d, int64_t b,
                                                HeckeCache* cache) {
  auto e = is_weak_eigenform(f, d, b, cache);
  if (e) e->provenance = "dc-weak";
  return e;
}

std::vector<WeakEigenform> enumerate_weak_eigenforms(const SpacePtr& sp, const RingPtr& ring,
                                                     int64_t d, int64_t b, HeckeCache* cache) {
  const SpaceBasis& s = *sp;
  require_bound(s, b);
  if (ring->e() != 1) {
    throw PreconditionError("eigenform enumeration needs an unramified coefficient ring");
  }
  const std::size_t dim = s.dimension();
  std::vector<WeakEigenform> out;
  if (dim == 0) return out;

  auto& hc = cache_or_default(cache);
  const std::vector<int64_t> idx = hecke_indices(b, d);
  std::vector<const HeckeOperator*> ops;
  for (int64_t n : idx) ops.push_back(n == 1 ? nullptr : &hc.get(s, OperatorKind::T, n));

  auto coeff_row = [&](const RingPtr& r, int64_t n) {
    RingVector row;
    const auto col = static_cast<std::size_t>(n - 1);
    for (std::size_t j = 0; j < dim; ++j) row.push_back(r->from_integer(s.coefficients()(j, col)));
    return row;
  };

  // Residue field: depth-first over the eigenvalue of each T_n, keeping the
  // linear conditions x (T_n - lambda) = 0 and a_n(x) = lambda.
  const RingPtr field = ring->with_precision(1);
  const auto field_elements = field->elements();
  std::vector<RingVector> rows{coeff_row(field, 1)};
  RingVector rhs{field->one()};
  std::vector<RingVector> points;

  auto solve_rows = [&](const RingPtr& r, const std::vector<RingVector>& rs, const RingVector& bs) {
    return solve_affine(ChainRingMatrix::from_rows(r, rs, dim), bs);
  };

  std::function<void(std::size_t, const AffineSolution&)> search =
      [&](std::size_t k, const AffineSolution& sol) {
        if (sol.kernel.empty()) {
          // A single candidate: the remaining eigenvalues are forced.
          const RingVector& x = sol.particular;
          for (std::size_t t = k; t < idx.size(); ++t) {
            if (!ops[t]) continue;
            const RingElement lambda = coefficient(s, x, idx[t]);
            const RingVector tx =
                ChainRingMatrix::from_integers(field, ops[t]->matrix).apply_left(x);
            for (std::size_t i = 0; i < dim; ++i) {
              if (tx[i] != lambda * x[i]) return;
            }
          }
          points.push_back(x);
          return;
        }
        if (k == idx.size()) {
          for (auto& x : affine_points(sol)) points.push_back(std::move(x));
          return;
        }
        if (!ops[k]) {
          search(k + 1, sol);
          return;
        }
        const RingVector cn = coeff_row(field, idx[k]);
        const IntMatrix& m = ops[k]->matrix;
        for (const auto& lambda : field_elements) {
          const std::size_t base = rows.size();
          for (std::size_t i = 0; i < dim; ++i) {
            RingVector r;
            for (std::size_t j = 0; j < dim; ++j) {
              RingElement v = field->from_integer(m(j, i));
              if (i == j) v -= lambda;
              r.push_back(v);
            }
            rows.push_back(std::move(r));
            rhs.push_back(field->zero());
          }
          rows.push_back(cn);
          rhs.push_back(lambda);
          if (auto next = solve_rows(field, rows, rhs)) search(k + 1, *next);
          rows.resize(base);
          rhs.resize(base);
        }
      };

  if (auto start = solve_rows(field, rows, rhs)) search(0, *start);

  // Higher layers: at a point F the eigen equations Q(x) = x T_n - a_n(x) x
  // are affine in x = F^ + p^j y, with linear part
  // L(x) = x T_n - a_n(F^) x - a_n(x) F^ and right-hand side -a_n(F^) F^.
  for (int j = 1; j < ring->m(); ++j) {
    const RingPtr hi = ring->with_precision(j + 1);
    std::vector<RingVector> next;
    for (const auto& f : points) {
      const RingVector fh = lift_vector(f, hi);
      std::vector<RingVector> a_rows{coeff_row(hi, 1)};
      RingVector b_vec{hi->one()};
      for (std::size_t t = 0; t < idx.size(); ++t) {
        if (!ops[t]) continue;
        const RingVector cn = coeff_row(hi, idx[t]);
        const RingElement an = coefficient(s, fh, idx[t]);
        const IntMatrix& m = ops[t]->matrix;
        for (std::size_t i = 0; i < dim; ++i) {
          RingVector r;
          for (std::size_t jj = 0; jj < dim; ++jj) {
            RingElement v = hi->from_integer(m(jj, i)) - cn[jj] * fh[i];
            if (i == jj) v -= an;
            r.push_back(v);
          }
          a_rows.push_back(std::move(r));
          b_vec.push_back(-(an * fh[i]));
        }
      }
      AffineSolution lower{f, {}};
      auto lifted =
          lift_solutions(ChainRingMatrix::from_rows(hi, a_rows, dim), b_vec, lower);
      if (!lifted) continue;
      for (auto& x : affine_points(*lifted)) next.push_back(std::move(x));
    }
    points = std::move(next);
  }

  for (auto& x : points) {
    EigenSystem e = system_of(s, x, d, b, "weak");
    out.push_back(WeakEigenform{CoefficientForm{sp, std::move(x)}, std::move(e)});
  }
  std::sort(out.begin(), out.end(), [](const WeakEigenform& a, const WeakEigenform& b) {
    if (a.system < b.system) return true;
    if (b.system < a.system) return false;
    return coords_less(a.form.coords, b.form.coords);
  });
  return out;
}

std::vector<EigenClass> group_by_system(const std::vector<WeakEigenform>& forms) {
  std::vector<EigenClass> out;
  for (const auto& w : forms) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const EigenClass& c) { return c.system.same_values(w.system); });
    if (it == out.end()) {
      out.push_back(EigenClass{w.system, {w.form}});
    } else {
      it->forms.push_back(w.form);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const EigenClass& a, const EigenClass& b) { return a.system < b.system; });
  return out;
}

CatalogForm catalog_form(const std::string& id, const IntQExpansion& f) {
  static const NfPtr rationals = NumberField::create({0, 1});
  std::vector<NfElement> c;
  c.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) c.push_back(rationals->from_integer(a));
  return CatalogForm{id, NfQExpansion(std::move(c), f.level(), f.weights(), f.character())};
}

std::vector<StrongMatch> strong_match(const EigenSystem& e,
                                      const std::vector<CatalogForm>& catalog) {
  std::vector<StrongMatch> out;
  for (const auto& c : catalog) {
    if (c.expansion.truncation() < e.bound) {
      throw TruncationError("catalog form " + c.id + " is truncated below the eigen bound");
    }
    const NfPtr& field = c.expansion[1].field();
    const auto roots = field->roots_in(e.ring);
    for (std::size_t r = 0; r < roots.size(); ++r) {
      bool ok = true;
      for (const auto& [n, v] : e.values) {
        if (reduce_element(c.expansion[n], roots[r]) != v) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(StrongMatch{c.id, static_cast<int>(r)});
    }
  }
  return out;
}

bool systems_agree(const EigenSystem& a, const EigenSystem& b, const std::set<int64_t>& excluded) {
  std::function<RingElement(const RingElement&)> ma = [](const RingElement& x) { return x; };
  std::function<RingElement(const RingElement&)> mb = ma;
  if (!a.ring->same_as(*b.ring)) {
    const RingElement probe_a = a.ring->one();
    const RingElement probe_b = b.ring->one();
    try {
      embed_into(probe_a, b.ring);
      const RingPtr target = b.ring;
      ma = [target](const RingElement& x) { return embed_into(x, target); };
    } catch (const Error&) {
      try {
        embed_into(probe_b, a.ring);
        const RingPtr target = a.ring;
        mb = [target](const RingElement& x) { return embed_into(x, target); };
      } catch (const Error&) {
        throw RingMismatchError("eigen systems over " + a.ring->describe() + " and " +
                                b.ring->describe() + " have no common ring");
      }
    }
  }
  const int64_t bound = std::min(a.bound, b.bound);
  for (int64_t l = 2; l <= bound; ++l) {
    if (!arith::is_prime(l) || excluded.count(l)) continue;
    if (a.away_from % l == 0 || b.away_from % l == 0) continue;
    if (ma(a.at(l)) != mb(b.at(l))) return false;
  }
  return true;
}

RingVector half_sum_residual(const ChainRingMatrix& t, const RingVector& f, const RingVector& g,
                             const RingElement& lambda, const RingElement& mu) {
  const RingPtr& r = t.ring();
  const RingElement half = r->from_integer(2).inverse();
  RingVector h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = (f[i] + g[i]) * half;
  const RingElement ev = (lambda + mu) * half;
  RingVector res = t.apply(h);
  for (std::size_t i = 0; i < h.size(); ++i) res[i] -= ev * h[i];
  return res;
}

HalfSum half_sum_construct(const SpacePtr& sp, const std::vector<Integer>& f,
                           const std::vector<Integer>& g, int64_t p, int64_t d, int64_t b,
                           HeckeCache* cache) {
  const SpaceBasis& s = *sp;
  if (p < 3 || !arith::is_prime(p)) throw PreconditionError("half sums need an odd prime");
  if (f.size() != s.dimension() || g.size() != s.dimension()) {
    throw PreconditionError("coordinate vectors do not match the basis dimension");
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (arith::mod(Integer(f[i] - g[i]), p) != 0) {
      throw PreconditionError("f and g are not congruent modulo " + std::to_string(p));
    }
  }
  require_bound(s, b);
  auto& hc = cache_or_default(cache);

  // Exact eigen check over Z.
  auto integral_eigen = [&](const std::vector<Integer>& x, const char* name) {
    auto a = [&](int64_t n) {
      Integer acc = 0;
      for (std::size_t j = 0; j < x.size(); ++j) acc += x[j] * s.coefficients()(j, n - 1);
      return acc;
    };
    const Integer a1 = a(1);
    if (arith::mod(a1, p) == 0) throw PreconditionError(std::string(name) + " has a_1 divisible by p");
    for (int64_t n : hecke_indices(b, d)) {
      if (n == 1) continue;
      const IntMatrix& m = hc.get(s, OperatorKind::T, n).matrix;
      const Integer an = a(n);
      for (std::size_t i = 0; i < x.size(); ++i) {
        Integer acc = 0;
        for (std::size_t j = 0; j < x.size(); ++j) acc += x[j] * m(j, i);
        if (a1 * acc != an * x[i]) {
          throw PreconditionError(std::string(name) + " is not an eigenform for T_" +
                                  std::to_string(n));
        }
      }
    }
  };
  integral_eigen(f, "f");
  integral_eigen(g, "g");

  const RingPtr r2 = ModRing::integers_mod(p, 2);
  const CoefficientForm fr = reduce_form(sp, f, r2);
  const CoefficientForm gr = reduce_form(sp, g, r2);
  HalfSum out{fr, {}, *is_weak_eigenform(fr, d, b, &hc), *is_weak_eigenform(gr, d, b, &hc), {}, true};
  const RingElement half = r2->from_integer(2).inverse();
  // Normalized representatives so that a_1(h) = 1.
  const RingElement fa1 = coefficient(s, fr.coords, 1).inverse();
  const RingElement ga1 = coefficient(s, gr.coords, 1).inverse();
  out.h = (fr.scaled(fa1) + gr.scaled(ga1)).scaled(half);

  for (int64_t n : hecke_indices(b, d)) {
    const RingElement ev = (out.lambda.at(n) + out.mu.at(n)) * half;
    bool verified = true;
    if (n != 1) {
      const CoefficientForm th = out.h.apply(hc.get(s, OperatorKind::T, n));
      for (std::size_t i = 0; i < th.coords.size(); ++i) {
        if (th.coords[i] != ev * out.h.coords[i]) verified = false;
      }
    }
    out.certificate.push_back(HalfSumStep{n, ev, verified});
    if (out.lambda.at(n) != out.mu.at(n)) out.possibly_liftable = false;
  }
  out.system = system_of(s, out.h.coords, d, b, "half-sum");
  return out;
}

}  // namespace mfpm
