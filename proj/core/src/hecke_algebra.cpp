#include "mfpm/hecke_algebra.hpp"

#include <fstream>
#include <sstream>

#include "mfpm/errors.hpp"

namespace mfpm {

namespace {

using RatMatrix = std::vector<std::vector<Rational>>;

// Inverse of a nonsingular square rational matrix.
RatMatrix invert(RatMatrix a) {
  const std::size_t n = a.size();
  RatMatrix inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw Error("invert: singular matrix");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const Rational s = 1 / a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] *= s;
      inv[c][k] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

// Leftmost columns giving a nonsingular minor (greedy over Q).
std::vector<std::size_t> pivot_columns(const IntMatrix& a) {
  const std::size_t d = a.rows();
  std::vector<std::vector<Rational>> basis;  // reduced column vectors
  std::vector<std::size_t> lead;
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < a.cols() && cols.size() < d; ++j) {
    std::vector<Rational> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = a(i, j);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (v[lead[b]] == 0) continue;
      const Rational f = v[lead[b]] / basis[b][lead[b]];
      for (std::size_t i = 0; i < d; ++i) v[i] -= f * basis[b][i];
    }
    std::size_t l = 0;
    while (l < d && v[l] == 0) ++l;
    if (l == d) continue;
    basis.push_back(std::move(v));
    lead.push_back(l);
    cols.push_back(j);
  }
  return cols;
}

std::string kind_name(OperatorKind k) { return k == OperatorKind::T ? "T" : "stroke"; }

}  // namespace

std::vector<Integer> BasisRow::expansion() const {
  std::vector<Integer> out;
  for (const auto& [k, c] : components) {
    (void)k;
    if (out.empty()) out.assign(c.size(), 0);
    if (c.size() != out.size()) throw PreconditionError("basis row components differ in truncation");
    for (std::size_t i = 0; i < c.size(); ++i) out[i] += c[i];
  }
  if (denominator != 1) {
    for (auto& x : out) {
      if (!mpz_divisible_p(x.get_mpz_t(), denominator.get_mpz_t())) {
        throw PreconditionError("basis row is not integral");
      }
      x /= denominator;
    }
  }
  return out;
}

SpacePtr SpaceBasis::create(int64_t level, Group group, DirichletCharacter chi,
                            std::vector<BasisRow> rows, Options opts) {
  std::shared_ptr<SpaceBasis> s(new SpaceBasis());
  s->level_ = level;
  s->group_ = group;
  s->chi_ = std::move(chi);
  s->rows_ = std::move(rows);
  if (s->rows_.empty()) throw InputError("space basis has no rows");
  s->finalize();

  const auto divisors = elementary_divisors(s->coeffs_);
  if (divisors.size() != s->rows_.size()) {
    throw InputError("basis rows are linearly dependent: rank " + std::to_string(divisors.size()) +
                     " < " + std::to_string(s->rows_.size()) + " rows");
  }
  Integer index = 1;
  for (const auto& d : divisors) index *= d;
  if (index != 1) {
    if (!opts.repair_saturation) {
      throw InputError("basis lattice is not saturated (index " + index.get_str() + ")");
    }
    // Saturation: first d rows of V in A = U D V, tidied by Hermite form.
    const auto snf = smith_normal_form(s->coeffs_);
    const std::size_t d = s->rows_.size();
    IntMatrix sat(d, s->coeffs_.cols());
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < sat.cols(); ++j) sat(i, j) = snf.V(i, j);
    }
    sat = hermite_normal_form(sat);
    std::vector<BasisRow> repaired;
    for (std::size_t i = 0; i < d; ++i) {
      const auto c = s->rational_coordinates_of(sat.row(i));
      if (!c) throw Error("saturation left the rational span");
      Integer den = 1;
      std::vector<Rational> r(d);
      for (std::size_t j = 0; j < d; ++j) {
        r[j] = (*c)[j] / Rational(s->rows_[j].denominator);
        r[j].canonicalize();
        den = lcm(den, r[j].get_den());
      }
      BasisRow row;
      for (std::size_t j = 0; j < d; ++j) {
        if (r[j] == 0) continue;
        const Rational scaled = r[j] * Rational(den);
        const Integer mult = scaled.get_num();
        for (const auto& [k, comp] : s->rows_[j].components) {
          auto& dst = row.components[k];
          if (dst.empty()) dst.assign(comp.size(), 0);
          for (std::size_t n = 0; n < comp.size(); ++n) dst[n] += mult * comp[n];
        }
      }
      Integer g = den;
      for (const auto& [k, comp] : row.components) {
        (void)k;
        for (const auto& x : comp) g = gcd(g, x);
      }
      for (auto& [k, comp] : row.components) {
        (void)k;
        for (auto& x : comp) x /= g;
      }
      row.denominator = den / g;
      repaired.push_back(std::move(row));
    }
    s->warnings_.push_back("basis lattice had index " + index.get_str() +
                           " in its saturation; replaced by the saturated lattice");
    s->rows_ = std::move(repaired);
    s->finalize();
  }
  return s;
}

void SpaceBasis::finalize() {
  truncation_ = -1;
  std::vector<int64_t> weights;
  for (const auto& r : rows_) {
    if (r.components.empty()) throw InputError("basis row without components");
    for (const auto& [k, c] : r.components) {
      if (truncation_ < 0) truncation_ = static_cast<int64_t>(c.size()) - 1;
      if (static_cast<int64_t>(c.size()) - 1 != truncation_) {
        throw InputError("basis rows have different truncations");
      }
      if (std::find(weights.begin(), weights.end(), k) == weights.end()) weights.push_back(k);
    }
  }
  if (truncation_ < 1) throw InputError("basis truncation must be positive");
  std::sort(weights.begin(), weights.end());
  weights_ = weights;

  const std::size_t d = rows_.size();
  coeffs_ = IntMatrix(d, static_cast<std::size_t>(truncation_));
  for (std::size_t i = 0; i < d; ++i) {
    const auto e = rows_[i].expansion();
    for (int64_t n = 1; n <= truncation_; ++n) coeffs_(i, static_cast<std::size_t>(n - 1)) = e[static_cast<std::size_t>(n)];
  }

  const auto piv = pivot_columns(coeffs_);
  pivot_cols_.clear();
  for (auto j : piv) pivot_cols_.push_back(static_cast<int64_t>(j) + 1);
  if (piv.size() == d) {
    RatMatrix minor(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) minor[i][j] = coeffs_(i, piv[j]);
    }
    const RatMatrix inv = invert(minor);
    pivot_den_ = 1;
    for (const auto& row : inv) {
      for (const auto& x : row) pivot_den_ = lcm(pivot_den_, x.get_den());
    }
    pivot_inverse_ = IntMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const Rational v = inv[i][j] * Rational(pivot_den_);
        pivot_inverse_(i, j) = v.get_num();
      }
    }
  }

  int64_t base = 0;
  if (weights_.size() == 1) {
    base = sturm_bound(level_, weights_.front(), group_);
  } else {
    for (int64_t k : weights_) base += sturm_bound(level_, k, group_);
    base += 1;
  }
  bound_ = std::max<int64_t>({base, pivot_cols_.empty() ? 1 : pivot_cols_.back(), 1});

  std::ostringstream key;
  key << describe() << "\n";
  for (const auto& r : rows_) {
    key << "den " << r.denominator << "\n";
    for (const auto& [k, c] : r.components) {
      key << k << ":";
      for (const auto& x : c) key << x << ",";
      key << "\n";
    }
  }
  digest_ = sha256_hex(key.str());
}

SpacePtr SpaceBasis::from_forms(const std::vector<IntQExpansion>& forms, Group group) {
  if (forms.empty()) throw InputError("no forms given");
  std::vector<BasisRow> rows;
  for (const auto& f : forms) {
    BasisRow r;
    r.components[f.weight()] = f.coeffs();
    rows.push_back(std::move(r));
  }
  auto chi = forms.front().character().value_or(DirichletCharacter::trivial(forms.front().level()));
  return create(forms.front().level(), group, chi, std::move(rows));
}

SpacePtr SpaceBasis::from_file(const SpaceFile& file, Options opts) {
  if (!file.header.integral()) {
    throw InputError(file.name + ": spaces need integer coefficients (coeffring=int); "
                     "number-field files are read as catalogs");
  }
  std::vector<BasisRow> rows;
  for (const auto& f : file.integer_rows()) {
    BasisRow r;
    r.components[f.weight()] = f.coeffs();
    rows.push_back(std::move(r));
  }
  try {
    auto s = create(file.header.level, file.header.group, *file.character, std::move(rows), opts);
    return s;
  } catch (const InputError& e) {
    throw InputError(file.name + ": " + e.what());
  }
}

IntQExpansion SpaceBasis::row_expansion(std::size_t i) const {
  std::vector<int64_t> w;
  for (const auto& [k, c] : rows_.at(i).components) {
    (void)c;
    w.push_back(k);
  }
  return IntQExpansion(rows_[i].expansion(), level_, w, chi_);
}

std::optional<std::vector<Rational>> SpaceBasis::rational_coordinates_of(
    const std::vector<Integer>& a) const {
  // a holds a_1..a_L
  const std::size_t d = rows_.size();
  if (pivot_cols_.size() != d) throw Error("space basis has no pivot minor");
  if (static_cast<int64_t>(a.size()) < pivot_cols_.back()) {
    throw TruncationError("need " + std::to_string(pivot_cols_.back()) +
                          " coefficients to determine coordinates");
  }
  std::vector<Rational> x(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < d; ++j) {
      acc += a[static_cast<std::size_t>(pivot_cols_[j] - 1)] * pivot_inverse_(j, i);
    }
    x[i] = Rational(acc, pivot_den_);
    x[i].canonicalize();
  }
  const std::size_t check = std::min(a.size(), coeffs_.cols());
  for (std::size_t n = 0; n < check; ++n) {
    Rational v = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] != 0 && coeffs_(i, n) != 0) v += x[i] * coeffs_(i, n);
    }
    if (v != a[n]) return std::nullopt;
  }
  return x;
}

std::optional<std::vector<Integer>> SpaceBasis::coordinates_of(const IntQExpansion& f) const {
  std::vector<Integer> a(f.coeffs().begin() + 1, f.coeffs().end());
  const auto x = rational_coordinates_of(a);
  if (!x) return std::nullopt;
  std::vector<Integer> out;
  for (const auto& v : *x) {
    if (v.get_den() != 1) return std::nullopt;
    out.push_back(v.get_num());
  }
  return out;
}

std::string SpaceBasis::describe() const {
  std::ostringstream out;
  out << "level=" << level_ << " weight=";
  for (std::size_t i = 0; i < weights_.size(); ++i) out << (i ? "," : "") << weights_[i];
  out << " group=" << (group_ == Group::Gamma0 ? "g0" : "g1") << " char=" << chi_.to_string()
      << " dim=" << rows_.size() << " trunc=" << truncation_;
  return out.str();
}

// ---------------------------------------------------------------------------

std::string HeckeOperator::name() const {
  return (kind == OperatorKind::T ? "T_" : "[") + std::to_string(index) +
         (kind == OperatorKind::T ? "" : "]");
}

BasisRow apply_operator(const SpaceBasis& s, const BasisRow& row, OperatorKind kind, int64_t n,
                        int64_t out_bound) {
  BasisRow out;
  out.denominator = row.denominator;
  for (const auto& [k, c] : row.components) {
    IntQExpansion f(c, s.level(), {k}, s.character());
    IntQExpansion t = kind == OperatorKind::T ? hecke_Tn(f, n, out_bound)
                                              : stroke(f, n).truncated(out_bound);
    out.components[k] = t.coeffs();
  }
  return out;
}

namespace {

HeckeOperator operator_matrix(const SpaceBasis& s, OperatorKind kind, int64_t n) {
  if (n < 1) throw PreconditionError("operator index must be positive");
  const int64_t loss = kind == OperatorKind::T ? n : n * n;
  const int64_t out_bound = s.truncation() / loss;
  if (out_bound < s.injectivity_bound()) {
    throw TruncationError(kind_name(kind) + "_" + std::to_string(n) + " needs truncation " +
                          std::to_string(loss * s.injectivity_bound()) + ", basis has " +
                          std::to_string(s.truncation()));
  }
  const std::size_t d = s.dimension();
  HeckeOperator op;
  op.kind = kind;
  op.index = n;
  op.matrix = IntMatrix(d, d);
  op.audited_truncation = out_bound;
  for (std::size_t j = 0; j < d; ++j) {
    const BasisRow img = apply_operator(s, s.rows()[j], kind, n, out_bound);
    std::vector<Integer> e;
    try {
      e = img.expansion();
    } catch (const PreconditionError&) {
      throw PreconditionError(op.name() + " of basis row " + std::to_string(j) +
                              " is not integral; the basis is not a Hecke-stable lattice");
    }
    const std::vector<Integer> a(e.begin() + 1, e.end());
    const auto x = s.rational_coordinates_of(a);
    if (!x) {
      throw PreconditionError(op.name() + " of basis row " + std::to_string(j) +
                              " leaves the span of the basis");
    }
    for (std::size_t i = 0; i < d; ++i) {
      if ((*x)[i].get_den() != 1) {
        throw PreconditionError(op.name() + " has a non-integral matrix entry; the basis is not "
                                "saturated");
      }
      op.matrix(j, i) = (*x)[i].get_num();
    }
  }
  return op;
}

}  // namespace

HeckeOperator hecke_matrix(const SpaceBasis& s, int64_t n) {
  return operator_matrix(s, OperatorKind::T, n);
}

HeckeOperator stroke_matrix(const SpaceBasis& s, int64_t ell) {
  return operator_matrix(s, OperatorKind::Stroke, ell);
}

HeckeCache::HeckeCache(std::optional<std::filesystem::path> store) : store_(std::move(store)) {
  if (store_) std::filesystem::create_directories(*store_);
}

std::size_t HeckeCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

const HeckeOperator& HeckeCache::get(const SpaceBasis& s, OperatorKind kind, int64_t n) {
  const Key key{s.digest(), static_cast<int>(kind), n};
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return *it->second;
  }
  std::unique_ptr<HeckeOperator> op;
  std::filesystem::path file;
  if (store_) {
    file = *store_ / (s.digest() + "_" + kind_name(kind) + std::to_string(n) + ".mat");
    std::ifstream in(file);
    if (in) {
      auto m = IntMatrix::parse_dump(in);
      if (m.rows() == s.dimension() && m.cols() == s.dimension()) {
        op = std::make_unique<HeckeOperator>();
        op->kind = kind;
        op->index = n;
        op->matrix = std::move(m);
        op->audited_truncation = s.truncation() / (kind == OperatorKind::T ? n : n * n);
      }
    }
  }
  bool from_disk = op != nullptr;
  if (!op) op = std::make_unique<HeckeOperator>(operator_matrix(s, kind, n));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(key, std::move(op));
  if (inserted) {
    if (from_disk) {
      ++disk_hits_;
    } else if (store_) {
      const auto tmp = file.string() + ".tmp";
      {
        std::ofstream out(tmp);
        out << it->second->matrix.dump();
      }
      std::filesystem::rename(tmp, file);
    }
  }
  return *it->second;
}

std::size_t algebra_rank(const SpaceBasis& s, int64_t n_max) {
  const std::size_t d = s.dimension();
  IntMatrix flat(static_cast<std::size_t>(n_max), d * d);
  for (int64_t n = 1; n <= n_max; ++n) {
    const auto op = hecke_matrix(s, n);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) flat(static_cast<std::size_t>(n - 1), i * d + j) = op.matrix(i, j);
    }
  }
  return rank(flat);
}

IntMatrix pairing_matrix(const SpaceBasis& s, int64_t n_max) {
  if (n_max < 1 || n_max > s.truncation()) {
    throw TruncationError("pairing_matrix: n_max beyond truncation");
  }
  IntMatrix p(static_cast<std::size_t>(n_max), s.dimension());
  for (int64_t i = 1; i <= n_max; ++i) {
    for (std::size_t j = 0; j < s.dimension(); ++j) {
      p(static_cast<std::size_t>(i - 1), j) = s.coefficients()(j, static_cast<std::size_t>(i - 1));
    }
  }
  return p;
}

// ---------------------------------------------------------------------------

RingVector CoefficientForm::values(int64_t bound) const {
  if (bound > space->truncation()) throw TruncationError("values beyond basis truncation");
  const RingPtr& r = ring();
  RingVector out = zero_vector(r, static_cast<std::size_t>(bound));
  const auto& a = space->coefficients();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].is_zero()) continue;
    for (int64_t n = 0; n < bound; ++n) {
      const Integer& c = a(i, static_cast<std::size_t>(n));
      if (c != 0) out[static_cast<std::size_t>(n)] += coords[i].scaled(c);
    }
  }
  return out;
}

CoefficientForm CoefficientForm::apply(const HeckeOperator& op) const {
  const auto m = ChainRingMatrix::from_integers(ring(), op.matrix);
  return {space, m.apply_left(coords)};
}

CoefficientForm CoefficientForm::operator+(const CoefficientForm& o) const {
  CoefficientForm r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

CoefficientForm CoefficientForm::operator-(const CoefficientForm& o) const {
  CoefficientForm r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
  return r;
}

CoefficientForm CoefficientForm::scaled(const RingElement& c) const {
  CoefficientForm r = *this;
  for (auto& x : r.coords) x = x * c;
  return r;
}

bool CoefficientForm::is_zero() const {
  for (const auto& x : coords) {
    if (!x.is_zero()) return false;
  }
  return true;
}

std::optional<CoefficientForm> try_form_with_coefficients(const SpacePtr& s,
                                                          const RingVector& values) {
  if (values.empty()) throw PreconditionError("no coefficient values given");
  const int64_t len = static_cast<int64_t>(values.size());
  if (len < s->injectivity_bound()) {
    throw TruncationError("need at least " + std::to_string(s->injectivity_bound()) +
                          " coefficients, got " + std::to_string(len));
  }
  if (len > s->truncation()) throw TruncationError("more values than the basis truncation");
  const RingPtr& ring = values.front().ring();
  ChainRingMatrix at(ring, values.size(), s->dimension());
  for (std::size_t n = 0; n < values.size(); ++n) {
    for (std::size_t i = 0; i < s->dimension(); ++i) {
      const Integer& c = s->coefficients()(i, n);
      if (c != 0) at(n, i) = ring->from_integer(c);
    }
  }
  auto sol = solve_affine(at, values);
  if (!sol) return std::nullopt;
  return CoefficientForm{s, sol->particular};
}

CoefficientForm form_with_coefficients(const SpacePtr& s, const RingVector& values) {
  auto f = try_form_with_coefficients(s, values);
  if (!f) throw PreconditionError("coefficient vector is not in the span of the reduced basis");
  return *f;
}

CoefficientForm reduce_form(const SpacePtr& s, const std::vector<Integer>& coords,
                            const RingPtr& ring) {
  if (coords.size() != s->dimension()) throw PreconditionError("coordinate length mismatch");
  CoefficientForm f{s, {}};
  for (const auto& c : coords) f.coords.push_back(ring->from_integer(c));
  return f;
}

LiftedForm lift_form(const CoefficientForm& f) {
  std::vector<Integer> coords;
  for (const auto& x : f.coords) {
    const auto v = in_base_subring(x);
    if (!v) throw PreconditionError("lift_form: coordinate outside Z/p^m");
    coords.emplace_back(static_cast<long>(*v));
  }
  const auto& s = *f.space;
  std::vector<Integer> e(static_cast<std::size_t>(s.truncation()) + 1, 0);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    for (int64_t n = 1; n <= s.truncation(); ++n) {
      e[static_cast<std::size_t>(n)] += coords[i] * s.coefficients()(i, static_cast<std::size_t>(n - 1));
    }
  }
  return {coords, IntQExpansion(std::move(e), s.level(), s.weights(), s.character())};
}

}  // namespace mfpm
