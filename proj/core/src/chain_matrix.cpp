#include "mfpm/chain_matrix.hpp"

#include <utility>

#include "mfpm/errors.hpp"

namespace mfpm {

RingVector zero_vector(const RingPtr& ring, std::size_t n) { return RingVector(n, ring->zero()); }

ChainRingMatrix::ChainRingMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_->zero()) {}

ChainRingMatrix ChainRingMatrix::identity(RingPtr ring, std::size_t n) {
  ChainRingMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring->one();
  return m;
}

ChainRingMatrix ChainRingMatrix::from_integers(RingPtr ring, const IntMatrix& a) {
  ChainRingMatrix m(ring, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0) m(i, j) = ring->from_integer(a(i, j));
    }
  }
  return m;
}

ChainRingMatrix ChainRingMatrix::from_rows(RingPtr ring, const std::vector<RingVector>& rows,
                                           std::size_t cols) {
  ChainRingMatrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw PreconditionError("from_rows: row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void ChainRingMatrix::set(std::size_t i, std::size_t j, const RingElement& x) {
  if (!x.ring() || !x.ring()->same_as(*ring_)) {
    throw RingMismatchError("matrix entry from a different ring");
  }
  (*this)(i, j) = x;
}

RingVector ChainRingMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

ChainRingMatrix ChainRingMatrix::operator*(const ChainRingMatrix& o) const {
  if (cols_ != o.rows_) throw PreconditionError("matrix product: dimension mismatch");
  ChainRingMatrix r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const RingElement& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  }
  return r;
}

RingVector ChainRingMatrix::apply(const RingVector& x) const {
  if (x.size() != cols_) throw PreconditionError("apply: dimension mismatch");
  RingVector out = zero_vector(ring_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * x[j];
    }
  }
  return out;
}

RingVector ChainRingMatrix::apply_left(const RingVector& x) const {
  if (x.size() != rows_) throw PreconditionError("apply_left: dimension mismatch");
  RingVector out = zero_vector(ring_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < cols_; ++j) out[j] += x[i] * (*this)(i, j);
  }
  return out;
}

ChainRingMatrix ChainRingMatrix::transpose() const {
  ChainRingMatrix r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

bool ChainRingMatrix::operator==(const ChainRingMatrix& o) const {
  return ring_->same_as(*o.ring_) && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

// ---------------------------------------------------------------------------

namespace {

void axpy(RingVector& y, const RingElement& q, const RingVector& x) {
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (!x[k].is_zero()) y[k] -= q * x[k];
  }
}

bool is_zero_vector(const RingVector& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

struct RawHowell {
  std::vector<RingVector> rows;
  std::vector<RingVector> transform;
  std::vector<std::size_t> pivots;
};

// Howell form of the rows of `w` (all of length `cols`). When `track` is set
// the transform rows start from the identity on the input rows.
RawHowell raw_howell(const RingPtr& ring, std::vector<RingVector> w, std::size_t cols,
                     bool track) {
  const int64_t gamma = ring->gamma();
  const std::size_t n_in = w.size();
  std::vector<RingVector> t;
  if (track) {
    t.assign(n_in, zero_vector(ring, n_in));
    for (std::size_t i = 0; i < n_in; ++i) t[i][i] = ring->one();
  }
  auto scale = [](const RingVector& v, const RingElement& c) {
    RingVector out = v;
    for (auto& x : out) x = x * c;
    return out;
  };

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < w.size(); ++j) {
    std::size_t best = w.size();
    int64_t best_v = gamma;
    for (std::size_t i = r; i < w.size(); ++i) {
      const int64_t v = w[i][j].valuation();
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best == w.size()) continue;
    std::swap(w[r], w[best]);
    if (track) std::swap(t[r], t[best]);
    const int64_t v = best_v;
    const RingElement uinv = w[r][j].divide_by_pi_power(v).inverse();
    w[r] = scale(w[r], uinv);
    if (track) t[r] = scale(t[r], uinv);

    for (std::size_t i = r + 1; i < w.size(); ++i) {
      if (w[i][j].is_zero()) continue;
      const RingElement q = w[i][j].divide_by_pi_power(v);
      axpy(w[i], q, w[r]);
      if (track) axpy(t[i], q, t[r]);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const RingElement& x = w[i][j];
      if (x.is_zero()) continue;
      const RingElement q = (x - x.remainder_mod_pi_power(v)).divide_by_pi_power(v);
      if (q.is_zero()) continue;
      axpy(w[i], q, w[r]);
      if (track) axpy(t[i], q, t[r]);
    }
    if (v > 0) {
      const RingElement shift = ring->pi_power(gamma - v);
      RingVector ann = scale(w[r], shift);
      if (!is_zero_vector(ann)) {
        w.push_back(std::move(ann));
        if (track) t.push_back(scale(t[r], shift));
      }
    }
    pivots.push_back(j);
    ++r;
  }
  w.resize(r);
  if (track) t.resize(r);
  return {std::move(w), std::move(t), std::move(pivots)};
}

std::vector<RingVector> matrix_rows(const ChainRingMatrix& a) {
  std::vector<RingVector> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
  return rows;
}

// Howell form of [A^T | I]: the left block reduces right-hand sides, rows with
// a zero left block generate the kernel.
RawHowell augmented_howell(const ChainRingMatrix& a) {
  const RingPtr& ring = a.ring();
  const std::size_t r = a.rows(), c = a.cols();
  std::vector<RingVector> rows(c, zero_vector(ring, r + c));
  for (std::size_t j = 0; j < c; ++j) {
    for (std::size_t i = 0; i < r; ++i) rows[j][i] = a(i, j);
    rows[j][r + j] = ring->one();
  }
  return raw_howell(ring, std::move(rows), r + c, false);
}

std::vector<RingVector> kernel_part(const RawHowell& h, std::size_t r) {
  std::vector<RingVector> out;
  for (std::size_t k = 0; k < h.rows.size(); ++k) {
    if (h.pivots[k] >= r) out.emplace_back(h.rows[k].begin() + static_cast<std::ptrdiff_t>(r),
                                           h.rows[k].end());
  }
  return out;
}

void require_ring(const RingPtr& ring, const RingVector& v, const char* what) {
  for (const auto& x : v) {
    if (!x.ring() || !x.ring()->same_as(*ring)) throw RingMismatchError(what);
  }
}

}  // namespace

HowellForm howell_form(const ChainRingMatrix& a) {
  RawHowell raw = raw_howell(a.ring(), matrix_rows(a), a.cols(), true);
  HowellForm out{ChainRingMatrix::from_rows(a.ring(), raw.rows, a.cols()),
                 ChainRingMatrix::from_rows(a.ring(), raw.transform, a.rows()),
                 std::move(raw.pivots)};
  return out;
}

std::vector<RingVector> kernel(const ChainRingMatrix& a) {
  return kernel_part(augmented_howell(a), a.rows());
}

std::optional<AffineSolution> solve_affine(const ChainRingMatrix& a, const RingVector& b) {
  if (b.size() != a.rows()) throw PreconditionError("solve_affine: dimension mismatch");
  require_ring(a.ring(), b, "solve_affine: right-hand side from a different ring");
  const std::size_t r = a.rows(), c = a.cols();
  const RawHowell h = augmented_howell(a);
  RingVector y = zero_vector(a.ring(), r + c);
  for (std::size_t i = 0; i < r; ++i) y[i] = b[i];
  std::size_t k = 0;
  for (std::size_t col = 0; col < r; ++col) {
    while (k < h.pivots.size() && h.pivots[k] < col) ++k;
    if (y[col].is_zero()) continue;
    if (k == h.pivots.size() || h.pivots[k] != col) return std::nullopt;
    const int64_t v = h.rows[k][col].valuation();
    if (y[col].valuation() < v) return std::nullopt;
    axpy(y, y[col].divide_by_pi_power(v), h.rows[k]);
  }
  AffineSolution sol;
  sol.particular.reserve(c);
  for (std::size_t j = 0; j < c; ++j) sol.particular.push_back(-y[r + j]);
  sol.kernel = kernel_part(h, r);
  return sol;
}

std::optional<AffineSolution> lift_solutions(const ChainRingMatrix& a, const RingVector& b,
                                             const AffineSolution& lower) {
  const RingPtr& hi = a.ring();
  const std::size_t n = a.cols();
  if (lower.particular.size() != n) throw PreconditionError("lift_solutions: dimension mismatch");
  if (n == 0) return solve_affine(a, b);
  const RingPtr& lo = lower.particular.front().ring();
  if (!(lo->spec() == hi->spec()) || lo->m() > hi->m()) {
    throw RingMismatchError("lift_solutions: lower set is not over a lower precision");
  }
  // x = x0 + K c + pi^gamma_low y
  const std::size_t k = lower.kernel.size();
  ChainRingMatrix param(hi, n, k + n);
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t i = 0; i < n; ++i) param(i, g) = lower.kernel[g][i].at_precision(hi);
  }
  const RingElement t = hi->pi_power(lo->gamma());
  for (std::size_t i = 0; i < n; ++i) param(i, k + i) = t;
  RingVector x0;
  x0.reserve(n);
  for (const auto& x : lower.particular) x0.push_back(x.at_precision(hi));

  const RingVector ax0 = a.apply(x0);
  RingVector rhs = b;
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= ax0[i];
  auto sol = solve_affine(a * param, rhs);
  if (!sol) return std::nullopt;

  AffineSolution out;
  out.particular = param.apply(sol->particular);
  for (std::size_t i = 0; i < n; ++i) out.particular[i] += x0[i];
  // The lifted kernel in Howell form keeps the representation canonical.
  std::vector<RingVector> gens;
  for (const auto& z : sol->kernel) gens.push_back(param.apply(z));
  RawHowell h = raw_howell(hi, std::move(gens), n, false);
  out.kernel = std::move(h.rows);
  return out;
}

std::vector<RingVector> span_elements(const RingPtr& ring, std::size_t dim,
                                      const std::vector<RingVector>& generators) {
  RawHowell h = raw_howell(ring, generators, dim, false);
  std::vector<RingVector> out{zero_vector(ring, dim)};
  for (std::size_t k = 0; k < h.rows.size(); ++k) {
    const int64_t v = h.rows[k][h.pivots[k]].valuation();
    const auto coeffs = ring->residues_mod_pi_power(ring->gamma() - v);
    std::vector<RingVector> next;
    next.reserve(out.size() * coeffs.size());
    for (const auto& base : out) {
      for (const auto& c : coeffs) {
        RingVector x = base;
        for (std::size_t i = 0; i < dim; ++i) x[i] += c * h.rows[k][i];
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

Integer span_cardinality(const RingPtr& ring, std::size_t dim,
                         const std::vector<RingVector>& generators) {
  RawHowell h = raw_howell(ring, generators, dim, false);
  Integer card = 1;
  for (std::size_t k = 0; k < h.rows.size(); ++k) {
    const int64_t v = h.rows[k][h.pivots[k]].valuation();
    card *= arith::ipow(Integer(ring->p()), ring->f() * (ring->gamma() - v));
  }
  return card;
}

std::vector<RingVector> affine_points(const AffineSolution& sol) {
  if (sol.particular.empty()) return {sol.particular};
  const RingPtr& ring = sol.particular.front().ring();
  auto pts = span_elements(ring, sol.particular.size(), sol.kernel);
  for (auto& x : pts) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += sol.particular[i];
  }
  return pts;
}

}  // namespace mfpm
