#include "mfpm/int_matrix.hpp"

#include <istream>
#include <sstream>
#include <utility>

#include "mfpm/errors.hpp"

namespace mfpm {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw PreconditionError("from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw PreconditionError("IntMatrix product: dimension mismatch");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("IntMatrix sum: mismatch");
  IntMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const { return *this + o.scaled(-1); }

IntMatrix IntMatrix::scaled(const Integer& k) const {
  IntMatrix r = *this;
  for (auto& x : r.data_) x *= k;
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (x != 0) return false;
  }
  return true;
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::string IntMatrix::dump() const {
  std::ostringstream out;
  out << rows_ << " " << cols_ << "\n";
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << (*this)(i, j);
    out << "\n";
  }
  return out.str();
}

IntMatrix IntMatrix::parse_dump(std::istream& in) {
  std::size_t r = 0, c = 0;
  if (!(in >> r >> c)) throw InputError("matrix dump: missing dimensions");
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      std::string tok;
      if (!(in >> tok)) throw InputError("matrix dump: truncated");
      if (m(i, j).set_str(tok, 10) != 0) throw InputError("matrix dump: bad integer " + tok);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

namespace {

// Smith reduction of `d` in place; when `track` is set, maintains U and V with
// original = U * d * V.
template <bool track>
void smith_reduce(IntMatrix& d, IntMatrix* u, IntMatrix* v) {
  const std::size_t rows = d.rows();
  const std::size_t cols = d.cols();

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols; ++k) std::swap(d(i, k), d(j, k));
    if constexpr (track) {
      for (std::size_t k = 0; k < rows; ++k) std::swap((*u)(k, i), (*u)(k, j));
    }
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows; ++k) std::swap(d(k, i), d(k, j));
    if constexpr (track) {
      for (std::size_t k = 0; k < cols; ++k) std::swap((*v)(i, k), (*v)(j, k));
    }
  };
  // row_i -= q * row_t
  auto sub_row = [&](std::size_t i, std::size_t t, const Integer& q) {
    for (std::size_t k = 0; k < cols; ++k) {
      if (d(t, k) != 0) d(i, k) -= q * d(t, k);
    }
    if constexpr (track) {
      for (std::size_t k = 0; k < rows; ++k) {
        if ((*u)(k, i) != 0) (*u)(k, t) += q * (*u)(k, i);
      }
    }
  };
  // col_j -= q * col_t
  auto sub_col = [&](std::size_t j, std::size_t t, const Integer& q) {
    for (std::size_t k = 0; k < rows; ++k) {
      if (d(k, t) != 0) d(k, j) -= q * d(k, t);
    }
    if constexpr (track) {
      for (std::size_t k = 0; k < cols; ++k) {
        if ((*v)(j, k) != 0) (*v)(t, k) += q * (*v)(j, k);
      }
    }
  };
  // Rows t, i -> [[s, t'], [-b/g, a/g]] applied, leaving g at (t, col).
  auto gcd_rows = [&](std::size_t t, std::size_t i, std::size_t col) {
    Integer a = d(t, col), b = d(i, col), g, s, tt;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer ag = a / g, bg = b / g;
    for (std::size_t k = 0; k < cols; ++k) {
      Integer x = d(t, k), y = d(i, k);
      d(t, k) = s * x + tt * y;
      d(i, k) = -bg * x + ag * y;
    }
    if constexpr (track) {
      for (std::size_t k = 0; k < rows; ++k) {
        Integer x = (*u)(k, t), y = (*u)(k, i);
        (*u)(k, t) = x * ag + y * bg;
        (*u)(k, i) = -x * tt + y * s;
      }
    }
  };
  auto gcd_cols = [&](std::size_t t, std::size_t j, std::size_t row) {
    Integer a = d(row, t), b = d(row, j), g, s, tt;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer ag = a / g, bg = b / g;
    for (std::size_t k = 0; k < rows; ++k) {
      Integer x = d(k, t), y = d(k, j);
      d(k, t) = s * x + tt * y;
      d(k, j) = -bg * x + ag * y;
    }
    if constexpr (track) {
      for (std::size_t k = 0; k < cols; ++k) {
        Integer x = (*v)(t, k), y = (*v)(j, k);
        (*v)(t, k) = ag * x + bg * y;
        (*v)(j, k) = -tt * x + s * y;
      }
    }
  };

  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (d(i, j) != 0 && (pi == rows || abs(d(i, j)) < abs(d(pi, pj)))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    while (true) {
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        if (mpz_divisible_p(d(i, t).get_mpz_t(), d(t, t).get_mpz_t())) {
          sub_row(i, t, d(i, t) / d(t, t));
        } else {
          gcd_rows(t, i, t);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        if (mpz_divisible_p(d(t, j).get_mpz_t(), d(t, t).get_mpz_t())) {
          sub_col(j, t, d(t, j) / d(t, t));
        } else {
          gcd_cols(t, j, t);
        }
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < rows && clean; ++i) clean = d(i, t) == 0;
      for (std::size_t j = t + 1; j < cols && clean; ++j) clean = d(t, j) == 0;
      if (!clean) continue;
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      // row_t += row_bad
      sub_row(t, bad, -1);
    }
    if (d(t, t) < 0) {
      for (std::size_t k = 0; k < cols; ++k) d(t, k) = -d(t, k);
      if constexpr (track) {
        for (std::size_t k = 0; k < rows; ++k) (*u)(k, t) = -(*u)(k, t);
      }
    }
  }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  smith_reduce<true>(s.D, &s.U, &s.V);
  return s;
}

std::vector<Integer> elementary_divisors(const IntMatrix& a) {
  IntMatrix d = a;
  smith_reduce<false>(d, nullptr, nullptr);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
    if (d(i, i) != 0) out.push_back(d(i, i));
  }
  return out;
}

std::size_t rank(const IntMatrix& a) { return elementary_divisors(a).size(); }

IntMatrix hermite_normal_form(const IntMatrix& a) {
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < rows.size(); ++j) {
    // gcd-combine everything below into row r
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][j] == 0) continue;
      if (rows[r][j] == 0) {
        std::swap(rows[r], rows[i]);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[r][j].get_mpz_t(),
                 rows[i][j].get_mpz_t());
      const Integer ag = rows[r][j] / g, bg = rows[i][j] / g;
      for (std::size_t k = j; k < cols; ++k) {
        Integer x = rows[r][k], y = rows[i][k];
        rows[r][k] = s * x + t * y;
        rows[i][k] = -bg * x + ag * y;
      }
    }
    if (rows[r][j] == 0) continue;
    if (rows[r][j] < 0) {
      for (auto& x : rows[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][j].get_mpz_t(), rows[r][j].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = j; k < cols; ++k) rows[i][k] -= q * rows[r][k];
    }
    ++r;
  }
  rows.resize(r);
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < cols; ++k) out(i, k) = rows[i][k];
  }
  return out;
}

}  // namespace mfpm
