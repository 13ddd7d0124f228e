#include "mfpm/arith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "mfpm/errors.hpp"

namespace mfpm::arith {

int64_t gcd(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t lcm(int64_t a, int64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

int64_t mod(int64_t a, int64_t n) {
  int64_t r = a % n;
  return r < 0 ? r + n : r;
}

int64_t mulmod(int64_t a, int64_t b, int64_t n) {
  __int128 r = static_cast<__int128>(a) * b % n;
  if (r < 0) r += n;
  return static_cast<int64_t>(r);
}

int64_t powmod(int64_t base, uint64_t exp, int64_t n) {
  if (n == 1) return 0;
  int64_t result = 1;
  base = mod(base, n);
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1;
  }
  return result;
}

int64_t invmod(int64_t a, int64_t n) {
  int64_t old_r = mod(a, n), r = n;
  int64_t old_s = 1, s = 0;
  while (r != 0) {
    int64_t q = old_r / r;
    int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw PreconditionError("invmod: " + std::to_string(a) + " is not invertible modulo " +
                            std::to_string(n));
  }
  return mod(old_s, n);
}

int64_t ipow(int64_t p, int k) {
  int64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > std::numeric_limits<int64_t>::max() / p) {
      throw PreconditionError("ipow: overflow computing " + std::to_string(p) + "^" +
                              std::to_string(k));
    }
    r *= p;
  }
  return r;
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::map<int64_t, int> factor(int64_t n) {
  std::map<int64_t, int> out;
  if (n < 0) n = -n;
  for (int64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

std::vector<int64_t> divisors(int64_t n) {
  std::vector<int64_t> out{1};
  for (auto [p, e] : factor(n)) {
    std::size_t count = out.size();
    int64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int64_t euler_phi(int64_t n) {
  int64_t r = n;
  for (auto [p, e] : factor(n)) r = r / p * (p - 1);
  return r;
}

int valuation(int64_t n, int64_t p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int64_t multiplicative_order(int64_t a, int64_t n) {
  if (gcd(a, n) != 1) throw PreconditionError("multiplicative_order: not a unit");
  if (n == 1) return 1;
  int64_t phi = euler_phi(n);
  int64_t order = phi;
  for (auto [q, e] : factor(phi)) {
    for (int i = 0; i < e && order % q == 0; ++i) {
      if (powmod(a, static_cast<uint64_t>(order / q), n) == 1) {
        order /= q;
      } else {
        break;
      }
    }
  }
  return order;
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

int valuation(const Integer& n, int64_t p) {
  if (n == 0) throw PreconditionError("valuation of zero");
  Integer m = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
    m /= p;
    ++v;
  }
  return v;
}

int64_t mod(const Integer& a, int64_t n) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(n));
  return r.get_si();
}

}  // namespace mfpm::arith
