#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace mfpm {

using Integer = mpz_class;
using Rational = mpq_class;

// Elementary number theory on machine integers.
namespace arith {

int64_t gcd(int64_t a, int64_t b);
int64_t lcm(int64_t a, int64_t b);
// Nonnegative residue of a modulo n (n > 0).
int64_t mod(int64_t a, int64_t n);
int64_t mulmod(int64_t a, int64_t b, int64_t n);
int64_t powmod(int64_t base, uint64_t exp, int64_t n);
// Inverse of a modulo n; throws PreconditionError when gcd(a, n) != 1.
int64_t invmod(int64_t a, int64_t n);
// Checked p^k; throws PreconditionError on overflow of int64_t.
int64_t ipow(int64_t p, int k);

bool is_prime(int64_t n);
// Prime factorization, ascending primes.
std::map<int64_t, int> factor(int64_t n);
std::vector<int64_t> divisors(int64_t n);
int64_t euler_phi(int64_t n);
// Exponent of p in n (n != 0).
int valuation(int64_t n, int64_t p);

// Multiplicative order of a modulo n; requires gcd(a, n) = 1.
int64_t multiplicative_order(int64_t a, int64_t n);

Integer ipow(const Integer& base, unsigned long exp);
// Exponent of p in a nonzero integer.
int valuation(const Integer& n, int64_t p);
// Floor-canonical residue in [0, n).
int64_t mod(const Integer& a, int64_t n);

}  // namespace arith
}  // namespace mfpm
