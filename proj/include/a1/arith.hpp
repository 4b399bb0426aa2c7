#pragma once

// Integer helpers for square classes and Hilbert symbols over Q.

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

namespace a1::arith {

bool is_prime(const mpz_class& n);

/// Prime factorization of |n| (n != 0), primes ascending.
std::vector<std::pair<mpz_class, int>> factor(const mpz_class& n);

/// sign(n) times the product of primes dividing n to an odd power.
mpz_class squarefree_part(const mpz_class& n);

/// Legendre symbol (a/p) for an odd prime p; 0 when p | a.
int legendre(const mpz_class& a, const mpz_class& p);

/// Hilbert symbol (a,b)_p for nonzero integers a, b and a prime p.
int hilbert_symbol(const mpz_class& a, const mpz_class& b, const mpz_class& p);

/// Hilbert symbol at the real place.
inline int hilbert_symbol_real(const mpz_class& a, const mpz_class& b) {
  return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q);

/// Distinct prime divisors of |n|.
std::vector<mpz_class> prime_divisors(const mpz_class& n);

}  // namespace a1::arith
