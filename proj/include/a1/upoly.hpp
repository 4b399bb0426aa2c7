#pragma once

// Dense univariate polynomials over a Field, coefficients low to high.
// The zero polynomial is the empty vector.

#include <string>
#include <utility>
#include <vector>

#include "a1/field.hpp"

namespace a1::upoly {

using Coeffs = std::vector<FieldElement>;

void trim(Coeffs& a);
int deg(const Coeffs& a);
const FieldElement& lead(const Coeffs& a);

Coeffs add(const Field& k, const Coeffs& a, const Coeffs& b);
Coeffs sub(const Field& k, const Coeffs& a, const Coeffs& b);
Coeffs mul(const Field& k, const Coeffs& a, const Coeffs& b);
Coeffs scale(const Field& k, const FieldElement& c, const Coeffs& a);
std::pair<Coeffs, Coeffs> divmod(const Field& k, const Coeffs& a, const Coeffs& b);
Coeffs mod(const Field& k, const Coeffs& a, const Coeffs& b);
Coeffs monic(const Field& k, const Coeffs& a);
/// Monic gcd; gcd(0, 0) = 0.
Coeffs gcd(const Field& k, const Coeffs& a, const Coeffs& b);
/// g = s*a + t*b with g the monic gcd.
Coeffs ext_gcd(const Field& k, const Coeffs& a, const Coeffs& b, Coeffs& s, Coeffs& t);
Coeffs derivative(const Field& k, const Coeffs& a);
Coeffs powmod(const Field& k, const Coeffs& a, const mpz_class& e, const Coeffs& m);
FieldElement eval(const Field& k, const Coeffs& a, const FieldElement& x);
Coeffs x_power(const Field& k, int n);
bool is_one(const Coeffs& a);

/// Irreducibility: exact over finite fields (Rabin) and for degree <= 3 over Q;
/// degree-pattern sieve modulo primes otherwise, Unknown when inconclusive.
Tri is_irreducible(const Field& k, const Coeffs& a);

/// Squarefree decomposition of a monic polynomial: pairs (factor, multiplicity)
/// with product of factor^mult equal to a. Base of characteristic 0 or finite.
std::vector<std::pair<Coeffs, int>> squarefree(const Field& k, const Coeffs& a);

std::string format(const Field& k, const Coeffs& a, const std::string& var);

}  // namespace a1::upoly
