#pragma once

#include <random>
#include <string>
#include <vector>

#include "a1/grammar.hpp"

namespace testing {

inline a1::Field Q() { return a1::FieldNode::rationals(); }
inline a1::Field F(long p) { return a1::FieldNode::prime(p); }

inline a1::Polynomial poly(const std::string& s, const a1::Field& k, std::vector<std::string> vars = {"x1", "x2"}) {
  return a1::parse_polynomial(s, k, vars);
}

inline a1::GwElement gw(const std::string& s, const a1::Field& k) { return a1::parse_gw(s, k); }

inline bool same(const a1::GwElement& a, const a1::GwElement& b) { return a1::equals(a, b) == a1::Tri::True; }

/// Nonzero element: uniform over a finite field, a small rational otherwise.
inline a1::FieldElement random_unit(const a1::Field& k, std::mt19937_64& rng) {
  if (k->is_finite()) {
    std::uniform_int_distribution<std::uint64_t> d(1, k->order().get_ui() - 1);
    return k->element_at(d(rng));
  }
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
  long n = 0;
  while (n == 0) n = num(rng);
  mpq_class q(n, den(rng));
  q.canonicalize();
  return k->from_rational(q);
}

}  // namespace testing
