#include <map>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace a1;
using namespace testing;

namespace {

long legendre(long u, long p) {
  u %= p;
  if (u < 0) u += p;
  long r = 1, b = u, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

/// (a, b)_p for nonzero integers by the classical formulas.
int hilbert(long a, long b, long p) {
  int al = 0, be = 0;
  while (a % p == 0) a /= p, ++al;
  while (b % p == 0) b /= p, ++be;
  if (p != 2) {
    long s = (al * be * ((p - 1) / 2)) % 2 ? -1 : 1;
    if (be % 2) s *= legendre(a, p);
    if (al % 2) s *= legendre(b, p);
    return static_cast<int>(s);
  }
  auto eps = [](long u) { return (((u - 1) / 2) % 2 + 2) % 2; };
  auto omega = [](long u) { return (((u * u - 1) / 8) % 2 + 2) % 2; };
  long e = eps(a) * eps(b) + al * omega(b) + be * omega(a);
  return e % 2 ? -1 : 1;
}

/// Isometry of diagonal integer forms over Q: rank, signature, discriminant, Hasse invariants.
bool rational_oracle(const std::vector<long>& x, const std::vector<long>& y) {
  if (x.size() != y.size()) return false;
  auto sig = [](const std::vector<long>& v) {
    long s = 0;
    for (long a : v) s += a > 0 ? 1 : -1;
    return s;
  };
  if (sig(x) != sig(y)) return false;
  long dx = 1, dy = 1;
  for (long a : x) dx *= a;
  for (long a : y) dy *= a;
  if (dx * dy < 0) return false;
  long prod = std::abs(dx * dy), r = 1;
  for (long d = 2; d * d <= prod; ++d) {
    int e = 0;
    while (prod % d == 0) prod /= d, ++e;
    if (e % 2) r *= d;
  }
  if (r * prod != 1) return false;
  std::set<long> primes = {2};
  for (const auto* v : {&x, &y})
    for (long a : *v) {
      long n = std::abs(a);
      for (long d = 2; d <= n; ++d)
        if (n % d == 0) {
          primes.insert(d);
          while (n % d == 0) n /= d;
        }
    }
  auto hasse = [](const std::vector<long>& v, long p) {
    int h = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) h *= hilbert(v[i], v[j], p);
    return h;
  };
  for (long p : primes)
    if (hasse(x, p) != hasse(y, p)) return false;
  return true;
}

/// Value distribution of a diagonal form over a prime field; determines the isometry class.
std::vector<long> value_counts(const std::vector<long>& a, long p) {
  std::vector<long> counts(static_cast<std::size_t>(p), 0);
  std::vector<long> x(a.size(), 0);
  while (true) {
    long v = 0;
    for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * x[i] * x[i];
    ++counts[static_cast<std::size_t>(((v % p) + p) % p)];
    std::size_t i = 0;
    while (i < x.size() && ++x[i] == p) x[i++] = 0;
    if (i == x.size()) break;
  }
  return counts;
}

GwElement diag(const Field& k, const std::vector<long>& a) {
  GwElement e(k);
  for (long v : a) e.add_symbol(k->from_int(v));
  return e;
}

}  // namespace

TEST_SUITE("gw") {

TEST_CASE("equality over Q agrees with the Hasse-Minkowski oracle") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-15, 15);
  auto draw = [&](std::size_t n) {
    std::vector<long> v;
    while (v.size() < n) {
      long a = d(rng);
      if (a) v.push_back(a);
    }
    return v;
  };
  int agreeing = 0;
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + i % 3;
    auto x = draw(n), y = draw(n);
    bool want = rational_oracle(x, y);
    Tri got = equals(diag(Q(), x), diag(Q(), y));
    CHECK(got == (want ? Tri::True : Tri::False));
    agreeing += want;
  }
  CHECK(agreeing > 5);
}

TEST_CASE("equality over prime fields agrees with value counts") {
  for (long p : {5L, 7L, 11L})
    for (long a1 = 1; a1 < p; ++a1)
      for (long a2 = 1; a2 < p; ++a2)
        for (long b1 = 1; b1 < p; ++b1)
          for (long b2 : {1L, 2L, 3L}) {
            bool want = value_counts({a1, a2}, p) == value_counts({b1, b2}, p);
            CHECK((equals(diag(F(p), {a1, a2}), diag(F(p), {b1, b2})) == Tri::True) == want);
          }
}

TEST_CASE("the four defining relations hold on random pairs") {
  std::mt19937_64 rng(5);
  for (Field k : {Q(), F(5), F(7), parse_field("F25")})
    for (int i = 0; i < 50; ++i) {
      FieldElement a = random_unit(k, rng), b = random_unit(k, rng);
      CHECK(same(GwElement::symbol(a * b * b), GwElement::symbol(a)));
      CHECK(same(GwElement::symbol(a) * GwElement::symbol(b), GwElement::symbol(a * b)));
      if (!(a + b).is_zero())
        CHECK(same(GwElement::symbol(a) + GwElement::symbol(b),
                   GwElement::symbol(a + b) + GwElement::symbol(a * b * (a + b))));
      CHECK(same(GwElement::symbol(a) + GwElement::symbol(-a), GwElement::hyperbolic(k)));
    }
}

TEST_CASE("simplify is idempotent and rendering round-trips") {
  std::mt19937_64 rng(9);
  for (Field k : {Q(), F(5), F(7), parse_field("F25")})
    for (int i = 0; i < 30; ++i) {
      GwElement e(k);
      for (int j = 0; j < 4; ++j) e.add_symbol(random_unit(k, rng), (j % 2) ? -1 : 2);
      GwElement s = simplify(e);
      CHECK(simplify(s).str() == s.str());
      CHECK(same(parse_gw(s.str(), k), e));
      CHECK(same(s, e));
    }
}

TEST_CASE("invariants of 15<1> + 12<-1>") {
  auto inv = invariants(gw("15<1> + 12<-1>", Q()));
  CHECK(inv.rank == 27);
  CHECK(*inv.signature == 3);
  CHECK(inv.discriminant->rep == Q()->one());
}

TEST_CASE("diagonalization of a hyperbolic plane") {
  Field q = Q();
  Matrix m = {{q->zero(), q->from_int(2)}, {q->from_int(2), q->zero()}};
  CHECK(same(diagonalize(q, m), GwElement::hyperbolic(q)));
  Matrix z = {{q->zero(), q->zero()}, {q->zero(), q->zero()}};
  CHECK_THROWS_AS(diagonalize(q, z), Error);
}

TEST_CASE("transfers from quadratic extensions of finite fields") {
  Field f25 = parse_field("F25"), f49 = parse_field("F49");
  GwElement t25 = transfer(GwElement::symbol(f25->from_int(-1)), f25->base());
  CHECK(t25.rank() == 2);
  CHECK(f25->base()->is_square(invariants(t25).discriminant->rep) == Tri::False);
  // Gram of Tr(-x y) on {1, w} with w^2 = -1: diag(-2, 2), determinant -4.
  GwElement t49 = transfer(GwElement::symbol(f49->from_int(-1)), f49->base());
  CHECK(same(t49, diag(F(7), {-2, 2})));
  CHECK(f49->base()->is_square(invariants(t49).discriminant->rep) == Tri::False);
}

TEST_CASE("transfer Gram matrices") {
  Field k = parse_field("Q(a):a^2-2");
  CHECK(same(transfer(GwElement::symbol(k->one()), Q()), diag(Q(), {2, 4})));
  Field L = parse_field("Q(z)(y):[y^2-z^3+z]");
  FieldElement y = L->generator();
  Matrix g = transfer_gram(L->from_int(2) * y, {L->one(), y.inverse()});
  Field b = L->base();
  CHECK(g == Matrix{{b->zero(), b->from_int(4)}, {b->from_int(4), b->zero()}});
  CHECK(same(transfer(GwElement::symbol(L->from_int(2) * y), b), GwElement::hyperbolic(b)));
}

TEST_CASE("Springer residues split by valuation parity") {
  Field K = parse_field("Q((t;1;8))");
  auto r = springer_residues(gw("<3> + <5*t>", K));
  CHECK(same(r.first, gw("<3>", Q())));
  CHECK(same(r.second, gw("<5>", Q())));
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> e(0, 5);
  for (int i = 0; i < 20; ++i) {
    GwElement c(K);
    for (int j = 0; j < 3; ++j) c.add_symbol(K->from_coeffs({random_unit(Q(), rng)}) * K->t().pow(e(rng)));
    auto raw = springer_residues(c, false);
    CHECK(same(springer_reconstruct(raw, K), c));
    auto norm = springer_residues(c, true);
    CHECK(same(springer_reconstruct(norm, K), c));
  }
}

TEST_CASE("symbol of zero is rejected") {
  CHECK_THROWS_AS(GwElement::symbol(Q()->zero()), Error);
}
}
