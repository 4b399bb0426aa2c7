#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace a1;
using namespace testing;

namespace {

std::int64_t fp(const FieldElement& a) { return std::get<std::int64_t>(a.rep()); }

/// (c0, c1) of an element of a quadratic extension of F_p.
std::pair<std::int64_t, std::int64_t> pair_of(const FieldElement& a) {
  const auto& c = std::get<PolyRep>(a.rep()).c;
  return {c.size() > 0 ? fp(c[0]) : 0, c.size() > 1 ? fp(c[1]) : 0};
}

/// Squarefree part of |n| * sign(n) by trial division.
long squarefree(long n) {
  long sign = n < 0 ? -1 : 1, r = 1;
  n *= sign;
  for (long d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) n /= d, ++e;
    if (e % 2) r *= d;
  }
  return sign * r * n;
}

}  // namespace

TEST_SUITE("field") {

TEST_CASE("prime field arithmetic agrees with integers mod p") {
  for (long p : {3L, 5L, 7L, 13L}) {
    Field k = F(p);
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < p; ++b) {
        FieldElement x = k->from_int(a), y = k->from_int(b);
        CHECK(fp(x + y) == (a + b) % p);
        CHECK(fp(x * y) == (a * b) % p);
        CHECK(fp(x - y) == ((a - b) % p + p) % p);
        if (b != 0) CHECK(fp(x / y * y) == a);
      }
  }
}

TEST_CASE("F25 multiplication follows w^2 = -2") {
  Field k = parse_field("F25");
  CHECK(k->descriptor() == "F5(w):w^2+2");
  for (auto x : k->enumerate())
    for (auto y : k->enumerate()) {
      auto [a, b] = pair_of(x);
      auto [c, d] = pair_of(y);
      auto [e, f] = pair_of(x * y);
      CHECK(e == (((a * c - 2 * b * d) % 5) + 5) % 5);
      CHECK(f == (a * d + b * c) % 5);
    }
}

TEST_CASE("is_square matches the set of squares") {
  for (const char* d : {"F5", "F7", "F25", "F49", "F27"}) {
    Field k = parse_field(d);
    auto all = k->enumerate();
    std::set<std::uint64_t> squares;
    for (const auto& a : all) squares.insert(k->index(a * a));
    for (const auto& a : all) {
      if (a.is_zero()) continue;
      bool sq = squares.count(k->index(a)) > 0;
      CHECK((k->is_square(a) == Tri::True) == sq);
      auto r = k->sqrt(a);
      CHECK(r.has_value() == sq);
      if (r) CHECK(*r * *r == a);
    }
  }
}

TEST_CASE("trace is the sum of Frobenius conjugates") {
  for (auto [d, p] : {std::pair{"F25", 5L}, std::pair{"F49", 7L}, std::pair{"F125", 5L}}) {
    Field k = parse_field(d);
    for (const auto& a : k->enumerate()) {
      FieldElement sum = k->zero(), c = a;
      for (int i = 0; i < k->degree(); ++i) {
        sum += c;
        c = c.pow(p);
      }
      CHECK(k->coerce(k->trace(a)) == sum);
    }
  }
}

TEST_CASE("rational square classes are squarefree integers") {
  Field q = Q();
  for (long n = -60; n <= 60; ++n) {
    if (n == 0) continue;
    for (long d : {1L, 2L, 9L, 12L}) {
      mpq_class v(n, d);
      v.canonicalize();
      FieldElement rep = q->square_class(q->from_rational(v)).rep;
      CHECK(rep == q->from_int(squarefree(n * d)));
    }
  }
}

TEST_CASE("number field arithmetic") {
  Field k = parse_field("Q(a):a^2-2");
  FieldElement a = k->generator();
  CHECK(a * a == k->from_int(2));
  CHECK(k->is_square(k->from_int(2)) == Tri::True);
  FieldElement x = a + k->from_int(3);
  CHECK(x * x.inverse() == k->one());
  CHECK(k->trace(x) == Q()->from_int(6));
}

TEST_CASE("rational functions reduce") {
  Field k = parse_field("Q(z)");
  FieldElement z = k->generator(), one = k->one();
  CHECK((z * z - one) / (z - one) == z + one);
  CHECK(k->is_square(z) == Tri::False);
}

TEST_CASE("Puiseux series arithmetic") {
  Field K = parse_field("Q((t;2;16))");
  FieldElement s = parse_element("t^(1/2)", K);
  CHECK(s * s == K->t());
  CHECK(K->valuation(s) == 1);
  FieldElement geo = K->zero();
  for (int i = 0; i < 8; ++i) geo += K->t().pow(i);
  FieldElement prod = (K->one() - K->t()) * geo;
  CHECK(K->valuation(prod - K->one()).value_or(K->cap()) >= 16);
  CHECK(K->inv(K->one() - K->t()) == geo);
  CHECK(K->is_square(parse_element("4*t*(1 - t)", K)) == Tri::True);
  Field T = parse_field("Q((t;1;16))");
  CHECK(T->square_class(parse_element("4*t*(1 - t)", T)).rep == T->t());
  CHECK(K->is_square(parse_element("-1", K)) == Tri::False);
}

TEST_CASE("field grammar") {
  CHECK(parse_field("F7")->order() == 7);
  CHECK(parse_field("F125")->descriptor() == "F5(w):w^3+w+1");
  CHECK(parse_field("Q(z)(y):[y^2-z^3+z]")->descriptor() == "Q(z)(y):y^2+(-z^3+z)");
  CHECK(parse_field("Q((t;2;16))")->cap() == 16);
  CHECK_THROWS_AS(parse_field("F6"), Error);
  CHECK_THROWS_AS(parse_field("F2"), Error);
  try {
    parse_field("Q((t;2;))");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 7);
  }
  try {
    parse_polynomial("x1 + 2x2", Q(), {"x1", "x2"});
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(parse_polynomial("x3", Q(), {"x1", "x2"}), Error);
}
}
