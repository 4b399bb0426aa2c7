#include "doctest.h"
#include "support.hpp"

#include "a1/milnor.hpp"

using namespace a1;
using namespace testing;

TEST_SUITE("milnor") {

TEST_CASE("cusp Milnor number over Q, F5 and F7") {
  for (Field k : {Q(), F(5), F(7)}) {
    GwElement mu = milnor_number(poly("x2^2 - x1^3", k), {k->zero(), k->zero()});
    CHECK(same(mu, GwElement::hyperbolic(k)));
  }
}

TEST_CASE("rank is the classical Milnor number of x1^a + x2^b") {
  for (int a = 2; a <= 5; ++a)
    for (int b = 2; b <= 5; ++b) {
      Polynomial f = poly("x1^" + std::to_string(a) + " + x2^" + std::to_string(b), Q());
      CHECK(milnor_number(f, {Q()->zero(), Q()->zero()}).rank() == (a - 1) * (b - 1));
    }
}

TEST_CASE("quadric nodes have type <2^n prod a_i>") {
  std::mt19937_64 rng(51);
  for (Field k : {Q(), F(7), F(11)})
    for (int n = 1; n <= 3; ++n)
      for (int i = 0; i < 10; ++i) {
        std::vector<std::string> vars;
        Polynomial f(k, {});
        FieldElement prod = k->one();
        std::vector<FieldElement> a;
        for (int j = 0; j < n; ++j) vars.push_back("x" + std::to_string(j + 1));
        f = Polynomial(k, vars);
        for (int j = 0; j < n; ++j) {
          a.push_back(random_unit(k, rng));
          Monomial m(static_cast<std::size_t>(n), 0);
          m[static_cast<std::size_t>(j)] = 2;
          f.add_term(m, a.back());
          prod = prod * k->from_int(2) * a.back();
        }
        std::vector<FieldElement> o(static_cast<std::size_t>(n), k->zero());
        CHECK(same(milnor_number(f, o), GwElement::symbol(prod)));
        CHECK(same(node_type(f, o), GwElement::symbol(prod)));
      }
}

TEST_CASE("plane node type is <-D> with D the tangent discriminant") {
  // A node a x1^2 + b x1 x2 + c x2^2 is split exactly when its tangent cone has two rational lines.
  for (long p : {5L, 7L}) {
    Field k = F(p);
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < p; ++b)
        for (long c = 0; c < p; ++c) {
          if ((4 * a * c - b * b) % p == 0) continue;
          int lines = (a % p == 0) ? 1 : 0;  // the point (1 : 0)
          for (long x = 0; x < p; ++x)
            if ((a * x * x + b * x + c) % p == 0) ++lines;
          Polynomial f = poly(std::to_string(a) + "*x1^2 + " + std::to_string(b) + "*x1*x2 + " + std::to_string(c) +
                                  "*x2^2 + x1^3",
                              k);
          GwElement t = node_type(f, {k->zero(), k->zero()});
          FieldElement d = k->from_int(b * b - 4 * a * c);
          CHECK(same(t, GwElement::symbol(-d)));
          CHECK((lines == 2) == (k->is_square(d) == Tri::True));
        }
  }
}

TEST_CASE("point classification") {
  Field q = Q();
  std::vector<FieldElement> o = {q->zero(), q->zero()};
  CHECK(classify_point(poly("x1 + x2^2", q), o).kind == PointKind::Smooth);
  CHECK(classify_point(poly("x1^2 - x2^2", q), o).kind == PointKind::Node);
  CHECK(classify_point(poly("x2^2 - x1^3", q), o).kind == PointKind::HigherSingularity);
  CHECK_THROWS_AS(node_type(poly("x2^2 - x1^3", q), o), Error);
  try {
    milnor_number(poly("x1 + x2^2", q), o);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SmoothPoint);
  }
}

TEST_CASE("linear perturbations over F5 and F7") {
  for (long p : {5L, 7L})
    for (const char* s : {"x2^2 - x1^3", "x2^2 - x1^4"}) {
      Field k = F(p);
      Polynomial f = poly(s, k);
      FamilyReport r = verify_linear_family(f, 25, 3, 1);
      CHECK(r.generic > 10);
      CHECK(r.all_equal);
      CHECK(r.obstructions_hold);
      CHECK(r.lhs_rank == (std::string(s).find('3') != std::string::npos ? 2 : 3));
      // Rational critical points of f - a.x counted by brute force.
      for (const auto& smp : r.samples) {
        long count = 0;
        for (const auto& x1 : k->enumerate())
          for (const auto& x2 : k->enumerate()) {
            auto g = gradient(f);
            if (g[0].evaluate({x1, x2}) == smp.a[0] && g[1].evaluate({x1, x2}) == smp.a[1]) ++count;
          }
        long rational = 0;
        for (const auto& nd : smp.nodes) rational += nd.degree == 1;
        CHECK(rational == count);
      }
      FamilyReport again = verify_linear_family(f, 25, 3, 1);
      CHECK(again.buckets == r.buckets);
    }
}
}
