#include "doctest.h"
#include "support.hpp"

#include "a1/puiseux.hpp"

using namespace a1;
using namespace testing;

namespace {

Polynomial random_poly(const Field& k, const std::vector<std::string>& vars, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(0, 3), coin(0, 2);
  Polynomial p(k, vars);
  for (int i = 0; i < 5; ++i) {
    Monomial m(vars.size());
    for (auto& x : m) x = e(rng);
    if (coin(rng)) p.add_term(m, random_unit(k, rng));
  }
  return p;
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("rendering re-parses to the same polynomial") {
  std::mt19937_64 rng(7);
  for (Field k : {Q(), F(7), parse_field("F25")})
    for (int i = 0; i < 30; ++i) {
      Polynomial p = random_poly(k, {"x1", "x2"}, rng);
      CHECK(poly(p.str(), k) == p);
    }
}

TEST_CASE("derivative obeys the product rule") {
  std::mt19937_64 rng(11);
  Field k = F(7);
  for (int i = 0; i < 30; ++i) {
    Polynomial p = random_poly(k, {"x1", "x2"}, rng), q = random_poly(k, {"x1", "x2"}, rng);
    for (std::size_t v = 0; v < 2; ++v)
      CHECK((p * q).derivative(v) == p.derivative(v) * q + p * q.derivative(v));
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937_64 rng(13);
  Field k = Q();
  for (int i = 0; i < 30; ++i) {
    Polynomial p = random_poly(k, {"x1", "x2"}, rng), q = random_poly(k, {"x1", "x2"}, rng);
    std::vector<FieldElement> x = {random_unit(k, rng), random_unit(k, rng)};
    CHECK((p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x));
    CHECK((p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x));
  }
}

TEST_CASE("gradients of the cusp and of its deformation") {
  Field k = Q();
  auto g = gradient(poly("x2^2 - x1^3", k));
  CHECK(g[0] == poly("-3*x1^2", k));
  CHECK(g[1] == poly("2*x2", k));
  std::vector<std::string> v = {"x1", "x2", "t"};
  Polynomial F = deformation(poly("x2^2 - x1^3", k), poly("3*x1 + 2*x2 + 2*x1^3 - t*x1^3", k, v));
  CHECK(F.vars() == v);
  auto d = gradient(F);
  CHECK(d[0] == poly("-3*x1^2 + 3*t + 6*t*x1^2 - 3*t^2*x1^2", k, v));
  CHECK(d[1] == poly("2*x2 + 2*t", k, v));
}

TEST_CASE("Hessian determinant of a diagonal quadric is 2^n times the product") {
  Field k = Q();
  CHECK(hessian_determinant(poly("2*x1^2 + 3*x2^2 - x3^2", k, {"x1", "x2", "x3"})) ==
        poly("-48", k, {"x1", "x2", "x3"}));
  Field r = parse_field("Q(a1)(a2)");
  CHECK(jacobian_determinant(gradient(poly("a1*x1^2 + a2*x2^2", r))) == poly("4*a1*a2", r));
}

TEST_CASE("homogenization dehomogenizes back") {
  std::mt19937_64 rng(17);
  Field k = F(5);
  for (int i = 0; i < 20; ++i) {
    Polynomial p = random_poly(k, {"x1", "x2"}, rng);
    Polynomial h = homogenize(p, "x0");
    CHECK(h.specialize(0, k->one()).with_vars({"x1", "x2"}) == p);
  }
}

TEST_CASE("implicit multiplication and unknown names are rejected") {
  CHECK_THROWS_AS(poly("x1 x2", Q()), SyntaxError);
  CHECK_THROWS_AS(poly("x1 / x2", Q()), Error);
  CHECK_THROWS_AS(poly("y", Q()), Error);
  CHECK(poly("x1/2", Q()) == poly("(1/2)*x1", Q()));
}
}
