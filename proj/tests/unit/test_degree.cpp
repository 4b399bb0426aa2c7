#include "doctest.h"
#include "support.hpp"

#include "a1/degree.hpp"

using namespace a1;
using namespace testing;

namespace {

/// Random system vanishing at the origin with invertible linear part.
std::vector<Polynomial> simple_system(const Field& k, std::mt19937_64& rng) {
  std::vector<std::string> v = {"x1", "x2"};
  std::uniform_int_distribution<int> e(0, 2);
  while (true) {
    std::vector<Polynomial> fs;
    for (int i = 0; i < 2; ++i) {
      Polynomial p(k, v);
      for (int j = 0; j < 4; ++j) {
        Monomial m = {e(rng), e(rng)};
        if (m[0] + m[1] > 0) p.add_term(m, random_unit(k, rng));
      }
      fs.push_back(p);
    }
    if (!jacobian_determinant(fs).evaluate({k->zero(), k->zero()}).is_zero()) return fs;
  }
}

Polynomial random_upoly(const Field& k, int deg, bool monic, std::mt19937_64& rng) {
  Polynomial p(k, {"z"});
  std::uniform_int_distribution<std::uint64_t> d(0, k->order().get_ui() - 1);
  for (int i = 0; i < deg; ++i) p.add_term({i}, k->element_at(d(rng)));
  p.add_term({deg}, monic ? k->one() : random_unit(k, rng));
  return p;
}

}  // namespace

TEST_SUITE("degree") {

TEST_CASE("simple zeros give the class of the Jacobian") {
  for (long a : {1L, 2L, 3L, -1L, 6L}) {
    Polynomial f = poly(std::to_string(a) + "*z", Q(), {"z"});
    CHECK(same(local_degree({f}, {Q()->zero()}), GwElement::symbol(Q()->from_int(a))));
    CHECK(same(bezout_form_p1(f, poly("1", Q(), {"z"})), GwElement::symbol(Q()->from_int(a))));
  }
}

TEST_CASE("EKL and Jacobian paths agree at simple zeros over F5") {
  std::mt19937_64 rng(41);
  Field k = F(5);
  for (int i = 0; i < 100; ++i) {
    auto fs = simple_system(k, rng);
    std::vector<FieldElement> o = {k->zero(), k->zero()};
    GwElement ekl = ekl_form(fs, o).cls;
    CHECK(same(ekl, local_degree_simple(fs, o)));
    CHECK(same(ekl, GwElement::symbol(jacobian_determinant(fs).evaluate(o))));
  }
}

TEST_CASE("EKL Gram of z^2") {
  EklForm e = ekl_form({poly("z^2", Q(), {"z"})}, {Q()->zero()});
  Field q = Q();
  CHECK(e.gram == Matrix{{q->zero(), q->one()}, {q->one(), q->zero()}});
  CHECK(e.eta[1] * e.jacobian[1] == q->from_int(2));
  auto inv = invariants(e.cls);
  CHECK(inv.rank == 2);
  CHECK(*inv.signature == 0);
}

TEST_CASE("rank of the EKL form is the local dimension") {
  Field q = Q();
  std::vector<FieldElement> o1 = {q->zero()}, o2 = {q->zero(), q->zero()};
  for (int k = 1; k <= 5; ++k) {
    auto fs = std::vector<Polynomial>{poly("z^" + std::to_string(k), q, {"z"})};
    CHECK(local_degree(fs, o1).rank() == k);
    // z^k over the reals has degree 0 or 1.
    CHECK(*invariants(local_degree(fs, o1)).signature == k % 2);
  }
  for (auto [sys, dim] : {std::pair{"-3*x1^2, 2*x2", 2}, std::pair{"-4*x1^3, 2*x2", 3}, std::pair{"x1^2, x2^3", 6}}) {
    auto fs = parse_system(sys, q);
    CHECK(ekl_form(fs, o2).cls.rank() == dim);
    CHECK(local_quotient(fs, o2).dimension() == static_cast<std::size_t>(dim));
  }
}

TEST_CASE("Bezout matrix satisfies its defining identity") {
  std::mt19937_64 rng(43);
  Field k = F(7);
  for (int i = 0; i < 20; ++i) {
    Polynomial a = random_upoly(k, 3, false, rng), b = random_upoly(k, 1, true, rng);
    Matrix c;
    try {
      c = bezout_matrix(a, b);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotCoprime);
      continue;
    }
    std::vector<std::string> v = {"X", "Y"};
    Polynomial X = Polynomial::variable(k, v, 0), Y = Polynomial::variable(k, v, 1);
    Polynomial sum(k, v);
    for (std::size_t r = 0; r < c.size(); ++r)
      for (std::size_t s = 0; s < c.size(); ++s) sum.add_term({static_cast<int>(r), static_cast<int>(s)}, c[r][s]);
    Polynomial lhs = a.compose({X}) * b.compose({Y}) - a.compose({Y}) * b.compose({X});
    CHECK(sum * (X - Y) == lhs);
  }
}

TEST_CASE("Bezout class equals fiber sums at every regular value over F5") {
  std::mt19937_64 rng(47);
  Field k = F(5);
  int maps = 0;
  while (maps < 20) {
    Polynomial a = random_upoly(k, 2 + maps % 2, false, rng), b = random_upoly(k, maps % 2, true, rng);
    GwElement bz;
    try {
      bz = bezout_form_p1(a, b);
    } catch (const Error&) {
      continue;
    }
    ++maps;
    int regular = 0;
    for (const auto& y : k->enumerate()) {
      try {
        GlobalDegree g = global_degree_p1(a, b, y, 3);
        CHECK(same(g.degree, bz));
        ++regular;
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IrregularValue);
      }
    }
    CHECK(regular > 0);
  }
}

TEST_CASE("global degree of z^2 over F5") {
  Field k = F(5);
  auto fs = std::vector<Polynomial>{poly("z^2", k, {"z"})};
  CHECK_THROWS_AS(global_degree_finite_field(fs, {k->zero()}, 3), Error);
  for (long y = 1; y < 5; ++y) {
    GlobalDegree g = global_degree_finite_field(fs, {k->from_int(y)}, 3);
    CHECK(g.geometric_count == 2);
    CHECK(same(g.degree, GwElement::hyperbolic(k)));
  }
}

TEST_CASE("zeros at non-rational points transfer to the base") {
  Field L = parse_field("Q(a):a^2-2");
  auto fs = std::vector<Polynomial>{poly("z^2 - 2", Q(), {"z"})};
  GwElement d = local_degree(fs, {L->generator()});
  CHECK(same_field(d.field(), Q()));
  CHECK(same(d, GwElement::hyperbolic(Q())));
  auto sq = std::vector<Polynomial>{poly("(z^2 - 2)^2", Q(), {"z"})};
  CHECK(local_degree(sq, {L->generator()}).rank() == 4);
}

TEST_CASE("Bezout rejections") {
  Field q = Q();
  try {
    bezout_form_p1(poly("z^2 - 1", q, {"z"}), poly("z - 1", q, {"z"}));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCoprime);
  }
  try {
    bezout_form_p1(poly("z", q, {"z"}), poly("z^2 + 1", q, {"z"}));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeOrder);
  }
}
}
