#include "doctest.h"
#include "support.hpp"

#include "a1/puiseux.hpp"

using namespace a1;
using namespace testing;

namespace {

const std::vector<std::string> kXYT = {"x1", "x2", "t"};

struct Cusp {
  Polynomial f = poly("x2^2 - x1^3", Q());
  Polynomial g = poly("3*x1 + 2*x2 + 2*x1^3 - t*x1^3", Q(), kXYT);
  Field K = parse_field("Q((t;2;16))");
  Branch lift(const std::string& seed, std::int64_t target = 0) const {
    return newton_lift(f, g, parse_seed(seed, K), target);
  }
};

}  // namespace

TEST_SUITE("puiseux") {

TEST_CASE("cusp branches are +-sqrt(t)/(1 - t), -t") {
  Cusp c;
  for (int sign : {1, -1}) {
    Branch b = c.lift(sign > 0 ? "x1: t^(1/2); x2: -t" : "x1: -t^(1/2); x2: -t");
    CHECK(b.precision == 16);
    // sqrt(t)/(1 - t) = s / (1 - s^2).
    FieldElement s = c.K->generator();
    FieldElement want = c.K->from_int(sign) * s * c.K->inv(c.K->one() - s * s);
    CHECK(c.K->valuation(b.coords[0] - want).value_or(16) >= 16);
    CHECK(b.coords[1] == -c.K->t());
    for (std::size_t i = 1; i < b.residual_valuations.size(); ++i)
      CHECK(b.residual_valuations[i] > b.residual_valuations[i - 1]);
  }
}

TEST_CASE("lifted branches annihilate the gradient to the certified order") {
  Cusp c;
  Branch b = c.lift("x1: t^(1/2); x2: -t");
  Polynomial F = deformation(c.f, c.g);
  std::vector<FieldElement> pt = {b.coords[0], b.coords[1], c.K->t()};
  for (const auto& d : {F.derivative(0), F.derivative(1)}) {
    FieldElement r = d.evaluate(pt);
    CHECK(c.K->valuation(r).value_or(c.K->precision(r)) >= b.precision);
  }
}

TEST_CASE("branch types are <-+12 sqrt(t)(1 - t)>") {
  Cusp c;
  Branch plus = c.lift("x1: t^(1/2); x2: -t"), minus = c.lift("x1: -t^(1/2); x2: -t");
  GwElement want = GwElement::symbol(parse_element("12*t^(1/2)*(1 - t)", c.K));
  CHECK(same(branch_type(minus, c.f, c.g), want));
  CHECK(same(branch_type(plus, c.f, c.g), GwElement::symbol(parse_element("-12*t^(1/2)*(1 - t)", c.K))));
}

TEST_CASE("the cusp bifurcation verifies and conjugates are merged") {
  Cusp c;
  std::vector<Branch> bs = {c.lift("x1: t^(1/2); x2: -t"), c.lift("x1: -t^(1/2); x2: -t")};
  BifurcationReport r = verify_bifurcation(c.f, c.g, bs, {Q()->zero(), Q()->zero()});
  CHECK(r.result == Tri::True);
  CHECK(r.branches[1].duplicate);
  CHECK(r.branches[1].conjugate_of == 0);
  CHECK(r.rank_sum == 2);
  CHECK(r.rhs_residues.second.empty());
  CHECK(same(r.rhs_residues.first, GwElement::hyperbolic(Q())));
  // One branch alone already carries the whole orbit.
  CHECK(verify_bifurcation(c.f, c.g, {bs[0]}, {Q()->zero(), Q()->zero()}).result == Tri::True);
}

TEST_CASE("tacnode along g = x1 with s^3 = t/4") {
  Polynomial f = poly("x2^2 - x1^4", Q()), g = poly("x1", Q());
  Field K = parse_field("Q((t;3;24;1/4))");
  Branch b = newton_lift(f, g, parse_seed("x1: s", K));
  CHECK(b.coords[0] == K->generator());
  CHECK(same(branch_type(b, f, g), GwElement::symbol(K->from_int(-24) * K->generator().pow(2))));
  BifurcationReport r = verify_bifurcation(f, g, {b}, {Q()->zero(), Q()->zero()});
  CHECK(r.rank_sum == 3);
  CHECK(r.result == Tri::True);
}

TEST_CASE("two orbits of branches, and a missing one") {
  // grad(x1^4 + x2^2 + t x1^2) vanishes at x1 = 0 and at x1^2 = -t/2.
  Polynomial f = poly("x1^4 + x2^2", Q()), g = poly("x1^2", Q());
  std::vector<FieldElement> o = {Q()->zero(), Q()->zero()};
  Branch zero = newton_lift(f, g, parse_seed("x1: 0", parse_field("Q((t;1;12))")));
  Branch pair = newton_lift(f, g, parse_seed("x1: s", parse_field("Q((t;2;12;-1/2))")));
  CHECK(same(branch_type(zero, f, g), gw("<t>", zero.field)));
  CHECK(same(branch_type(pair, f, g), gw("<1>", pair.field)));
  BifurcationReport full = verify_bifurcation(f, g, {zero, pair}, o);
  CHECK(full.rank_sum == 3);
  CHECK(full.result == Tri::True);
  CHECK(same(full.lhs, gw("<2> + <1> + <-1>", Q())));
  BifurcationReport partial = verify_bifurcation(f, g, {zero}, o);
  CHECK(partial.result == Tri::Unknown);
  CHECK(partial.diagnosis.find("IncompleteBranchSet") != std::string::npos);
}

TEST_CASE("seed and lift rejections") {
  Cusp c;
  try {
    c.lift("x1: 1; x2: 0");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SeedInconsistent);
  }
  try {
    c.lift("x3: t");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VariableMismatch);
  }
  Branch shallow = c.lift("x1: t^(1/2); x2: -t", 6);
  CHECK(shallow.precision == 6);
}
}
