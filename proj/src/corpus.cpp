#include "a1/corpus.hpp"

#include <functional>
#include <utility>

#include "a1/degree.hpp"
#include "a1/grammar.hpp"
#include "a1/milnor.hpp"
#include "a1/puiseux.hpp"

namespace a1 {

namespace {

using Check = std::function<std::pair<std::string, bool>()>;

const std::vector<std::string> kXY = {"x1", "x2"};

Polynomial poly(const std::string& text, const Field& k, const std::vector<std::string>& vars = kXY) {
  return parse_polynomial(text, k, vars);
}

std::pair<std::string, bool> class_is(const GwElement& actual, const std::string& expected) {
  GwElement e = parse_gw(expected, actual.field());
  return {simplify(actual).str(), equals(actual, e) == Tri::True};
}

std::string tri_word(Tri t) { return t == Tri::True ? "True" : t == Tri::False ? "False" : "Unknown"; }

std::string disc_word(const GwElement& e) {
  const Field& k = e.field();
  Tri sq = k->is_square(invariants(e).discriminant->rep);
  return sq == Tri::True ? "trivial" : sq == Tri::False ? "nontrivial" : "unknown";
}

std::string list_str(const std::vector<Polynomial>& ps) {
  std::string s = "(";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].str();
  return s + ")";
}

/// x1 = +-(s + s^3 + ...) below s^prec, the expansion of +-sqrt(t)/(1-t).
FieldElement geometric_branch(const Field& K, int sign, std::int64_t prec) {
  std::vector<std::int64_t> e;
  std::vector<FieldElement> c;
  for (std::int64_t i = 1; i < prec; i += 2) {
    e.push_back(i);
    c.push_back(K->base()->from_int(sign));
  }
  return K->from_series(e, c, prec);
}

struct CuspBranches {
  Polynomial f, g;
  Field K;
  std::vector<Branch> branches;
};

const CuspBranches& cusp_branches() {
  static const CuspBranches cb = [] {
    CuspBranches r;
    Field q = FieldNode::rationals();
    r.f = poly("x2^2 - x1^3", q);
    r.g = poly("3*x1 + 2*x2 + 2*x1^3 - t*x1^3", q, {"x1", "x2", "t"});
    r.K = parse_field("Q((t;2;16))");
    for (const char* s : {"x1: t^(1/2); x2: -t", "x1: -t^(1/2); x2: -t"})
      r.branches.push_back(newton_lift(r.f, r.g, parse_seed(s, r.K)));
    return r;
  }();
  return cb;
}

std::vector<std::pair<std::string, std::pair<std::string, Check>>> examples() {
  Field Q = FieldNode::rationals();
  Field F5 = FieldNode::prime(5);
  std::vector<std::pair<std::string, std::pair<std::string, Check>>> ex;
  auto add = [&](std::string name, std::string expected, Check c) {
    ex.push_back({std::move(name), {std::move(expected), std::move(c)}});
  };

  add("-1 is a square in F5", "True", [=] {
    Tri t = F5->is_square(F5->from_int(-1));
    return std::pair{tri_word(t), t == Tri::True};
  });
  add("trace of 2y over Q(z) with y^2 = z^3 - z", "0", [] {
    Field L = parse_field("Q(z)(y):[y^2 - z^3 + z]");
    FieldElement a = L->trace(parse_element("2*y", L));
    return std::pair{a.str(), a.is_zero()};
  });
  add("parse the cusp equation", "x2^2 - x1^3", [=] {
    Polynomial p = poly("x2^2 - x1^3", Q);
    Polynomial x1 = Polynomial::variable(Q, kXY, 0), x2 = Polynomial::variable(Q, kXY, 1);
    return std::pair{p.str(), p == x2 * x2 - x1 * x1 * x1};
  });
  add("parse the deformation direction g", "3*x1 + 2*x2 + 2*x1^3 - t*x1^3", [=] {
    std::vector<std::string> v = {"x1", "x2", "t"};
    Polynomial p = poly("3*x1 + 2*x2 + 2*x1^3 - t*x1^3", Q, v);
    Polynomial x1 = Polynomial::variable(Q, v, 0), x2 = Polynomial::variable(Q, v, 1), t = Polynomial::variable(Q, v, 2);
    Polynomial c = Polynomial::constant(Q, v, Q->from_int(1));
    Polynomial want = c.scale(Q->from_int(3)) * x1 + c.scale(Q->from_int(2)) * x2 +
                      c.scale(Q->from_int(2)) * x1.pow(3) - t * x1.pow(3);
    return std::pair{p.str(), p == want};
  });
  add("gradient of the cusp", "(-3*x1^2, 2*x2)", [=] {
    auto g = gradient(poly("x2^2 - x1^3", Q));
    return std::pair{list_str(g), g[0] == poly("-3*x1^2", Q) && g[1] == poly("2*x2", Q)};
  });
  add("gradient of the cusp deformation", "(-3*x1^2 + 3*t + 6*t*x1^2 - 3*t^2*x1^2, 2*x2 + 2*t)", [=] {
    std::vector<std::string> v = {"x1", "x2", "t"};
    Polynomial F = deformation(poly("x2^2 - x1^3", Q), poly("3*x1 + 2*x2 + 2*x1^3 - t*x1^3", Q, v));
    auto g = gradient(F.with_vars(v));
    std::vector<Polynomial> spatial = {g[0], g[1]};
    return std::pair{list_str(spatial), g[0] == poly("-3*x1^2 + 3*t + 6*t*x1^2 - 3*t^2*x1^2", Q, v) &&
                                             g[1] == poly("2*x2 + 2*t", Q, v)};
  });
  add("Jacobian of grad(a1*x1^2 + a2*x2^2)", "4*a1*a2", [] {
    Field k = parse_field("Q(a1)(a2)");
    auto J = jacobian_determinant(gradient(poly("a1*x1^2 + a2*x2^2", k)));
    return std::pair{J.str(), J == poly("4*a1*a2", k)};
  });
  add("Gram [[0, 2], [2, 0]] over Q", "<1> + <-1>", [=] {
    Matrix m = {{Q->zero(), Q->from_int(2)}, {Q->from_int(2), Q->zero()}};
    return class_is(diagonalize(Q, m), "<1> + <-1>");
  });
  add("Gram [[0, 4], [4, 0]] over Q(z)", "<1> + <-1>", [] {
    Field k = parse_field("Q(z)");
    Matrix m = {{k->zero(), k->from_int(4)}, {k->from_int(4), k->zero()}};
    return class_is(diagonalize(k, m), "<1> + <-1>");
  });
  add("<2> * <3> over Q", "<6>", [=] { return class_is(parse_gw("<2>", Q) * parse_gw("<3>", Q), "<6>"); });
  add("<5> * (<1> + <-1>) over Q", "<1> + <-1>",
      [=] { return class_is(parse_gw("<5>", Q) * GwElement::hyperbolic(Q), "<1> + <-1>"); });
  add("rank and signature of 15<1> + 12<-1>", "(27, 3)", [=] {
    auto inv = invariants(parse_gw("15<1> + 12<-1>", Q));
    std::string s = "(" + std::to_string(inv.rank) + ", " + std::to_string(*inv.signature) + ")";
    return std::pair{s, inv.rank == 27 && *inv.signature == 3};
  });
  add("discriminant of <1> + <-1> over F5", "trivial", [=] {
    std::string d = disc_word(GwElement::hyperbolic(F5));
    return std::pair{d, d == "trivial"};
  });
  add("<1> + <2> against <3> + <6> over Q", "True", [=] {
    Tri t = equals(parse_gw("<1> + <2>", Q), parse_gw("<3> + <6>", Q));
    return std::pair{tri_word(t), t == Tri::True};
  });
  for (auto [desc, q, want] : {std::tuple{"F25", 25, "nontrivial"}, std::tuple{"F49", 49, "trivial"}}) {
    add(std::string("discriminant of the trace from ") + desc + " of <-1>", want, [=, want = std::string(want)] {
      Field L = parse_field("F" + std::to_string(q));
      GwElement t = transfer(GwElement::symbol(L->from_int(-1)), L->base());
      std::string d = disc_word(t);
      return std::pair{d + " (" + simplify(t).str() + ")", d == want};
    });
  }
  add("Springer residues of <3> + <5t>", "(<3>, <5>)", [] {
    Field K = parse_field("Q((t;1;8))");
    auto r = springer_residues(parse_gw("<3> + <5*t>", K));
    std::string s = "(" + simplify(r.first).str() + ", " + simplify(r.second).str() + ")";
    return std::pair{s, equals(r.first, parse_gw("<3>", K->base())) == Tri::True &&
                            equals(r.second, parse_gw("<5>", K->base())) == Tri::True};
  });
  add("trace of <12*t^(1/2)*(1 - t)> down to Q((t))", "(<1> + <-1>, 0)", [] {
    Field K = parse_field("Q((t;2;16))");
    auto r = springer_residues(transfer(GwElement::symbol(parse_element("12*t^(1/2)*(1 - t)", K)), K->trace_base()));
    std::string s = "(" + simplify(r.first).str() + ", " + simplify(r.second).str() + ")";
    return std::pair{s, r.second.empty() && equals(r.first, GwElement::hyperbolic(FieldNode::rationals())) == Tri::True};
  });
  add("local algebra of z^2 at 0", "dimension 2, basis {1, z}", [=] {
    auto A = local_quotient({poly("z^2", Q, {"z"})}, {Q->zero()});
    std::string s = "dimension " + std::to_string(A.dimension()) + ", basis {";
    for (std::size_t i = 0; i < A.basis.size(); ++i)
      s += (i ? ", " : "") + Polynomial::monomial(Q, {"z"}, A.basis[i], Q->one()).str();
    s += "}";
    return std::pair{s, s == "dimension 2, basis {1, z}"};
  });
  add("image of the Jacobian 2z in the local algebra of z^2", "(0, 2)", [=] {
    Row j = jacobian_image(local_quotient({poly("z^2", Q, {"z"})}, {Q->zero()}));
    std::string s = "(" + j[0].str() + ", " + j[1].str() + ")";
    return std::pair{s, s == "(0, 2)"};
  });
  add("local degree of z -> 3z at 0", "<3>",
      [=] { return class_is(local_degree({poly("3*z", Q, {"z"})}, {Q->zero()}), "<3>"); });
  add("EKL Gram of z^2 at 0 up to the basis change {1, 2z}", "[[0, 2], [2, 0]]", [=] {
    EklForm e = ekl_form({poly("z^2", Q, {"z"})}, {Q->zero()});
    Matrix P = {{Q->one(), Q->zero()}, {Q->zero(), Q->from_int(2)}};
    Matrix c = multiply(Q, transpose(P), multiply(Q, e.gram, P));
    Matrix want = {{Q->zero(), Q->from_int(2)}, {Q->from_int(2), Q->zero()}};
    return std::pair{matrix_str(c), c == want};
  });
  add("rank and signature of the local degree of z^2", "(2, 0)", [=] {
    auto inv = invariants(local_degree({poly("z^2", Q, {"z"})}, {Q->zero()}));
    std::string s = "(" + std::to_string(inv.rank) + ", " + std::to_string(*inv.signature) + ")";
    return std::pair{s, inv.rank == 2 && *inv.signature == 0};
  });
  add("local degree of the cusp gradient at 0", "<1> + <-1>",
      [=] { return class_is(local_degree(gradient(poly("x2^2 - x1^3", Q)), {Q->zero(), Q->zero()}), "<1> + <-1>"); });
  add("Bezout form of z -> 3z", "<3>",
      [=] { return class_is(bezout_form_p1(poly("3*z", Q, {"z"}), poly("1", Q, {"z"})), "<3>"); });
  add("Bezout matrix of z -> z^2", "[[0, 1], [1, 0]] = <1> + <-1>", [=] {
    Polynomial a = poly("z^2", Q, {"z"}), b = poly("1", Q, {"z"});
    Matrix m = bezout_matrix(a, b);
    auto [cls, ok] = class_is(bezout_form_p1(a, b), "<1> + <-1>");
    Matrix want = {{Q->zero(), Q->one()}, {Q->one(), Q->zero()}};
    return std::pair{matrix_str(m) + " = " + cls, ok && m == want};
  });
  add("Milnor number of the cusp over Q", "<1> + <-1>",
      [=] { return class_is(milnor_number(poly("x2^2 - x1^3", Q), {Q->zero(), Q->zero()}), "<1> + <-1>"); });
  add("Milnor number of x1^2 - x2^2", "<-1>",
      [=] { return class_is(milnor_number(poly("x1^2 - x2^2", Q), {Q->zero(), Q->zero()}), "<-1>"); });
  add("Milnor number of x1^2 + x2^2 + x3^2", "<2>", [=] {
    return class_is(milnor_number(poly("x1^2 + x2^2 + x3^2", Q, {"x1", "x2", "x3"}), {Q->zero(), Q->zero(), Q->zero()}),
                    "<2>");
  });
  add("x1^2 - x2^2 at 0 is a node", "node", [=] {
    std::string k = point_kind_name(classify_point(poly("x1^2 - x2^2", Q), {Q->zero(), Q->zero()}).kind);
    return std::pair{k, k == "node"};
  });
  add("type of the split node x1^2 - x2^2", "<-1>",
      [=] { return class_is(node_type(poly("x1^2 - x2^2", Q), {Q->zero(), Q->zero()}), "<-1>"); });
  add("type of the non-split node x1^2 + x2^2", "<1>",
      [=] { return class_is(node_type(poly("x1^2 + x2^2", Q), {Q->zero(), Q->zero()}), "<1>"); });
  add("type of the quadric node x1^2 + 2*x2^2 + 3*x3^2", "<48>", [=] {
    return class_is(
        node_type(poly("x1^2 + 2*x2^2 + 3*x3^2", Q, {"x1", "x2", "x3"}), {Q->zero(), Q->zero(), Q->zero()}), "<48>");
  });
  add("cusp over F5 against 25 linear perturbations", "every generic sample equals <1> + <-1>", [=] {
    auto r = verify_linear_family(poly("x2^2 - x1^3", F5), 25, 3, 1);
    bool ok = r.generic > 0 && r.all_equal && equals(r.lhs, GwElement::hyperbolic(F5)) == Tri::True;
    std::string s = std::to_string(r.generic) + " generic, " + (r.all_equal ? "all equal " : "not all equal ") +
                    simplify(r.lhs).str();
    return std::pair{s, ok};
  });
  add("t^(1/2) in Q((t;2;16))", "t^(1/2)", [] {
    FieldElement a = parse_element("t^(1/2)", parse_field("Q((t;2;16))"));
    return std::pair{a.str(), a.str() == "t^(1/2)"};
  });
  for (int sign : {1, -1}) {
    std::string sg = sign > 0 ? "" : "-";
    add("Newton lift from x1 = " + sg + "t^(1/2), x2 = -t", "x1 = " + sg + "sqrt(t)/(1 - t), x2 = -t", [=] {
      const auto& cb = cusp_branches();
      const Branch& b = cb.branches[sign > 0 ? 0 : 1];
      FieldElement want = geometric_branch(cb.K, sign, b.precision);
      bool ok = cb.K->equal(b.coords[0], want) && b.coords[0].str() == want.str() &&
                cb.K->equal(b.coords[1], cb.K->neg(cb.K->t()));
      return std::pair{"x1 = " + b.coords[0].str() + ", x2 = " + b.coords[1].str(), ok};
    });
  }
  add("type of the branch x1 = sqrt(t)/(1 - t)", "<12*t^(1/2)*(1 - t)>", [] {
    const auto& cb = cusp_branches();
    GwElement ty = branch_type(cb.branches[0], cb.f, cb.g);
    GwElement want = GwElement::symbol(parse_element("12*t^(1/2)*(1 - t)", cb.K));
    return std::pair{ty.str(), equals(ty, want) == Tri::True};
  });
  add("bifurcation of the cusp along g", "True", [] {
    const auto& cb = cusp_branches();
    Field q = FieldNode::rationals();
    auto r = verify_bifurcation(cb.f, cb.g, cb.branches, {q->zero(), q->zero()});
    return std::pair{tri_word(r.result), r.result == Tri::True};
  });
  return ex;
}

}  // namespace

std::vector<CorpusRow> run_corpus() {
  std::vector<CorpusRow> rows;
  for (auto& [name, spec] : examples()) {
    CorpusRow row{name, spec.first, "", false};
    try {
      auto [actual, pass] = spec.second();
      row.actual = actual;
      row.pass = pass;
    } catch (const std::exception& e) {
      row.actual = std::string("error: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace a1
