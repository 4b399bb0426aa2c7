// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "a1/degree.hpp"
#include "a1/grammar.hpp"
#include "a1/milnor.hpp"
#include "a1/puiseux.hpp"

using namespace a1;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << "failed: " << what;
    }
  }
  void note(const std::string& s) { detail << (detail.tellp() > 0 ? "; " : "") << s; }
};

Field Q() { return FieldNode::rationals(); }
Field F(long p) { return FieldNode::prime(p); }
bool same(const GwElement& a, const GwElement& b) { return equals(a, b) == Tri::True; }
Polynomial poly(const std::string& s, const Field& k, std::vector<std::string> v = {"x1", "x2"}) {
  return parse_polynomial(s, k, v);
}

FieldElement unit(const Field& k, std::mt19937_64& rng) {
  if (k->is_finite()) return k->element_at(std::uniform_int_distribution<std::uint64_t>(1, k->order().get_ui() - 1)(rng));
  long n = 0;
  while (n == 0) n = std::uniform_int_distribution<long>(-40, 40)(rng);
  mpq_class v(n, std::uniform_int_distribution<long>(1, 9)(rng));
  v.canonicalize();
  return k->from_rational(v);
}

void c1(Outcome& o) {
  for (Field k : {Q(), F(5)}) {
    std::vector<std::string> z = {"z"};
    for (long a : {1L, 2L, 3L, -1L}) {
      FieldElement av = k->from_int(a);
      Polynomial f = Polynomial::variable(k, z, 0).scale(av);
      o.require(same(bezout_form_p1(f, poly("1", k, z)), GwElement::symbol(av)),
                "Bezout degree of " + std::to_string(a) + "z over " + k->descriptor());
      if (k->is_finite())
        for (const auto& y : k->enumerate())
          o.require(same(global_degree_finite_field({f}, {y}, 3).degree, GwElement::symbol(av)),
                    "fiber sum of " + std::to_string(a) + "z at " + y.str());
    }
    Polynomial sq = poly("z^2", k, z);
    o.require(same(bezout_form_p1(sq, poly("1", k, z)), GwElement::hyperbolic(k)), "Bezout degree of z^2");
    if (k->is_finite()) {
      int regular = 0;
      for (const auto& y : k->enumerate()) {
        if (y.is_zero()) continue;
        o.require(same(global_degree_finite_field({sq}, {y}, 3).degree, GwElement::hyperbolic(k)),
                  "fiber sum of z^2 at " + y.str());
        ++regular;
      }
      o.note("z^2 over F5 checked at " + std::to_string(regular) + " regular values");
    }
  }
}

void c2(Outcome& o) {
  Field q = Q();
  EklForm e = ekl_form({poly("z^2", q, {"z"})}, {q->zero()});
  Matrix P = {{q->one(), q->zero()}, {q->zero(), q->from_int(2)}};
  Matrix c = multiply(q, transpose(P), multiply(q, e.gram, P));
  Matrix want = {{q->zero(), q->from_int(2)}, {q->from_int(2), q->zero()}};
  o.require(c == want, "P^T G P = [[0, 2], [2, 0]]");
  o.note("Gram in {1, z} " + matrix_str(e.gram) + ", in {1, 2z} " + matrix_str(c));
  auto inv = invariants(e.cls);
  o.require(same(e.cls, GwElement::hyperbolic(q)), "class is hyperbolic");
  o.require(inv.rank == 2 && inv.signature && *inv.signature == 0, "rank 2, signature 0");
}

void c3(Outcome& o) {
  for (Field k : {Q(), F(5), F(7)}) {
    std::vector<FieldElement> x = {k->zero(), k->zero()};
    Polynomial f = poly("x2^2 - x1^3", k);
    o.require(same(milnor_number(f, x), GwElement::hyperbolic(k)), "mu over " + k->descriptor());
    LocalAlgebra A = local_quotient(gradient(f), x);
    bool cert = truncated_dimension(A.system, A.order) == A.dimension() &&
                truncated_dimension(A.system, A.order + 1) == A.dimension();
    o.require(A.dimension() == 2 && cert, "dimension 2 with certificate over " + k->descriptor());
    if (k == Q()) o.note("certificate order " + std::to_string(A.order));
  }
}

void c4(Outcome& o) {
  for (auto [name, want_trivial] : {std::pair{"F25", false}, std::pair{"F49", true}}) {
    Field L = parse_field(name);
    GwElement t = transfer(GwElement::symbol(L->from_int(-1)), L->base());
    FieldElement d = invariants(t).discriminant->rep;
    bool trivial = L->base()->is_square(d) == Tri::True;
    o.note(std::string(name) + ": " + simplify(t).str() + ", discriminant " + d.str() +
           (trivial ? " (trivial)" : " (nontrivial)"));
    o.require(trivial == want_trivial, std::string(name) + " discriminant " + (want_trivial ? "trivial" : "nontrivial"));
  }
}

void c5(Outcome& o) {
  Field q = Q();
  Polynomial f = poly("x2^2 - x1^3", q), g = poly("3*x1 + 2*x2 + 2*x1^3 - t*x1^3", q, {"x1", "x2", "t"});
  Field K = parse_field("Q((t;2;16))");
  std::vector<Branch> bs;
  for (const char* s : {"x1: t^(1/2)*1; x2: -t", "x1: t^(1/2)*-1; x2: -t"})
    bs.push_back(newton_lift(f, g, parse_seed(s, K)));
  GwElement stated_type = GwElement::symbol(parse_element("12*t^(1/2)*(1 - t)", K));
  std::string carriers;
  for (int i = 0; i < 2; ++i) {
    int sign = i == 0 ? 1 : -1;
    const Branch& b = bs[static_cast<std::size_t>(i)];
    std::vector<std::int64_t> e;
    std::vector<FieldElement> c;
    for (std::int64_t k = 1; k < 16; k += 2) {
      e.push_back(k);
      c.push_back(q->from_int(sign));
    }
    FieldElement want = K->from_series(e, c, 16);
    o.require(b.precision == 16 && b.coords[0].str() == want.str() && K->equal(b.coords[0], want),
              "x1 = " + std::string(sign > 0 ? "" : "-") + "sqrt(t)/(1 - t) term by term");
    o.require(K->equal(b.coords[1], K->neg(K->t())), "x2 = -t");
    GwElement ty = branch_type(b, f, g);
    if (same(ty, stated_type)) carriers += std::string(carriers.empty() ? "" : ", ") + (sign > 0 ? "+" : "-") + " branch";
  }
  o.require(!carriers.empty(), "<12*t^(1/2)*(1 - t)> is a branch type");
  o.note("<12*t^(1/2)*(1 - t)> is the type of the " + (carriers.empty() ? std::string("no") : carriers));
  BifurcationReport r = verify_bifurcation(f, g, bs, {q->zero(), q->zero()});
  o.require(r.rhs_residues.second.empty(), "second residue vanishes");
  o.require(r.result == Tri::True && same(r.rhs_residues.first, GwElement::hyperbolic(q)), "transfer sum equals mu = h");
}

void c6(Outcome& o) {
  Field L = parse_field("Q(z)(y):[y^2 - z^3 + z]");
  Field b = L->base();
  FieldElement y = L->generator(), a = L->from_int(2) * y;
  Matrix g = transfer_gram(a, {L->one(), y.inverse()});
  o.require(g == Matrix{{b->zero(), b->from_int(4)}, {b->from_int(4), b->zero()}}, "Gram [[0, 4], [4, 0]]");
  o.note("Gram in {1, 1/y} " + matrix_str(g));
  o.require(same(diagonalize(b, g), GwElement::hyperbolic(b)), "Gram class is h");
  o.require(same(transfer(GwElement::symbol(a), b), GwElement::hyperbolic(b)), "transfer class is h");
}

void c7(Outcome& o) {
  std::mt19937_64 rng(7);
  long checks = 0;
  for (Field k : {Q(), F(5), F(7), parse_field("F25")})
    for (int i = 0; i < 50; ++i) {
      FieldElement a = unit(k, rng), b = unit(k, rng);
      o.require(same(GwElement::symbol(a * b * b), GwElement::symbol(a)), "<ab^2> = <a>");
      o.require(same(GwElement::symbol(a) * GwElement::symbol(b), GwElement::symbol(a * b)), "<a><b> = <ab>");
      if (!(a + b).is_zero())
        o.require(same(GwElement::symbol(a) + GwElement::symbol(b),
                       GwElement::symbol(a + b) + GwElement::symbol(a * b * (a + b))),
                  "<a> + <b> = <a + b> + <ab(a + b)>");
      o.require(same(GwElement::symbol(a) + GwElement::symbol(-a), GwElement::hyperbolic(k)), "<a> + <-a> = h");
      checks += 4;
    }
  Field K = parse_field("Q((t;1;8))");
  for (int i = 0; i < 20; ++i) {
    GwElement c(K);
    for (int j = 0; j < 3; ++j)
      c.add_symbol(K->from_coeffs({unit(Q(), rng)}) * K->t().pow(std::uniform_int_distribution<int>(0, 5)(rng)));
    o.require(same(springer_reconstruct(springer_residues(c), K), c), "Springer round trip of " + c.str());
    ++checks;
  }
  o.note(std::to_string(checks) + " identities");
}

void c8(Outcome& o) {
  std::mt19937_64 rng(8);
  Field k = F(5);
  std::vector<std::string> v = {"x1", "x2"};
  std::vector<FieldElement> zero = {k->zero(), k->zero()};
  int systems = 0;
  while (systems < 100) {
    std::vector<Polynomial> fs;
    for (int i = 0; i < 2; ++i) {
      Polynomial p(k, v);
      for (int j = 0; j < 4; ++j) {
        Monomial m = {std::uniform_int_distribution<int>(0, 2)(rng), std::uniform_int_distribution<int>(0, 2)(rng)};
        if (m[0] + m[1] > 0) p.add_term(m, unit(k, rng));
      }
      fs.push_back(p);
    }
    if (jacobian_determinant(fs).evaluate(zero).is_zero()) continue;
    ++systems;
    o.require(same(ekl_form(fs, zero).cls, local_degree_simple(fs, zero)), "EKL = <Jf>");
  }
  int maps = 0, values = 0;
  std::vector<std::string> z = {"z"};
  while (maps < 20) {
    auto upoly = [&](int deg, bool monic) {
      Polynomial p(k, z);
      for (int i = 0; i < deg; ++i) p.add_term({i}, k->element_at(std::uniform_int_distribution<int>(0, 4)(rng)));
      p.add_term({deg}, monic ? k->one() : unit(k, rng));
      return p;
    };
    Polynomial a = upoly(2 + maps % 2, false), b = upoly(maps % 2, true);
    GwElement bz;
    try {
      bz = bezout_form_p1(a, b);
    } catch (const Error&) {
      continue;
    }
    ++maps;
    std::optional<GwElement> first;
    for (const auto& y : k->enumerate()) {
      try {
        GwElement d = global_degree_p1(a, b, y, 3).degree;
        o.require(same(d, bz), "Bezout = fiber sum");
        if (first) o.require(same(d, *first), "fiber sums agree across values");
        first = d;
        ++values;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IrregularValue) o.require(false, e.what());
      }
    }
    o.require(first.has_value(), "some regular value");
  }
  o.note("100 systems, 20 maps, " + std::to_string(values) + " regular values");
}

void c9(Outcome& o) {
  Field q = Q();
  std::vector<std::pair<std::string, std::vector<Polynomial>>> cases;
  for (int k = 1; k <= 5; ++k) cases.push_back({"z^" + std::to_string(k), {poly("z^" + std::to_string(k), q, {"z"})}});
  cases.push_back({"cusp", gradient(poly("x2^2 - x1^3", q))});
  cases.push_back({"tacnode", gradient(poly("x2^2 - x1^4", q))});
  cases.push_back({"(x1^2, x2^3)", parse_system("x1^2, x2^3", q)});
  std::string dims;
  for (const auto& [name, fs] : cases) {
    std::vector<FieldElement> x(fs.front().nvars(), q->zero());
    EklForm e = ekl_form(fs, x);
    o.require(e.cls.rank() == static_cast<long>(e.algebra.dimension()), "rank = dim for " + name);
    dims += (dims.empty() ? "" : " ") + std::to_string(e.algebra.dimension());
    if (name == "tacnode") o.require(e.algebra.dimension() == 3, "tacnode dimension 3");
  }
  o.note("dimensions " + dims);
}

void c10(Outcome& o) {
  for (long p : {5L, 7L})
    for (const char* s : {"x2^2 - x1^3", "x2^2 - x1^4"}) {
      Field k = F(p);
      FamilyReport r = verify_linear_family(poly(s, k), 25, 3, 1);
      std::string tag = std::string(s) + " over F" + std::to_string(p);
      o.require(r.generic > 0 && r.all_equal, tag + ": every generic sample balances");
      o.require(r.obstructions_hold, tag + ": rational-node discriminant obstruction");
      if (std::string(s) == "x2^2 - x1^3") {
        for (const auto& [bucket, n] : r.buckets) {
          if (p == 5) o.require(bucket != "1:non-split + 1:split", tag + ": one split and one non-split");
          if (p == 7)
            o.require(bucket != "1:split + 1:split" && bucket != "1:non-split + 1:non-split", tag + ": equal pair");
        }
      }
      o.note(tag + " " + std::to_string(r.generic) + "/" + std::to_string(r.samples.size()) + " generic");
    }
}

void c11(Outcome& o) {
  Field q = Q();
  auto inv = invariants(parse_gw("15<1> + 12<-1>", q));
  o.require(inv.rank == 27 && inv.signature && *inv.signature == 3, "15<1> + 12<-1> has (27, 3)");
  // Trace form of the split etale algebra k^8 is 8<1>.
  GwElement trace(q);
  for (int i = 0; i < 8; ++i) trace = trace + transfer(GwElement::symbol(q->one()), q);
  GwElement n3 = GwElement::hyperbolic(q, 2) + trace;
  o.require(n3.rank() == 12, "2h + Tr<1> has rank 12");
  o.note("N3 class " + simplify(n3).str());
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_ms;
    std::function<void(Outcome&)> run;
  };
  std::vector<Criterion> all = {
      {1, "P1 exercises: <a> and h by Bezout and fiber sums", 1000, c1},
      {2, "EKL of z^2 congruent to [[0, 2], [2, 0]], hyperbolic", 1000, c2},
      {3, "cusp mu = h over Q, F5, F7 with a certified dimension 2", 1000, c3},
      {4, "transfer discriminants from F25 and F49", 1000, c4},
      {5, "cusp bifurcation: branches, type and transferred sum", 5000, c5},
      {6, "elliptic trace form [[0, 4], [4, 0]] = h", 1000, c6},
      {7, "GW relations and Springer round trips", 10000, c7},
      {8, "EKL against Jacobian, Bezout against fiber sums over F5", 30000, c8},
      {9, "rank of EKL equals local dimension", 5000, c9},
      {10, "linear perturbations of cusp and tacnode over F5, F7", 60000, c10},
      {11, "27 lines and N3 as GW identities", 1000, c11},
  };
  int failures = 0;
  for (const auto& c : all) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (ms > c.budget_ms) o.require(false, "time budget");
    failures += !o.pass;
    std::ostringstream ts;
    ts.precision(1);
    ts << std::fixed << ms;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << ts.str() << " ms) " << c.title
              << " | " << o.detail.str() << "\n";
  }
  return failures;
}
