#include "a1/cli.hpp"

#include <numeric>
#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "a1/corpus.hpp"
#include "a1/degree.hpp"
#include "a1/grammar.hpp"
#include "a1/milnor.hpp"
#include "a1/puiseux.hpp"

namespace a1 {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string field = "Q";
  std::string f, g, point, system, value, num, den = "1", to, ext, twist;
  std::vector<std::string> seeds, classes;
  std::int64_t precision = 16;
  int max_ext = 3;
  int ramification = 0;
  std::size_t samples = 25;
  std::uint64_t rng_seed = 0;
  int max_order = 32;
  bool json = false;
  bool verbose = false;
};

/// Text lines and a JSON object built side by side; one of them is printed.
struct Report {
  std::vector<std::string> lines;
  Json j;
  void line(const std::string& s) { lines.push_back(s); }
};

std::string tri_word(Tri t) { return t == Tri::True ? "True" : t == Tri::False ? "False" : "Unknown"; }

int tri_exit(Tri t) { return t == Tri::True ? 0 : t == Tri::False ? 2 : 3; }

Json gw_json(const GwElement& e) {
  GwElement s = simplify(e);
  Json j;
  j["class"] = s.str();
  j["rank"] = e.rank();
  auto inv = invariants(e);
  if (inv.discriminant) j["discriminant"] = inv.discriminant->rep.str();
  if (inv.signature) j["signature"] = *inv.signature;
  j["terms"] = Json::array();
  for (const auto& t : s.terms()) j["terms"].push_back({{"rep", t.rep.str()}, {"mult", t.mult}});
  return j;
}

Json matrix_json(const Matrix& m) {
  Json j = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& a : row) r.push_back(a.str());
    j.push_back(r);
  }
  return j;
}

std::string point_str(const std::vector<FieldElement>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + x[i].str();
  return s + ")";
}

Json point_json(const std::vector<FieldElement>& x) {
  Json j = Json::array();
  for (const auto& a : x) j.push_back(a.str());
  return j;
}

std::string basis_str(const Field& k, const std::vector<std::string>& vars, const std::vector<Monomial>& basis) {
  std::string s = "{";
  for (std::size_t i = 0; i < basis.size(); ++i)
    s += (i ? ", " : "") + Polynomial::monomial(k, vars, basis[i], k->one()).str();
  return s + "}";
}

Json basis_json(const Field& k, const std::vector<std::string>& vars, const std::vector<Monomial>& basis) {
  Json j = Json::array();
  for (const auto& m : basis) j.push_back(Polynomial::monomial(k, vars, m, k->one()).str());
  return j;
}

void require(const std::string& value, const char* option) {
  if (value.empty()) throw Error(ErrorCode::Usage, std::string("missing ") + option);
}

Polynomial single(const std::string& text, const Field& k) {
  return parse_polynomial(text, k, infer_variables({text}, k));
}

std::vector<FieldElement> point_for(const Options& o, const Field& k, std::size_t n) {
  if (o.point.empty()) return std::vector<FieldElement>(n, k->zero());
  return parse_point(o.point, k);
}

void add_gw(Report& r, const GwElement& e, const std::string& key = "result") {
  r.line(simplify(e).str());
  r.j[key] = gw_json(e);
}

// ---------------------------------------------------------------- commands

int cmd_gw_simplify(const Options& o, Report& r) {
  if (o.classes.size() != 1) throw Error(ErrorCode::Usage, "gw-simplify takes one class");
  Field k = parse_field(o.field);
  GwElement e = parse_gw(o.classes[0], k);
  add_gw(r, e);
  if (o.verbose) {
    auto inv = invariants(e);
    r.line("rank: " + std::to_string(inv.rank));
    if (inv.discriminant) r.line("discriminant: <" + inv.discriminant->rep.str() + ">");
    if (inv.signature) r.line("signature: " + std::to_string(*inv.signature));
  }
  return 0;
}

int cmd_gw_equal(const Options& o, Report& r) {
  if (o.classes.size() != 2) throw Error(ErrorCode::Usage, "gw-equal takes two classes");
  Field k = parse_field(o.field);
  GwElement a = parse_gw(o.classes[0], k), b = parse_gw(o.classes[1], k);
  Tri t = equals(a, b);
  r.line(tri_word(t));
  r.j["result"] = tri_word(t);
  r.j["left"] = gw_json(a);
  r.j["right"] = gw_json(b);
  if (o.verbose) r.line(simplify(a).str() + " vs " + simplify(b).str());
  return tri_exit(t);
}

int cmd_transfer(const Options& o, Report& r) {
  if (o.classes.size() != 1) throw Error(ErrorCode::Usage, "transfer takes one class");
  Field L = parse_field(o.field);
  Field k = o.to.empty() ? L->trace_base() : parse_field(o.to);
  if (!k) throw Error(ErrorCode::NotAnExtension, L->descriptor() + " has no subfield to transfer to");
  GwElement e = parse_gw(o.classes[0], L);
  GwElement t = transfer(e, k);
  add_gw(r, t);
  r.j["from"] = L->descriptor();
  r.j["to"] = k->descriptor();
  r.j["degree"] = extension_degree(L, k);
  if (o.verbose && same_field(L->trace_base(), k)) {
    r.j["grams"] = Json::array();
    for (const auto& term : e.terms()) {
      Matrix g = transfer_gram(term.rep);
      r.line("gram <" + term.rep.str() + ">: " + matrix_str(g));
      r.j["grams"].push_back({{"rep", term.rep.str()}, {"gram", matrix_json(g)}});
    }
  }
  return 0;
}

int cmd_degree_local(const Options& o, Report& r) {
  require(o.system, "--system");
  require(o.point, "--point");
  Field k = parse_field(o.field);
  auto fs = parse_system(o.system, k);
  auto x = parse_point(o.point, k);
  GwElement d = local_degree(fs, x, o.max_order);
  add_gw(r, d);
  FieldElement jac = jacobian_determinant(fs).evaluate(x);
  bool simple = !jac.is_zero();
  r.j["path"] = simple ? "simple" : "ekl";
  if (o.verbose) r.line(simple ? "path: simple zero, Jf = " + jac.str() : "path: EKL");
  if (!simple) {
    EklForm e = ekl_form(fs, x, {}, o.max_order);
    const auto& A = e.algebra;
    r.j["dimension"] = A.dimension();
    r.j["certificate_order"] = A.order;
    r.j["basis"] = basis_json(A.field, A.vars, A.basis);
    r.j["gram"] = matrix_json(e.gram);
    if (o.verbose) {
      r.line("dimension: " + std::to_string(A.dimension()) + ", certificate order " + std::to_string(A.order));
      r.line("basis: " + basis_str(A.field, A.vars, A.basis));
      r.line("gram: " + matrix_str(e.gram));
    }
  }
  return 0;
}

int cmd_degree_p1(const Options& o, Report& r) {
  require(o.num, "--num");
  Field k = parse_field(o.field);
  auto vars = infer_variables({o.num, o.den}, k);
  if (vars.empty()) vars = {"z"};
  if (vars.size() != 1) throw Error(ErrorCode::VariableMismatch, "a map of P1 has one variable");
  Polynomial a = parse_polynomial(o.num, k, vars), b = parse_polynomial(o.den, k, vars);
  GwElement d = bezout_form_p1(a, b);
  add_gw(r, d);
  Matrix m = bezout_matrix(a, b);
  r.j["bezout"] = matrix_json(m);
  if (o.verbose) r.line("bezout: " + matrix_str(m));
  if (o.value.empty()) return 0;
  GlobalDegree gd = global_degree_p1(a, b, parse_element(o.value, k), o.max_ext);
  Tri t = equals(d, gd.degree);
  r.line("fiber at " + o.value + ": " + simplify(gd.degree).str() + " (" + std::to_string(gd.points.size()) +
         " points), equal: " + tri_word(t));
  r.j["fiber"] = {{"value", o.value}, {"class", gw_json(gd.degree)}, {"points", gd.points.size()},
                  {"equal", tri_word(t)}};
  return tri_exit(t);
}

int cmd_degree_global(const Options& o, Report& r) {
  require(o.system, "--system");
  Field k = parse_field(o.field);
  if (!k->is_finite()) throw Error(ErrorCode::InfiniteField, k->descriptor());
  auto fs = parse_system(o.system, k);
  std::vector<std::vector<FieldElement>> candidates;
  if (!o.value.empty()) {
    candidates.push_back(parse_point(o.value, k));
  } else {
    std::uint64_t q = k->order().get_ui(), total = 1;
    for (std::size_t i = 0; i < fs.size() && total < 4096; ++i) total *= q;
    for (std::uint64_t code = 0; code < std::min<std::uint64_t>(total, 4096); ++code) {
      std::vector<FieldElement> y;
      for (std::size_t i = 0, c = code; i < fs.size(); ++i, c /= q) y.push_back(k->element_at(c % q));
      candidates.push_back(std::move(y));
    }
  }
  Json rejected = Json::array();
  for (const auto& y : candidates) {
    try {
      GlobalDegree gd = global_degree_finite_field(fs, y, o.max_ext);
      for (const auto& rj : rejected) r.line("rejected " + rj["value"].get<std::string>() + ": " + rj["reason"].get<std::string>());
      add_gw(r, gd.degree);
      r.line("value: " + point_str(y) + ", " + std::to_string(gd.geometric_count) + " geometric preimages");
      r.j["value"] = point_json(y);
      r.j["rejected"] = rejected;
      r.j["points"] = Json::array();
      for (const auto& pt : gd.points) {
        r.j["points"].push_back({{"coords", point_json(pt.coords)}, {"degree", pt.degree},
                                 {"jacobian", pt.jacobian.str()}, {"contribution", simplify(pt.contribution).str()}});
        if (o.verbose)
          r.line("  " + point_str(pt.coords) + " degree " + std::to_string(pt.degree) + ", Jf = " + pt.jacobian.str() +
                 ", contributes " + simplify(pt.contribution).str());
      }
      return 0;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IrregularValue && e.code() != ErrorCode::FiberEscapesBound) throw;
      if (!o.value.empty()) throw;
      rejected.push_back({{"value", point_str(y)}, {"reason", e.what()}});
    }
  }
  throw Error(ErrorCode::IrregularValue, "no regular value among " + std::to_string(candidates.size()) + " candidates");
}

int cmd_local_algebra(const Options& o, Report& r) {
  require(o.system, "--system");
  require(o.point, "--point");
  Field k = parse_field(o.field);
  auto A = local_quotient(parse_system(o.system, k), parse_point(o.point, k), o.max_order);
  r.line("dimension: " + std::to_string(A.dimension()));
  r.line("basis: " + basis_str(A.field, A.vars, A.basis));
  r.line("certificate order: " + std::to_string(A.order));
  r.j["dimension"] = A.dimension();
  r.j["basis"] = basis_json(A.field, A.vars, A.basis);
  r.j["certificate_order"] = A.order;
  if (o.verbose) {
    Row j = jacobian_image(A);
    r.line("Jf: " + point_str(j));
    r.j["jacobian"] = point_json(j);
  }
  return 0;
}

int cmd_milnor(const Options& o, Report& r) {
  require(o.f, "--f");
  Field k = parse_field(o.field);
  Polynomial f = single(o.f, k);
  auto x = point_for(o, k, space_variables(f.vars()).size());
  GwElement mu = milnor_number(f, x, o.max_order);
  add_gw(r, mu);
  if (o.verbose) r.line("rank: " + std::to_string(mu.rank()));
  return 0;
}

int cmd_node_type(const Options& o, Report& r) {
  require(o.f, "--f");
  Field k = parse_field(o.field);
  Polynomial f = single(o.f, k);
  auto x = point_for(o, k, f.nvars());
  SingularPoint sp = classify_point(f, x);
  r.j["kind"] = point_kind_name(sp.kind);
  GwElement t = node_type(f, x);
  add_gw(r, t);
  r.j["hessian"] = sp.hessian->str();
  if (o.verbose) r.line("hessian: " + sp.hessian->str());
  return 0;
}

int cmd_verify_family(const Options& o, Report& r) {
  require(o.f, "--f");
  Field k = parse_field(o.field);
  Polynomial f = single(o.f, k);
  FamilyReport rep = verify_linear_family(f, o.samples, o.max_ext, o.rng_seed);
  r.line("lhs: " + simplify(rep.lhs).str() + " (rank " + std::to_string(rep.lhs_rank) + ", " +
         std::to_string(rep.singular_points.size()) + " singular points)");
  r.j["lhs"] = gw_json(rep.lhs);
  r.line("sample | a | status | nodes | residue fields | rhs | equal");
  r.j["samples"] = Json::array();
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    const auto& s = rep.samples[i];
    std::string degs;
    for (const auto& nd : s.nodes) degs += (degs.empty() ? "" : ",") + std::string("F") + k->order().get_str() +
                                          (nd.degree > 1 ? "^" + std::to_string(nd.degree) : "");
    bool generic = s.status == "generic";
    std::string rhs = generic ? simplify(s.rhs).str() : "-";
    std::string eq = generic ? tri_word(s.equal) : "-";
    r.line(std::to_string(i + 1) + " | " + point_str(s.a) + " | " + s.status + " | " + std::to_string(s.nodes.size()) +
           " | " + (degs.empty() ? "-" : degs) + " | " + rhs + " | " + eq);
    Json sj = {{"a", point_json(s.a)}, {"status", s.status}, {"bucket", s.bucket}, {"nodes", Json::array()}};
    for (const auto& nd : s.nodes)
      sj["nodes"].push_back({{"coords", point_json(nd.coords)}, {"degree", nd.degree}, {"hessian", nd.hessian.str()}});
    if (generic) {
      sj["rhs"] = gw_json(s.rhs);
      sj["equal"] = eq;
    }
    if (s.rational_obstruction) sj["rational_obstruction"] = *s.rational_obstruction;
    r.j["samples"].push_back(sj);
  }
  r.line("generic: " + std::to_string(rep.generic) + "/" + std::to_string(rep.samples.size()) +
         ", all equal: " + (rep.all_equal ? "yes" : "no") + ", obstructions: " + (rep.obstructions_hold ? "hold" : "fail"));
  r.j["generic"] = rep.generic;
  r.j["all_equal"] = rep.all_equal;
  r.j["obstructions_hold"] = rep.obstructions_hold;
  r.j["buckets"] = Json::object();
  r.line("buckets:");
  for (const auto& [b, c] : rep.buckets) {
    r.line("  " + b + ": " + std::to_string(c));
    r.j["buckets"][b] = c;
  }
  return rep.all_equal && rep.obstructions_hold ? 0 : 2;
}

/// lcm of q over every t^(p/q) in the seeds.
int inferred_ramification(const std::vector<std::string>& seeds) {
  static const std::regex frac(R"(t\s*\^\s*\(\s*-?\s*\d+\s*/\s*(\d+)\s*\))");
  int m = 1;
  for (const auto& s : seeds)
    for (auto it = std::sregex_iterator(s.begin(), s.end(), frac); it != std::sregex_iterator(); ++it)
      m = std::lcm(m, std::stoi((*it)[1].str()));
  return m;
}

Field coefficient_field(const Options& o, const Field& k) {
  if (o.ext.empty()) return k;
  auto names = infer_variables({o.ext}, k);
  if (names.size() != 1) throw Error(ErrorCode::Usage, "--ext needs a polynomial in one new symbol");
  Polynomial p = parse_polynomial(o.ext, k, names);
  int d = p.total_degree();
  std::vector<FieldElement> c(static_cast<std::size_t>(d + 1), k->zero());
  for (const auto& [m, a] : p.terms()) c[static_cast<std::size_t>(m[0])] = a;
  FieldElement lead = k->inv(c.back());
  for (auto& a : c) a = k->mul(a, lead);
  return FieldNode::extension(k, names[0], c);
}

int cmd_bifurcate(const Options& o, Report& r) {
  require(o.f, "--f");
  require(o.g, "--g");
  if (o.seeds.empty()) throw Error(ErrorCode::Usage, "at least one --seed is required");
  Field k = parse_field(o.field);
  auto vars = infer_variables({o.f, o.g}, k);
  Polynomial f = parse_polynomial(o.f, k, vars), g = parse_polynomial(o.g, k, vars);
  Field kp = coefficient_field(o, k);
  int m = o.ramification > 0 ? o.ramification : inferred_ramification(o.seeds);
  std::optional<FieldElement> lambda;
  if (!o.twist.empty()) lambda = parse_element(o.twist, kp);
  Field K = FieldNode::puiseux(kp, m, o.precision, lambda);
  r.j["series_field"] = K->descriptor();
  if (o.verbose) r.line("series field: " + K->descriptor());
  std::vector<Branch> branches;
  for (const auto& s : o.seeds) branches.push_back(newton_lift(f, g, parse_seed(s, K)));
  auto x = point_for(o, k, space_variables(vars).size());
  BifurcationReport rep = verify_bifurcation(f, g, branches, x, o.max_order);
  r.j["branches"] = Json::array();
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const Branch& b = branches[i];
    const BranchSummary& s = rep.branches[i];
    std::string coords;
    for (std::size_t v = 0; v < b.vars.size(); ++v) coords += (v ? ", " : "") + b.vars[v] + " = " + b.coords[v].str();
    r.line("branch " + std::to_string(i + 1) + ": " + coords);
    std::string note = s.duplicate ? ", conjugate of branch " + std::to_string(s.conjugate_of + 1) : "";
    r.line("  type " + simplify(s.type).str() + ", degree " + std::to_string(s.degree) + note);
    Json bj = {{"coords", Json::object()}, {"type", gw_json(s.type)}, {"degree", s.degree}, {"duplicate", s.duplicate}};
    for (std::size_t v = 0; v < b.vars.size(); ++v) bj["coords"][b.vars[v]] = b.coords[v].str();
    if (s.duplicate) bj["conjugate_of"] = s.conjugate_of + 1;
    bj["precision"] = b.precision;
    bj["residual_valuations"] = b.residual_valuations;
    bj["hessian_valuation"] = b.hessian_valuation;
    if (o.verbose) {
      std::string vals;
      for (auto v : b.residual_valuations) vals += (vals.empty() ? "" : " ") + std::to_string(v);
      r.line("  residual valuations " + vals + ", Hessian valuation " + std::to_string(b.hessian_valuation) +
             ", certified below s^" + std::to_string(b.precision));
    }
    r.j["branches"].push_back(bj);
  }
  r.line("mu: " + simplify(rep.lhs).str());
  r.line("transfer residues: (" + simplify(rep.rhs_residues.first).str() + ", " +
         simplify(rep.rhs_residues.second).str() + ")");
  r.line("result: " + tri_word(rep.result) + (rep.diagnosis.empty() ? "" : " (" + rep.diagnosis + ")"));
  r.j["mu"] = gw_json(rep.lhs);
  r.j["residues"] = {{"first", gw_json(rep.rhs_residues.first)}, {"second", gw_json(rep.rhs_residues.second)}};
  r.j["rank_sum"] = rep.rank_sum;
  r.j["result"] = tri_word(rep.result);
  if (!rep.diagnosis.empty()) r.j["diagnosis"] = rep.diagnosis;
  return tri_exit(rep.result);
}

int cmd_corpus(const Options&, Report& r) {
  auto rows = run_corpus();
  std::size_t failed = 0;
  r.j["rows"] = Json::array();
  for (const auto& row : rows) {
    failed += !row.pass;
    r.line(std::string(row.pass ? "PASS" : "FAIL") + "  " + row.name);
    if (!row.pass) {
      r.line("      expected: " + row.expected);
      r.line("      actual:   " + row.actual);
    }
    r.j["rows"].push_back({{"name", row.name}, {"expected", row.expected}, {"actual", row.actual}, {"pass", row.pass}});
  }
  r.line(std::to_string(rows.size() - failed) + "/" + std::to_string(rows.size()) + " passed");
  r.j["passed"] = rows.size() - failed;
  r.j["failed"] = failed;
  return failed ? 2 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"A1-degrees, Milnor numbers and their arithmetic refinements", "a1"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Print a JSON report");
  app.add_flag("--verbose,-v", o.verbose, "Show intermediate data");

  using Handler = int (*)(const Options&, Report&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto sub = [&](const char* name, const char* desc, Handler h) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--field", o.field, "Field descriptor")->capture_default_str();
    commands.push_back({s, h});
    return s;
  };

  auto* simp = sub("gw-simplify", "Canonical form of a GW class", cmd_gw_simplify);
  simp->add_option("class", o.classes)->required();
  auto* eq = sub("gw-equal", "Decide equality of two GW classes", cmd_gw_equal);
  eq->add_option("classes", o.classes)->required()->expected(2);
  auto* tr = sub("transfer", "Transfer a class one step down, or to --to", cmd_transfer);
  tr->add_option("class", o.classes)->required();
  tr->add_option("--to", o.to, "Target field descriptor");
  auto* dl = sub("degree-local", "Local A1-degree of a system at a zero", cmd_degree_local);
  dl->add_option("--system", o.system, "Equations separated by ',' or ';'");
  dl->add_option("--point", o.point, "Coordinates separated by ','");
  dl->add_option("--max-order", o.max_order);
  auto* dp = sub("degree-p1", "A1-degree of z -> A/B via the Bezout form", cmd_degree_p1);
  dp->add_option("--num", o.num, "A");
  dp->add_option("--den", o.den, "B")->capture_default_str();
  dp->add_option("--value", o.value, "Also sum the fiber over this value");
  dp->add_option("--max-ext", o.max_ext)->capture_default_str();
  auto* dg = sub("degree-global", "Global degree over a finite field by fiber sums", cmd_degree_global);
  dg->add_option("--system", o.system);
  dg->add_option("--value", o.value, "Regular value; scanned when omitted");
  dg->add_option("--max-ext", o.max_ext)->capture_default_str();
  auto* la = sub("local-algebra", "Local algebra with its certificate order", cmd_local_algebra);
  la->add_option("--system", o.system);
  la->add_option("--point", o.point);
  la->add_option("--max-order", o.max_order);
  auto* mi = sub("milnor", "A1-Milnor number of f at a point", cmd_milnor);
  mi->add_option("--f", o.f);
  mi->add_option("--point", o.point, "Defaults to the origin");
  mi->add_option("--max-order", o.max_order);
  auto* nt = sub("node-type", "Type of a node", cmd_node_type);
  nt->add_option("--f", o.f);
  nt->add_option("--point", o.point, "Defaults to the origin");
  auto* vc = sub("verify-cor45", "Split a singularity over a finite field by linear perturbations", cmd_verify_family);
  vc->add_option("--f", o.f);
  vc->add_option("--samples", o.samples)->capture_default_str();
  vc->add_option("--max-ext", o.max_ext)->capture_default_str();
  vc->add_option("--rng-seed", o.rng_seed)->capture_default_str();
  auto* bf = sub("bifurcate", "Lift branches of f + t g and compare with the Milnor number", cmd_bifurcate);
  bf->add_option("--f", o.f);
  bf->add_option("--g", o.g);
  bf->add_option("--seed", o.seeds, "`var: expr; var: expr`, repeatable");
  bf->add_option("--precision", o.precision, "Series cap in powers of t^(1/m)")->capture_default_str();
  bf->add_option("--ext", o.ext, "Minimal polynomial of a coefficient extension");
  bf->add_option("--ramification", o.ramification, "m; inferred from t^(p/q) in the seeds by default");
  bf->add_option("--twist", o.twist, "lambda in s^m = lambda t");
  bf->add_option("--point", o.point, "Defaults to the origin");
  bf->add_option("--max-order", o.max_order);
  sub("corpus", "Run the worked-example corpus", cmd_corpus);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Report r;
  r.j["schema"] = 1;
  r.j["command"] = chosen->get_name();
  int code = 1;
  try {
    for (const auto& [s, h] : commands)
      if (s == chosen) code = h(o, r);
  } catch (const Error& e) {
    Json ej = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    if (auto* se = dynamic_cast<const SyntaxError*>(&e)) ej["position"] = se->position();
    if (o.json) {
      Json j = {{"schema", 1}, {"command", chosen->get_name()}, {"error", ej}};
      out << j.dump(2) << "\n";
    }
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (o.json) {
    r.j["exit"] = code;
    out << r.j.dump(2) << "\n";
  } else {
    for (const auto& l : r.lines) out << l << "\n";
  }
  return code;
}

}  // namespace a1
