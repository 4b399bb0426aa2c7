#include "a1/milnor.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace a1 {

namespace {

/// f over its space variables; a deformation variable t may only appear if unused.
Polynomial spatial(const Polynomial& f) {
  auto idx = space_variables(f.vars());
  if (idx.size() == f.nvars()) return f;
  std::vector<std::string> vars;
  for (auto i : idx) vars.push_back(f.vars()[i]);
  for (const auto& [m, c] : f.terms())
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0 && std::find(idx.begin(), idx.end(), i) == idx.end())
        throw Error(ErrorCode::VariableMismatch, "f depends on the deformation variable t");
  return f.with_vars(vars);
}

Field field_of_point(const Polynomial& f, const std::vector<FieldElement>& x) {
  Field k = f.field();
  for (const auto& a : x) {
    if (k->contains(a.field())) continue;
    if (!a.field()->contains(k)) throw Error(ErrorCode::FieldMismatch, "point is not over " + f.field()->descriptor());
    k = a.field();
  }
  return k;
}

}  // namespace

GwElement milnor_number(const Polynomial& f_in, const std::vector<FieldElement>& x, int max_order) {
  Polynomial f = spatial(f_in);
  if (x.size() != f.nvars())
    throw Error(ErrorCode::ArityMismatch,
                "point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(f.nvars()));
  auto grad = gradient(f);
  Field L = field_of_point(f, x);
  for (const auto& g : grad)
    if (!g.change_field(L).evaluate(x).is_zero()) throw Error(ErrorCode::SmoothPoint, "grad f does not vanish");
  return local_degree(grad, x, max_order);
}

const char* point_kind_name(PointKind k) {
  switch (k) {
    case PointKind::Smooth: return "smooth";
    case PointKind::Node: return "node";
    default: return "higher";
  }
}

SingularPoint classify_point(const Polynomial& f_in, const std::vector<FieldElement>& x) {
  Polynomial f = spatial(f_in);
  if (x.size() != f.nvars()) throw Error(ErrorCode::ArityMismatch, "point arity");
  Field L = field_of_point(f, x);
  Polynomial fl = f.change_field(L);
  SingularPoint sp;
  sp.value = fl.evaluate(x);
  bool critical = true;
  for (const auto& g : gradient(fl))
    if (!g.evaluate(x).is_zero()) critical = false;
  if (!critical || !sp.value.is_zero()) return sp;
  sp.hessian = hessian_determinant(fl).evaluate(x);
  sp.kind = sp.hessian->is_zero() ? PointKind::HigherSingularity : PointKind::Node;
  return sp;
}

GwElement node_type(const Polynomial& f, const std::vector<FieldElement>& x) {
  SingularPoint sp = classify_point(f, x);
  if (sp.kind != PointKind::Node)
    throw Error(ErrorCode::NotANode, std::string("the point is ") + point_kind_name(sp.kind));
  return GwElement::symbol(*sp.hessian);
}

// ---------------------------------------------------------------- linear family

namespace {

std::vector<std::vector<FieldElement>> sample_values(const Field& k, std::size_t n, std::size_t count,
                                                     std::uint64_t seed) {
  std::uint64_t q = k->order().get_ui();
  double total_d = 1;
  for (std::size_t i = 0; i < n; ++i) total_d *= static_cast<double>(q);
  if (total_d > 1e15) throw Error(ErrorCode::Unsupported, "too many variables for sampling");
  std::uint64_t total = static_cast<std::uint64_t>(total_d);
  std::vector<std::uint64_t> chosen;
  if (count >= total - 1) {
    for (std::uint64_t i = 1; i < total; ++i) chosen.push_back(i);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, total - 1);
    std::set<std::uint64_t> seen;
    while (seen.size() < count) seen.insert(dist(rng));
    chosen.assign(seen.begin(), seen.end());
  }
  std::vector<std::vector<FieldElement>> out;
  for (auto code : chosen) {
    std::vector<FieldElement> a;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(k->element_at(code % q));
      code /= q;
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::string node_label(const FamilyNode& nd, std::size_t nvars) {
  std::string s = std::to_string(nd.degree) + ":";
  const Field& L = nd.hessian.field();
  if (nvars == 2) {
    // Plane nodes have type <-D> with tangent lines over k(x)(sqrt D).
    Tri split = L->is_square(L->neg(nd.hessian));
    return s + (split == Tri::True ? "split" : split == Tri::False ? "non-split" : "?");
  }
  return s + "<" + L->square_class(nd.hessian).rep.str() + ">";
}

}  // namespace

FamilyReport verify_linear_family(const Polynomial& f_in, std::size_t samples, int max_ext, std::uint64_t rng_seed) {
  Polynomial f = spatial(f_in);
  const Field& k = f.field();
  if (!k->is_finite()) throw Error(ErrorCode::InfiniteField, k->descriptor());
  auto grad = gradient(f);
  Polynomial hess = hessian_determinant(f);
  FamilyReport rep;
  rep.lhs = GwElement(k);
  for (const auto& pt : fiber_points(grad, max_ext)) {
    rep.lhs = rep.lhs + local_degree(grad, pt.coords);
    rep.singular_points.push_back(pt.coords);
  }
  rep.lhs_rank = rep.lhs.rank();
  FieldElement lhs_disc = invariants(rep.lhs).discriminant->rep;
  std::size_t n = f.nvars();
  for (auto& a : sample_values(k, n, samples, rng_seed)) {
    FamilySample s;
    s.a = a;
    s.rhs = GwElement(k);
    std::vector<Polynomial> ga;
    for (std::size_t i = 0; i < n; ++i) ga.push_back(grad[i] - Polynomial::constant(k, f.vars(), a[i]));
    long count = 0;
    bool degenerate = false;
    for (const auto& pt : fiber_points(ga, max_ext)) {
      FamilyNode nd;
      nd.coords = pt.coords;
      nd.degree = pt.degree;
      const Field& L = pt.coords.front().field();
      nd.hessian = hess.change_field(L).evaluate(pt.coords);
      count += pt.degree;
      if (nd.hessian.is_zero()) {
        degenerate = true;
        s.nodes.push_back(std::move(nd));
        continue;
      }
      nd.type = GwElement::symbol(nd.hessian);
      nd.transfer = same_field(L, k) ? nd.type : transfer(nd.type, k);
      s.rhs = s.rhs + nd.transfer;
      s.nodes.push_back(std::move(nd));
    }
    std::vector<std::string> labels;
    for (const auto& nd : s.nodes) labels.push_back(nd.hessian.is_zero() ? "degenerate" : node_label(nd, n));
    std::sort(labels.begin(), labels.end());
    for (const auto& l : labels) s.bucket += (s.bucket.empty() ? "" : " + ") + l;
    if (s.bucket.empty()) s.bucket = "none";
    if (degenerate) {
      s.status = "degenerate";
    } else if (count < rep.lhs_rank) {
      s.status = "escapes";
    } else {
      s.status = "generic";
      ++rep.generic;
      s.equal = equals(rep.lhs, s.rhs);
      if (s.equal != Tri::True) rep.all_equal = false;
      bool rational = std::all_of(s.nodes.begin(), s.nodes.end(), [](const FamilyNode& nd) { return nd.degree == 1; });
      if (rational) {
        FieldElement prod = k->one();
        for (const auto& nd : s.nodes) prod = k->mul(prod, nd.hessian);
        s.rational_obstruction = k->same_class(k->square_class(prod), {lhs_disc}) == Tri::True;
        if (!*s.rational_obstruction) rep.obstructions_hold = false;
      }
      ++rep.buckets[s.bucket];
    }
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

}  // namespace a1
