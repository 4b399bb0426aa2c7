#include "a1/puiseux.hpp"

#include <algorithm>
#include <set>

#include "a1/linalg.hpp"
#include "a1/milnor.hpp"

namespace a1 {

namespace {

bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    long n = i < s.size() && s.size() - i < 10 ? std::stol(s.substr(i)) : -1;
    return std::make_tuple(s == "t", s.substr(0, i), n, s);
  };
  return split(a) < split(b);
}

/// Least valuation; a series with no known term counts as its precision.
std::int64_t vmin(const std::vector<FieldElement>& xs) {
  std::int64_t best = INT64_MAX;
  for (const auto& a : xs) {
    const Field& K = a.field();
    auto v = K->valuation(a);
    best = std::min(best, v ? *v : K->precision(a));
  }
  return best;
}

std::int64_t pmin(const std::vector<FieldElement>& xs) {
  std::int64_t best = INT64_MAX;
  for (const auto& a : xs) best = std::min(best, a.field()->precision(a));
  return best;
}

struct Deformation {
  Polynomial F;
  std::vector<std::size_t> space;
  std::vector<Polynomial> grad;
  std::vector<std::vector<Polynomial>> hess;
  Polynomial hdet;
};

Deformation build(const Polynomial& f, const Polynomial& g) {
  Deformation d;
  d.F = deformation(f, g);
  d.space = space_variables(d.F.vars());
  for (auto i : d.space) d.grad.push_back(d.F.derivative(i));
  for (const auto& gi : d.grad) {
    std::vector<Polynomial> row;
    for (auto j : d.space) row.push_back(gi.derivative(j));
    d.hess.push_back(std::move(row));
  }
  d.hdet = determinant(d.hess);
  return d;
}

/// Values of all variables: space coordinates, t from the series field.
std::vector<FieldElement> full_point(const Deformation& d, const Field& K, const std::vector<FieldElement>& x) {
  std::vector<FieldElement> pt(d.F.nvars());
  for (std::size_t i = 0; i < d.space.size(); ++i) pt[d.space[i]] = K->coerce(x[i]);
  for (std::size_t i = 0; i < pt.size(); ++i)
    if (!pt[i].valid()) pt[i] = K->t();
  return pt;
}

std::vector<FieldElement> eval_all(const std::vector<Polynomial>& ps, const std::vector<FieldElement>& pt) {
  std::vector<FieldElement> out;
  for (const auto& p : ps) out.push_back(p.evaluate(pt));
  return out;
}

Field working_field(const Field& K, std::int64_t cap) {
  return FieldNode::puiseux(K->base(), K->ramification(), cap, K->twist());
}

}  // namespace

Polynomial deformation(const Polynomial& f, const Polynomial& g) {
  if (!same_field(f.field(), g.field())) throw Error(ErrorCode::FieldMismatch, "f and g over different fields");
  std::set<std::string> names(f.vars().begin(), f.vars().end());
  names.insert(g.vars().begin(), g.vars().end());
  names.insert("t");
  std::vector<std::string> vars(names.begin(), names.end());
  std::sort(vars.begin(), vars.end(), natural_less);
  Polynomial t = Polynomial::variable(f.field(), vars, vars.size() - 1);
  return f.with_vars(vars) + t * g.with_vars(vars);
}

Branch newton_lift(const Polynomial& f, const Polynomial& g, const std::map<std::string, FieldElement>& seed,
                   std::int64_t target) {
  if (seed.empty()) throw Error(ErrorCode::SeedInconsistent, "empty seed");
  Field K = seed.begin()->second.field();
  if (K->kind() != FieldKind::Puiseux) throw Error(ErrorCode::InvalidField, "seeds must lie in a Puiseux field");
  Deformation d = build(f, g);
  std::vector<std::string> names;
  for (auto i : d.space) names.push_back(d.F.vars()[i]);
  for (const auto& [name, v] : seed)
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw Error(ErrorCode::VariableMismatch, "seed names unknown variable '" + name + "'");
  if (target <= 0 || target > K->cap()) target = K->cap();

  auto seed_in = [&](const Field& W) {
    std::vector<FieldElement> x;
    for (const auto& name : names) {
      auto it = seed.find(name);
      x.push_back(W->exact(it == seed.end() ? W->zero() : W->coerce(K->coerce(it->second))));
    }
    return x;
  };

  Field probe = working_field(K, target + 8);
  auto v0 = probe->valuation(d.hdet.evaluate(full_point(d, probe, seed_in(probe))));
  if (!v0) throw Error(ErrorCode::NoQuadraticConvergence, "Hessian determinant vanishes on the seed");
  std::int64_t nw = target + 2 * *v0 + 4;
  Field W = working_field(K, nw);

  Branch b;
  b.field = K;
  b.vars = names;
  std::vector<FieldElement> x = seed_in(W);
  std::vector<FieldElement> r = eval_all(d.grad, full_point(d, W, x));
  std::int64_t vr = vmin(r);
  b.residual_valuations.push_back(vr);
  if (vr <= 0) throw Error(ErrorCode::SeedInconsistent, "seed residual has valuation " + std::to_string(vr));
  for (int step = 0;; ++step) {
    auto pt = full_point(d, W, x);
    auto vd = W->valuation(d.hdet.evaluate(pt));
    if (!vd) throw Error(ErrorCode::NoQuadraticConvergence, "Hessian determinant vanishes on the iterate");
    b.hessian_valuation = *vd;
    // Hensel: v(r) > 2 v(det H) gives a unique root within v(r) - v(det H) of x.
    if (vr >= target + *vd && vr > 2 * *vd) break;
    if (vr >= nw) throw Error(ErrorCode::PrecisionExhausted, "working precision exhausted before certification");
    if (step >= 64) throw Error(ErrorCode::NoQuadraticConvergence, "no certificate after 64 steps");
    Matrix h;
    for (const auto& row : d.hess) h.push_back(eval_all(row, pt));
    auto delta = solve(W, h, r);
    if (!delta) throw Error(ErrorCode::NoQuadraticConvergence, "singular Hessian on the iterate");
    std::int64_t vdelta = vmin(*delta), pdelta = pmin(*delta);
    if (vdelta <= 0) throw Error(ErrorCode::NoQuadraticConvergence, "Newton step has valuation " + std::to_string(vdelta));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = W->exact(W->sub(x[i], (*delta)[i]));
    r = eval_all(d.grad, full_point(d, W, x));
    std::int64_t vnew = vmin(r);
    b.residual_valuations.push_back(vnew);
    if (vnew < std::min(2 * vdelta, pdelta) || vnew <= vr)
      throw Error(ErrorCode::NoQuadraticConvergence, "residual valuation went from " + std::to_string(vr) + " to " +
                                                         std::to_string(vnew));
    vr = vnew;
  }
  for (const auto& a : x) {
    const auto& s = std::get<PuiseuxRep>(a.rep());
    std::vector<std::int64_t> e;
    std::vector<FieldElement> c;
    for (std::size_t i = 0; i < s.exps.size(); ++i)
      if (s.exps[i] < target) {
        e.push_back(s.exps[i]);
        c.push_back(s.coeffs[i]);
      }
    b.coords.push_back(K->from_series(e, c, target));
  }
  b.precision = target;
  return b;
}

GwElement branch_type(const Branch& b, const Polynomial& f, const Polynomial& g) {
  Deformation d = build(f, g);
  FieldElement h = d.hdet.evaluate(full_point(d, b.field, b.coords));
  if (!b.field->valuation(h)) throw Error(ErrorCode::NonUnitHessian, "Hessian determinant vanishes on the branch");
  return GwElement::symbol(h);
}

// ---------------------------------------------------------------- verification

namespace {

struct Automorphism {
  FieldElement zeta;  // s -> zeta s
  bool sigma = false; // conjugate a quadratic coefficient field
};

std::vector<FieldElement> roots_of_unity(const Field& kp, int m) {
  std::vector<FieldElement> cands;
  if (kp->is_finite() && kp->order() <= 10000) {
    cands = kp->enumerate();
  } else {
    cands = {kp->one(), kp->from_int(-1)};
    FieldElement half = kp->inv(kp->from_int(2));
    if (auto i = kp->sqrt(kp->from_int(-1))) {
      cands.push_back(*i);
      cands.push_back(kp->neg(*i));
    }
    if (auto r = kp->sqrt(kp->from_int(-3)))
      for (int a : {1, -1})
        for (int b : {1, -1}) cands.push_back(kp->mul(half, kp->add(kp->from_int(a), kp->mul(kp->from_int(b), *r))));
  }
  std::vector<FieldElement> out;
  for (const auto& z : cands)
    if (!z.is_zero() && kp->pow(z, m).is_one() &&
        std::none_of(out.begin(), out.end(), [&](const FieldElement& y) { return kp->equal(y, z); }))
      out.push_back(z);
  return out;
}

FieldElement conjugate(const FieldElement& c) {
  const Field& kp = c.field();
  const auto& p = std::get<PolyRep>(c.rep()).c;
  const Field& k = kp->base();
  FieldElement c0 = p.size() > 0 ? p[0] : k->zero(), c1 = p.size() > 1 ? p[1] : k->zero();
  const FieldElement& b = kp->minpoly()[1];
  return kp->from_coeffs({k->sub(c0, k->mul(c1, b)), k->neg(c1)});
}

FieldElement apply(const Automorphism& a, const FieldElement& x) {
  const Field& K = x.field();
  const auto& s = std::get<PuiseuxRep>(x.rep());
  std::vector<FieldElement> c;
  for (std::size_t i = 0; i < s.exps.size(); ++i) {
    FieldElement ci = a.sigma ? conjugate(s.coeffs[i]) : s.coeffs[i];
    c.push_back(K->base()->mul(ci, K->base()->pow(a.zeta, mpz_class(static_cast<long>(s.exps[i])))));
  }
  return K->from_series(s.exps, c, s.prec);
}

std::vector<Automorphism> automorphisms(const Field& K, const Field& k) {
  const Field& kp = K->base();
  bool quadratic = kp->kind() == FieldKind::SimpleExtension && kp->degree() == 2 && same_field(kp->base(), k) &&
                   kp->equal(conjugate(K->twist()), K->twist());
  std::vector<Automorphism> out;
  for (const auto& z : roots_of_unity(kp, K->ramification()))
    for (bool sg : {false, true}) {
      if (sg && !quadratic) continue;
      if (!sg && z.is_one()) continue;
      out.push_back({z, sg});
    }
  return out;
}

bool compatible(const Field& a, const Field& b) { return a->contains(b) && b->contains(a); }

bool same_branch(const std::vector<FieldElement>& x, const std::vector<FieldElement>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Field& K = x[i].field();
    if (!K->equal(x[i], K->coerce(y[i]))) return false;
  }
  return true;
}

Field series_base(const Field& K, const Field& k) {
  for (Field n = K; n; n = n->trace_base())
    if (n->kind() == FieldKind::Puiseux && n->ramification() == 1 && same_field(n->base(), k)) return n;
  throw Error(ErrorCode::NotAnExtension, K->descriptor() + " is not a series field over " + k->descriptor());
}

}  // namespace

BifurcationReport verify_bifurcation(const Polynomial& f, const Polynomial& g, const std::vector<Branch>& branches,
                                     const std::vector<FieldElement>& p, int max_order) {
  const Field& k = f.field();
  BifurcationReport rep;
  rep.lhs = milnor_number(f, p, max_order);
  auto fspace = space_variables(f.vars());
  std::vector<std::string> fnames;
  for (auto i : fspace) fnames.push_back(f.vars()[i]);

  GwElement r1(k), r2(k);
  std::int64_t cap = INT64_MAX;
  for (std::size_t bi = 0; bi < branches.size(); ++bi) {
    const Branch& b = branches[bi];
    const Field& K = b.field;
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
      auto it = std::find(fnames.begin(), fnames.end(), b.vars[i]);
      FieldElement pi = it == fnames.end() ? K->zero() : K->coerce(p[static_cast<std::size_t>(it - fnames.begin())]);
      FieldElement diff = K->sub(b.coords[i], pi);
      auto v = K->valuation(diff);
      if (v && *v <= 0)
        throw Error(ErrorCode::BranchDoesNotSpecialize,
                    "branch " + std::to_string(bi + 1) + " does not tend to the point in " + b.vars[i]);
    }
    BranchSummary s;
    s.index = bi;
    for (std::size_t j = 0; j < bi && !s.duplicate; ++j) {
      if (rep.branches[j].duplicate || !compatible(branches[j].field, K)) continue;
      if (same_branch(branches[j].coords, b.coords)) {
        s.duplicate = true;
        s.conjugate_of = j;
      }
      for (const auto& a : automorphisms(K, k)) {
        if (s.duplicate) break;
        std::vector<FieldElement> img;
        for (const auto& x : b.coords) img.push_back(apply(a, x));
        if (same_branch(branches[j].coords, img)) {
          s.duplicate = true;
          s.conjugate_of = j;
        }
      }
    }
    s.type = branch_type(b, f, g);
    Field T = series_base(K, k);
    s.degree = extension_degree(K, T);
    if (!s.duplicate) {
      for (const auto& a : automorphisms(K, k)) {
        std::vector<FieldElement> img;
        for (const auto& x : b.coords) img.push_back(apply(a, x));
        if (same_branch(b.coords, img) && rep.diagnosis.empty())
          rep.diagnosis = "branch " + std::to_string(bi + 1) +
                          " is fixed by a nontrivial automorphism; give it over its field of definition";
      }
      rep.rank_sum += s.degree;
      try {
        auto res = springer_residues(transfer(s.type, T), false);
        r1 = r1 + res.first;
        r2 = r2 + res.second;
        cap = std::min(cap, T->cap());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PrecisionExhausted) throw;
        rep.diagnosis = std::string("precision: ") + e.what();
      }
    }
    rep.branches.push_back(std::move(s));
  }
  rep.complete = rep.rank_sum == rep.lhs.rank();
  if (cap == INT64_MAX) cap = 1;
  Field T = FieldNode::puiseux(k, 1, cap);
  rep.rhs_residues = springer_residues(springer_reconstruct({r1, r2}, T), true);
  if (!rep.diagnosis.empty()) return rep;
  if (!rep.complete) {
    rep.diagnosis = "IncompleteBranchSet: branch degrees sum to " + std::to_string(rep.rank_sum) +
                    ", the Milnor number has rank " + std::to_string(rep.lhs.rank());
    return rep;
  }
  if (!rep.rhs_residues.second.empty()) {
    rep.result = Tri::False;
    rep.diagnosis = "second residue of the transferred types does not vanish";
    return rep;
  }
  rep.result = equals(rep.rhs_residues.first, rep.lhs);
  return rep;
}

}  // namespace a1
