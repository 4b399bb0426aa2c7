#include "a1/degree.hpp"

#include <algorithm>
#include <set>

#include "a1/upoly.hpp"

namespace a1 {

namespace {

/// Smallest field of the tower containing every coordinate and k.
Field common_field(const std::vector<FieldElement>& x, Field k) {
  for (const auto& a : x) {
    if (k->contains(a.field())) continue;
    if (!a.field()->contains(k)) throw Error(ErrorCode::FieldMismatch, a.field()->descriptor() + " vs " + k->descriptor());
    k = a.field();
  }
  return k;
}

/// Coordinates of a over k along the extension tower.
std::vector<FieldElement> flatten(const FieldElement& a, const Field& k) {
  const Field& L = a.field();
  if (same_field(L, k)) return {a};
  if (L->kind() != FieldKind::SimpleExtension)
    throw Error(ErrorCode::NotAnExtension, k->descriptor() + " is not below " + L->descriptor());
  const auto& c = std::get<PolyRep>(a.rep()).c;
  std::vector<FieldElement> out;
  for (int i = 0; i < L->degree(); ++i) {
    FieldElement ci = i < static_cast<int>(c.size()) ? c[i] : L->base()->zero();
    auto sub = flatten(ci, k);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

}  // namespace

long residue_degree(const std::vector<FieldElement>& x, const Field& k) {
  Field L = common_field(x, k);
  if (same_field(L, k)) return 1;
  std::vector<FieldElement> coords;
  for (const auto& a : x) coords.push_back(L->coerce(a));
  std::vector<FieldElement> span{L->one()};
  Matrix vecs{flatten(L->one(), k)};
  for (std::size_t i = 0; i < span.size(); ++i) {
    for (const auto& c : coords) {
      FieldElement p = L->mul(span[i], c);
      Matrix trial = vecs;
      trial.push_back(flatten(p, k));
      if (row_reduce(k, trial).pivots.size() > vecs.size()) {
        vecs = std::move(trial);
        span.push_back(p);
      }
    }
  }
  return static_cast<long>(span.size());
}

namespace {

Field point_field(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& q) {
  if (fs.empty()) throw Error(ErrorCode::NonSquareSystem, "empty system");
  Field k = fs.front().field();
  Field L = common_field(q, k);
  if (!same_field(L, k) && residue_degree(q, k) != extension_degree(L, k))
    throw Error(ErrorCode::Unsupported, "the coordinates generate a proper subfield of " + L->descriptor() +
                                            "; give the point over its residue field");
  return L;
}

std::vector<Polynomial> base_change(const std::vector<Polynomial>& fs, const Field& L) {
  std::vector<Polynomial> out;
  for (const auto& f : fs) out.push_back(f.change_field(L));
  return out;
}

GwElement down(const GwElement& e, const Field& k) {
  return same_field(e.field(), k) ? e : transfer(e, k);
}

}  // namespace

GwElement local_degree_simple(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& q) {
  Field k = fs.front().field();
  Field L = point_field(fs, q);
  auto gs = base_change(fs, L);
  if (q.size() != gs.front().nvars()) throw Error(ErrorCode::ArityMismatch, "point arity");
  for (const auto& g : gs)
    if (!g.evaluate(q).is_zero()) throw Error(ErrorCode::NotAZero, "the system does not vanish at the point");
  FieldElement j = jacobian_determinant(gs).evaluate(q);
  if (j.is_zero()) throw Error(ErrorCode::DegenerateZero, "Jf vanishes at the point; use the EKL form");
  return down(GwElement::symbol(j), k);
}

Row default_eta(const LocalAlgebra& A, const Row& jacobian) {
  const Field& k = A.field;
  Row eta(A.dimension(), k->zero());
  for (std::size_t j = 0; j < jacobian.size(); ++j)
    if (!jacobian[j].is_zero()) {
      eta[j] = k->mul(k->from_int(static_cast<long>(A.dimension())), k->inv(jacobian[j]));
      return eta;
    }
  throw Error(ErrorCode::JacobianVanishesInAlgebra, "Jacobian element is zero in the local algebra");
}

Matrix ekl_gram(const LocalAlgebra& A, const Row& eta) {
  const Field& k = A.field;
  std::size_t d = A.dimension();
  Matrix g = zero_matrix(k, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Monomial m = A.basis[i];
      for (std::size_t v = 0; v < m.size(); ++v) m[v] += A.basis[j][v];
      Row nf = normal_form(Polynomial::monomial(k, A.vars, m, k->one()), A);
      FieldElement s = k->zero();
      for (std::size_t l = 0; l < d; ++l)
        if (!nf[l].is_zero() && !eta[l].is_zero()) s = k->add(s, k->mul(nf[l], eta[l]));
      g[i][j] = s;
      g[j][i] = s;
    }
  return g;
}

EklForm ekl_form(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& x, std::optional<Row> eta,
                 int max_order) {
  Field L = point_field(fs, x);
  EklForm out;
  out.algebra = local_quotient(base_change(fs, L), x, max_order);
  const Field& k = out.algebra.field;
  std::size_t d = out.algebra.dimension();
  std::int64_t p = k->characteristic();
  if (p != 0 && d % static_cast<std::size_t>(p) == 0)
    throw Error(ErrorCode::CharDividesDimension,
                "characteristic " + std::to_string(p) + " divides the local dimension " + std::to_string(d));
  out.jacobian = jacobian_image(out.algebra);
  if (eta) {
    if (eta->size() != d) throw Error(ErrorCode::ArityMismatch, "eta has the wrong length");
    FieldElement v = k->zero();
    for (std::size_t i = 0; i < d; ++i) v = k->add(v, k->mul(k->coerce((*eta)[i]), out.jacobian[i]));
    if (!k->equal(v, k->from_int(static_cast<long>(d))))
      throw Error(ErrorCode::DegenerateEkl, "eta(Jf) differs from the local dimension");
    out.eta = *eta;
  } else {
    out.eta = default_eta(out.algebra, out.jacobian);
  }
  out.gram = ekl_gram(out.algebra, out.eta);
  try {
    out.cls = diagonalize(k, out.gram);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateForm) throw;
    throw Error(ErrorCode::DegenerateEkl, "EKL Gram matrix is degenerate");
  }
  return out;
}

GwElement local_degree_ekl(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& x, int max_order) {
  return down(ekl_form(fs, x, std::nullopt, max_order).cls, fs.front().field());
}

GwElement local_degree(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& x, int max_order) {
  Field L = point_field(fs, x);
  auto gs = base_change(fs, L);
  for (const auto& g : gs)
    if (!g.evaluate(x).is_zero()) throw Error(ErrorCode::NotAZero, "the system does not vanish at the point");
  if (!jacobian_determinant(gs).evaluate(x).is_zero()) return local_degree_simple(fs, x);
  return local_degree_ekl(fs, x, max_order);
}

// ---------------------------------------------------------------- Bezout

namespace {

upoly::Coeffs univariate(const Polynomial& p) {
  if (p.nvars() != 1) throw Error(ErrorCode::VariableMismatch, "expected a polynomial in one variable");
  upoly::Coeffs c;
  int d = p.total_degree();
  for (int e = 0; e <= d; ++e) c.push_back(p.coefficient(Monomial{e}));
  upoly::trim(c);
  return c;
}

void check_p1(const Field& k, const upoly::Coeffs& a, const upoly::Coeffs& b) {
  if (b.empty()) throw Error(ErrorCode::DegreeOrder, "denominator is zero");
  if (upoly::deg(a) <= upoly::deg(b)) throw Error(ErrorCode::DegreeOrder, "need deg A > deg B");
  if (!upoly::lead(b).is_one()) throw Error(ErrorCode::DegreeOrder, "denominator must be monic");
  if (!upoly::is_one(upoly::gcd(k, a, b))) throw Error(ErrorCode::NotCoprime, "A and B share a factor");
}

}  // namespace

Matrix bezout_matrix(const Polynomial& pa, const Polynomial& pb) {
  if (!same_field(pa.field(), pb.field())) throw Error(ErrorCode::FieldMismatch, "A and B over different fields");
  const Field& k = pa.field();
  upoly::Coeffs a = univariate(pa), b = univariate(pb);
  check_p1(k, a, b);
  std::size_t n = static_cast<std::size_t>(upoly::deg(a));
  Matrix c = zero_matrix(k, n, n);
  // X^k Y^l - X^l Y^k = (X - Y) X^l Y^l sum_{i < k - l} X^i Y^(k-l-1-i) for k > l.
  for (std::size_t ka = 0; ka < a.size(); ++ka)
    for (std::size_t lb = 0; lb < b.size(); ++lb) {
      if (ka == lb || a[ka].is_zero() || b[lb].is_zero()) continue;
      FieldElement w = k->mul(a[ka], b[lb]);
      std::size_t hi = std::max(ka, lb), lo = std::min(ka, lb);
      if (ka < lb) w = k->neg(w);
      for (std::size_t i = 0; i < hi - lo; ++i) c[lo + i][hi - 1 - i] = k->add(c[lo + i][hi - 1 - i], w);
    }
  return c;
}

GwElement bezout_form_p1(const Polynomial& a, const Polynomial& b) { return diagonalize(a.field(), bezout_matrix(a, b)); }

// ---------------------------------------------------------------- finite fields

Field finite_extension_of(const Field& k, int r) {
  if (!k->is_finite()) throw Error(ErrorCode::InfiniteField, k->descriptor());
  if (r == 1) return k;
  std::set<std::string> used;
  for (Field n = k; n; n = n->base())
    if (n->kind() == FieldKind::SimpleExtension) used.insert(n->name());
  for (const char* name : {"w", "v", "u", "r", "q"})
    if (!used.count(name)) return FieldNode::finite_extension(k, r, name);
  throw Error(ErrorCode::Unsupported, "no free generator name");
}

std::vector<FiberPoint> fiber_points(const std::vector<Polynomial>& fs, int max_ext,
                                     const std::optional<Polynomial>& nonvanishing) {
  if (fs.empty()) throw Error(ErrorCode::NonSquareSystem, "empty system");
  const Field& k = fs.front().field();
  if (!k->is_finite()) throw Error(ErrorCode::InfiniteField, k->descriptor());
  if (max_ext < 1) throw Error(ErrorCode::Usage, "max-ext must be positive");
  std::size_t n = fs.front().nvars();
  std::uint64_t q = k->order().get_ui();
  std::vector<FiberPoint> out;
  for (int r = 1; r <= max_ext; ++r) {
    Field L = finite_extension_of(k, r);
    auto T = FiniteFieldTables::get(L);
    double total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= T->order();
    if (total > 5e7) throw Error(ErrorCode::Unsupported, "fiber enumeration over " + L->descriptor() + " is too large");
    std::vector<CompiledPolynomial> cf;
    for (const auto& f : fs) cf.emplace_back(f.change_field(L), T);
    std::optional<CompiledPolynomial> cb;
    if (nonvanishing) cb.emplace(nonvanishing->change_field(L), T);
    std::vector<FiniteFieldTables::Elt> x(n, 0);
    auto frob = [&](const std::vector<FiniteFieldTables::Elt>& v) {
      std::vector<FiniteFieldTables::Elt> w(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) w[i] = T->pow(v[i], q);
      return w;
    };
    auto key = [&](const std::vector<FiniteFieldTables::Elt>& v) {
      std::vector<std::uint64_t> kk;
      for (auto e : v) kk.push_back(T->index(e));
      return kk;
    };
    for (;;) {
      bool zero = true;
      for (const auto& c : cf)
        if (c.eval(x) != 0) {
          zero = false;
          break;
        }
      if (zero && (!cb || cb->eval(x) != 0)) {
        // Orbit size under x -> x^q; keep points of exact degree r, once per orbit.
        auto y = frob(x);
        int d = 1;
        auto best = key(x);
        while (y != x) {
          best = std::min(best, key(y));
          y = frob(y);
          ++d;
        }
        if (d == r && best == key(x)) {
          FiberPoint pt;
          for (auto e : x) pt.coords.push_back(T->element(e));
          pt.degree = r;
          out.push_back(std::move(pt));
        }
      }
      std::size_t i = 0;
      while (i < n && ++x[i] == T->order()) x[i++] = 0;
      if (i == n) break;
    }
  }
  return out;
}

namespace {

GlobalDegree assemble(std::vector<FiberPoint> pts, const Polynomial& jac, const Field& k, std::optional<long> expected) {
  GlobalDegree g;
  g.degree = GwElement(k);
  for (auto& pt : pts) {
    const Field& L = pt.coords.empty() ? k : pt.coords.front().field();
    pt.jacobian = jac.change_field(L).evaluate(pt.coords);
    if (pt.jacobian.is_zero()) throw Error(ErrorCode::IrregularValue, "Jf vanishes at a fiber point");
    pt.contribution = down(GwElement::symbol(pt.jacobian), k);
    g.degree = g.degree + pt.contribution;
    g.geometric_count += pt.degree;
  }
  g.points = std::move(pts);
  if (expected && g.geometric_count < *expected)
    throw Error(ErrorCode::FiberEscapesBound, "found " + std::to_string(g.geometric_count) + " of " +
                                                  std::to_string(*expected) + " geometric preimages");
  return g;
}

}  // namespace

GlobalDegree global_degree_finite_field(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& y,
                                        int max_ext, std::optional<long> expected) {
  if (fs.empty() || fs.size() != fs.front().nvars())
    throw Error(ErrorCode::NonSquareSystem, "need n equations in n variables");
  if (y.size() != fs.size()) throw Error(ErrorCode::ArityMismatch, "value has the wrong number of coordinates");
  const Field& k = fs.front().field();
  std::vector<Polynomial> gs;
  for (std::size_t i = 0; i < fs.size(); ++i)
    gs.push_back(fs[i] - Polynomial::constant(k, fs[i].vars(), k->coerce(y[i])));
  if (!expected && fs.size() == 1 && fs[0].total_degree() > 0) expected = fs[0].total_degree();
  return assemble(fiber_points(gs, max_ext), jacobian_determinant(fs), k, expected);
}

GlobalDegree global_degree_p1(const Polynomial& a, const Polynomial& b, const FieldElement& y, int max_ext) {
  const Field& k = a.field();
  check_p1(k, univariate(a), univariate(b));
  Polynomial fy = a - b.scale(k->coerce(y));
  Polynomial jac = a.derivative(0) * b - a * b.derivative(0);
  return assemble(fiber_points({fy}, max_ext, b), jac, k, a.total_degree());
}

}  // namespace a1
