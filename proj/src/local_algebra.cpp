#include "a1/local_algebra.hpp"

#include <algorithm>

namespace a1 {

namespace {

void monomials_of_degree(std::size_t nvars, int d, Monomial& cur, std::size_t i, std::vector<Monomial>& out) {
  if (i + 1 == nvars) {
    cur[i] = d;
    out.push_back(cur);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[i] = e;
    monomials_of_degree(nvars, d - e, cur, i + 1, out);
  }
  cur[i] = 0;
}

/// Monomials of degree < n, largest first.
std::vector<Monomial> monomials_below(std::size_t nvars, int n) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (n > 0) out.push_back({});
    return out;
  }
  Monomial cur(nvars, 0);
  for (int d = n - 1; d >= 0; --d) monomials_of_degree(nvars, d, cur, 0, out);
  std::sort(out.begin(), out.end(), GrlexDescending{});
  return out;
}

struct Macaulay {
  std::vector<Monomial> columns;
  Echelon reduced;
};

Macaulay macaulay(const std::vector<Polynomial>& fs, int n) {
  const Field& k = fs.front().field();
  std::size_t nvars = fs.front().nvars();
  Macaulay out;
  out.columns = monomials_below(nvars, n);
  std::map<Monomial, std::size_t> col;
  for (std::size_t i = 0; i < out.columns.size(); ++i) col[out.columns[i]] = i;
  Matrix rows;
  for (const auto& f : fs) {
    int ord = f.order();
    if (ord < 0) continue;
    for (const auto& m : monomials_below(nvars, n - ord)) {
      Row row(out.columns.size(), k->zero());
      bool any = false;
      for (const auto& [e, c] : f.terms()) {
        Monomial me = e;
        for (std::size_t i = 0; i < nvars; ++i) me[i] += m[i];
        if (monomial_degree(me) >= n) continue;
        row[col.at(me)] = c;
        any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) {
    out.reduced.rows = {};
    return out;
  }
  out.reduced = row_reduce(k, std::move(rows));
  return out;
}

}  // namespace

Polynomial translate(const Polynomial& p, const std::vector<FieldElement>& x) {
  if (x.size() != p.nvars())
    throw Error(ErrorCode::ArityMismatch, "point has " + std::to_string(x.size()) + " coordinates, expected " +
                                              std::to_string(p.nvars()));
  bool origin = std::all_of(x.begin(), x.end(), [](const FieldElement& a) { return a.is_zero(); });
  if (origin) return p;
  std::vector<Polynomial> subs;
  for (std::size_t i = 0; i < x.size(); ++i)
    subs.push_back(Polynomial::variable(p.field(), p.vars(), i) +
                   Polynomial::constant(p.field(), p.vars(), p.field()->coerce(x[i])));
  return p.compose(subs);
}

std::size_t truncated_dimension(const std::vector<Polynomial>& fs, int n) {
  Macaulay m = macaulay(fs, n);
  return m.columns.size() - m.reduced.pivots.size();
}

LocalAlgebra local_quotient(const std::vector<Polynomial>& fs_in, const std::vector<FieldElement>& x,
                            int max_order) {
  if (fs_in.empty()) throw Error(ErrorCode::NonSquareSystem, "empty system");
  std::size_t nvars = fs_in.front().nvars();
  if (fs_in.size() != nvars)
    throw Error(ErrorCode::NonSquareSystem,
                std::to_string(fs_in.size()) + " equations in " + std::to_string(nvars) + " variables");
  if (x.size() != nvars)
    throw Error(ErrorCode::ArityMismatch,
                "point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(nvars));
  Field k = fs_in.front().field();
  for (const auto& a : x)
    if (!k->contains(a.field())) {
      if (!a.field()->contains(k)) throw Error(ErrorCode::FieldMismatch, "point is not over " + k->descriptor());
      k = a.field();
    }
  std::vector<Polynomial> fs;
  for (const auto& f : fs_in) fs.push_back(f.change_field(k));
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (!fs[i].evaluate(x).is_zero())
      throw Error(ErrorCode::NotAZero, "component " + std::to_string(i + 1) + " does not vanish at the point");
  LocalAlgebra A;
  A.field = k;
  A.vars = fs.front().vars();
  for (const auto& f : fs) A.system.push_back(translate(f, x));
  std::size_t prev = truncated_dimension(A.system, 1);
  for (int n = 1; n <= max_order; ++n) {
    std::size_t next = truncated_dimension(A.system, n + 1);
    if (next == prev) {
      A.order = n;
      Macaulay m = macaulay(A.system, n);
      A.columns = std::move(m.columns);
      A.reduced = std::move(m.reduced);
      std::vector<bool> pivot(A.columns.size(), false);
      for (auto c : A.reduced.pivots) pivot[c] = true;
      for (std::size_t c = A.columns.size(); c-- > 0;)
        if (!pivot[c]) A.basis.push_back(A.columns[c]);
      return A;
    }
    prev = next;
  }
  throw Error(ErrorCode::NotIsolated, "dimension still growing at order " + std::to_string(max_order));
}

Row normal_form(const Polynomial& p_in, const LocalAlgebra& A) {
  const Field& k = A.field;
  Polynomial p = p_in.change_field(k);
  if (p.vars() != A.vars) p = p.with_vars(A.vars);
  std::map<Monomial, std::size_t> col;
  for (std::size_t i = 0; i < A.columns.size(); ++i) col[A.columns[i]] = i;
  Row v(A.columns.size(), k->zero());
  for (const auto& [m, c] : p.terms())
    if (monomial_degree(m) < A.order) v[col.at(m)] = c;
  for (std::size_t r = 0; r < A.reduced.rows.size(); ++r) {
    std::size_t pc = A.reduced.pivots[r];
    if (v[pc].is_zero()) continue;
    FieldElement f = v[pc];
    const Row& row = A.reduced.rows[r];
    for (std::size_t j = pc; j < v.size(); ++j)
      if (!row[j].is_zero()) v[j] = k->sub(v[j], k->mul(f, row[j]));
  }
  Row out;
  for (const auto& b : A.basis) out.push_back(v[col.at(b)]);
  return out;
}

Row jacobian_image(const LocalAlgebra& A) {
  Row img = normal_form(jacobian_determinant(A.system), A);
  if (std::all_of(img.begin(), img.end(), [](const FieldElement& a) { return a.is_zero(); }))
    throw Error(ErrorCode::JacobianVanishesInAlgebra, "Jacobian element is zero in the local algebra");
  return img;
}

}  // namespace a1
