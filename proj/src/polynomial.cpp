#include "a1/polynomial.hpp"

#include <algorithm>
#include <numeric>

namespace a1 {

int monomial_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  int da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da > db;
  return a > b;
}

Polynomial::Polynomial(Field k, std::vector<std::string> vars) : field_(std::move(k)), vars_(std::move(vars)) {}

Polynomial Polynomial::constant(const Field& k, const std::vector<std::string>& vars, const FieldElement& c) {
  Polynomial p(k, vars);
  p.add_term(Monomial(vars.size(), 0), c);
  return p;
}

Polynomial Polynomial::variable(const Field& k, const std::vector<std::string>& vars, std::size_t i) {
  Monomial m(vars.size(), 0);
  m[i] = 1;
  return monomial(k, vars, m, k->one());
}

Polynomial Polynomial::monomial(const Field& k, const std::vector<std::string>& vars, const Monomial& m,
                                const FieldElement& c) {
  Polynomial p(k, vars);
  p.add_term(m, c);
  return p;
}

int Polynomial::total_degree() const { return terms_.empty() ? -1 : monomial_degree(terms_.begin()->first); }

int Polynomial::order() const { return terms_.empty() ? -1 : monomial_degree(terms_.rbegin()->first); }

int Polynomial::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

FieldElement Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? field_->zero() : it->second;
}

FieldElement Polynomial::constant_term() const { return coefficient(Monomial(vars_.size(), 0)); }

void Polynomial::add_term(const Monomial& m, const FieldElement& c_in) {
  if (m.size() != vars_.size()) throw Error(ErrorCode::ArityMismatch, "monomial arity");
  FieldElement c = field_->coerce(c_in);
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = field_->add(it->second, c);
  if (it->second.is_zero()) terms_.erase(it);
}

namespace {

void check_ring(const Polynomial& a, const Polynomial& b) {
  if (!same_field(a.field(), b.field()))
    throw Error(ErrorCode::FieldMismatch, a.field()->descriptor() + " vs " + b.field()->descriptor());
  if (a.vars() != b.vars()) throw Error(ErrorCode::VariableMismatch, "polynomials in different variables");
}

}  // namespace

Polynomial Polynomial::operator-() const {
  Polynomial out(field_, vars_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, field_->neg(c));
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_ring(*this, o);
  Polynomial out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_ring(*this, o);
  Polynomial out(field_, vars_);
  Monomial m(vars_.size());
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, field_->mul(ca, cb));
    }
  return out;
}

Polynomial Polynomial::scale(const FieldElement& c) const {
  Polynomial out(field_, vars_);
  FieldElement cc = field_->coerce(c);
  for (const auto& [m, x] : terms_) out.add_term(m, field_->mul(x, cc));
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(field_, vars_, field_->one());
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!same_field(field_, o.field_) || vars_ != o.vars_ || terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [m, c] : terms_) {
    if (m != it->first || !field_->equal(c, it->second)) return false;
    ++it;
  }
  return true;
}

Polynomial Polynomial::derivative(std::size_t i) const {
  Polynomial out(field_, vars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    d[i] -= 1;
    out.add_term(d, field_->mul(c, field_->from_int(m[i])));
  }
  return out;
}

FieldElement Polynomial::evaluate(const std::vector<FieldElement>& point) const {
  if (point.size() != vars_.size())
    throw Error(ErrorCode::ArityMismatch,
                "point has " + std::to_string(point.size()) + " coordinates, expected " + std::to_string(vars_.size()));
  Field target = field_;
  for (const auto& x : point)
    if (!same_field(x.field(), target) && x.field()->contains(target)) target = x.field();
  std::vector<std::vector<FieldElement>> powers(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) powers[i].push_back(target->one());
  FieldElement acc = target->zero();
  for (const auto& [m, c] : terms_) {
    FieldElement term = target->coerce(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      auto& pw = powers[i];
      FieldElement xi = target->coerce(point[i]);
      while (pw.size() <= static_cast<std::size_t>(m[i])) pw.push_back(target->mul(pw.back(), xi));
      term = target->mul(term, pw[static_cast<std::size_t>(m[i])]);
    }
    acc = target->add(acc, term);
  }
  return acc;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& subs) const {
  if (subs.size() != vars_.size()) throw Error(ErrorCode::ArityMismatch, "substitution arity");
  if (subs.empty()) return *this;
  const Field& k = subs[0].field();
  const auto& vars = subs[0].vars();
  std::vector<std::vector<Polynomial>> powers(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) powers[i].push_back(constant(k, vars, k->one()));
  Polynomial acc(k, vars);
  for (const auto& [m, c] : terms_) {
    Polynomial term = constant(k, vars, k->coerce(c));
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= static_cast<std::size_t>(m[i])) pw.push_back(pw.back() * subs[i]);
      term = term * pw[static_cast<std::size_t>(m[i])];
    }
    acc = acc + term;
  }
  return acc;
}

Polynomial Polynomial::change_field(const Field& k) const {
  Polynomial out(k, vars_);
  for (const auto& [m, c] : terms_) out.add_term(m, k->coerce(c));
  return out;
}

Polynomial Polynomial::with_vars(const std::vector<std::string>& vars) const {
  std::vector<std::size_t> map(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    bool used = std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[i] != 0; });
    if (it == vars.end()) {
      if (used) throw Error(ErrorCode::VariableMismatch, "variable " + vars_[i] + " is not in the target ring");
      map[i] = vars.size();
    } else {
      map[i] = static_cast<std::size_t>(it - vars.begin());
    }
  }
  Polynomial out(field_, vars);
  for (const auto& [m, c] : terms_) {
    Monomial n(vars.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) n[map[i]] = m[i];
    out.add_term(n, c);
  }
  return out;
}

Polynomial Polynomial::truncate(int n) const {
  Polynomial out(field_, vars_);
  for (const auto& [m, c] : terms_)
    if (monomial_degree(m) < n) out.terms_.emplace(m, c);
  return out;
}

Polynomial Polynomial::specialize(std::size_t i, const FieldElement& v) const {
  Polynomial out(field_, vars_);
  FieldElement x = field_->coerce(v);
  for (const auto& [m, c] : terms_) {
    Monomial n = m;
    n[i] = 0;
    out.add_term(n, field_->mul(c, field_->pow(x, mpz_class(m[i]))));
  }
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    std::string cs = field_->format(c);
    bool comp = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
    std::string term;
    if (mono.empty())
      term = comp ? "(" + cs + ")" : cs;
    else if (cs == "1")
      term = mono;
    else if (cs == "-1")
      term = "-" + mono;
    else
      term = (comp ? "(" + cs + ")" : cs) + "*" + mono;
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out;
}

std::vector<std::size_t> space_variables(const std::vector<std::string>& vars) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] != "t") out.push_back(i);
  return out;
}

std::vector<Polynomial> gradient(const Polynomial& f) {
  std::vector<Polynomial> out;
  for (std::size_t i : space_variables(f.vars())) out.push_back(f.derivative(i));
  return out;
}

std::vector<std::vector<Polynomial>> jacobian_matrix(const std::vector<Polynomial>& fs) {
  if (fs.empty()) return {};
  auto idx = space_variables(fs[0].vars());
  if (idx.size() != fs.size())
    throw Error(ErrorCode::NonSquareSystem, std::to_string(fs.size()) + " equations in " +
                                                std::to_string(idx.size()) + " variables");
  std::vector<std::vector<Polynomial>> j;
  for (const auto& f : fs) {
    std::vector<Polynomial> row;
    for (std::size_t i : idx) row.push_back(f.derivative(i));
    j.push_back(std::move(row));
  }
  return j;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Polynomial acc(m[0][0].field(), m[0][0].vars());
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][c] * determinant(minor);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Polynomial jacobian_determinant(const std::vector<Polynomial>& fs) {
  if (fs.empty()) throw Error(ErrorCode::NonSquareSystem, "empty system");
  return determinant(jacobian_matrix(fs));
}

std::vector<std::vector<Polynomial>> hessian_matrix(const Polynomial& f) { return jacobian_matrix(gradient(f)); }

Polynomial hessian_determinant(const Polynomial& f) {
  auto g = gradient(f);
  if (g.empty()) return Polynomial::constant(f.field(), f.vars(), f.field()->one());
  return jacobian_determinant(g);
}

Polynomial homogenize(const Polynomial& f, const std::string& x0) {
  std::vector<std::string> vars{x0};
  vars.insert(vars.end(), f.vars().begin(), f.vars().end());
  int d = f.total_degree();
  Polynomial out(f.field(), vars);
  for (const auto& [m, c] : f.terms()) {
    Monomial n{d - monomial_degree(m)};
    n.insert(n.end(), m.begin(), m.end());
    out.add_term(n, c);
  }
  return out;
}

}  // namespace a1
