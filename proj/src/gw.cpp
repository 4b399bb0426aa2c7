#include "a1/gw.hpp"

#include <algorithm>
#include <set>

#include "a1/arith.hpp"

namespace a1 {

namespace {

void require_same(const Field& a, const Field& b) {
  if (!same_field(a, b)) throw Error(ErrorCode::FieldMismatch, a->descriptor() + " vs " + b->descriptor());
}

std::pair<std::string, bool> render_key(const FieldElement& rep) {
  std::string s = rep.str();
  if (!s.empty() && s[0] == '-') return {s.substr(1), true};
  return {s, false};
}

}  // namespace

GwElement GwElement::symbol(const FieldElement& a, long mult) {
  GwElement e(a.field());
  e.add_symbol(a, mult);
  return e;
}

GwElement GwElement::hyperbolic(const Field& k, long n) {
  GwElement e(k);
  e.add_symbol(k->one(), n);
  e.add_symbol(k->from_int(-1), n);
  return e;
}

long GwElement::rank() const {
  long r = 0;
  for (const auto& t : terms_) r += t.mult;
  return r;
}

void GwElement::add_symbol(const FieldElement& a, long mult) {
  if (!field_) field_ = a.field();
  FieldElement x = field_->coerce(a);
  add_class(field_->square_class(x).rep, mult);
}

void GwElement::add_class(const FieldElement& rep, long mult) {
  if (mult == 0) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (field_->same_class({it->rep}, {rep}) != Tri::True) continue;
    it->mult += mult;
    if (it->mult == 0) terms_.erase(it);
    return;
  }
  terms_.push_back({rep, mult});
  sort_terms();
}

void GwElement::sort_terms() {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const GwTerm& a, const GwTerm& b) { return render_key(a.rep) < render_key(b.rep); });
}

GwElement GwElement::operator+(const GwElement& o) const {
  if (!field_) return o;
  if (!o.field_) return *this;
  require_same(field_, o.field_);
  GwElement out = *this;
  for (const auto& t : o.terms_) out.add_class(field_->coerce(t.rep), t.mult);
  return out;
}

GwElement GwElement::operator-(const GwElement& o) const { return *this + o.scaled(-1); }

GwElement GwElement::scaled(long n) const {
  GwElement out(field_);
  if (n == 0) return out;
  for (const auto& t : terms_) out.terms_.push_back({t.rep, t.mult * n});
  return out;
}

GwElement GwElement::operator*(const GwElement& o) const {
  require_same(field_, o.field_);
  GwElement out(field_);
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) out.add_symbol(field_->mul(a.rep, field_->coerce(b.rep)), a.mult * b.mult);
  return out;
}

std::string GwElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    long m = t.mult < 0 ? -t.mult : t.mult;
    std::string term = (m == 1 ? "" : std::to_string(m)) + "<" + t.rep.str() + ">";
    if (out.empty())
      out = (t.mult < 0 ? "-" : "") + term;
    else
      out += (t.mult < 0 ? " - " : " + ") + term;
  }
  return out;
}

nlohmann::json GwElement::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& t : terms_) entries.push_back({{"rep", t.rep.str()}, {"mult", t.mult}});
  return {{"field", field_ ? field_->descriptor() : std::string("?")}, {"entries", entries}};
}

// ---------------------------------------------------------------- diagonalization

std::vector<FieldElement> diagonal_entries(const Field& k, const Matrix& gram) {
  Matrix a = gram;
  std::size_t n = a.size();
  for (auto& row : a) {
    if (row.size() != n) throw Error(ErrorCode::DegenerateForm, "Gram matrix is not square");
    for (auto& x : row) x = k->coerce(x);
  }
  if (!is_symmetric(a)) throw Error(ErrorCode::DegenerateForm, "Gram matrix is not symmetric");
  std::vector<FieldElement> diag;
  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t p = i;
    while (p < n && a[p][p].is_zero()) ++p;
    if (p == n) {
      // All remaining diagonal entries vanish: v_r <- v_r + v_j makes a[r][r] = 2 a[r][j].
      std::size_t r = n, j = n;
      for (std::size_t x = i; x < n && r == n; ++x)
        for (std::size_t y = i; y < n; ++y)
          if (x != y && !a[x][y].is_zero()) {
            r = x;
            j = y;
            break;
          }
      if (r == n) throw Error(ErrorCode::DegenerateForm, "form is degenerate");
      for (std::size_t c = 0; c < n; ++c) a[r][c] = k->add(a[r][c], a[j][c]);
      for (std::size_t c = 0; c < n; ++c) a[c][r] = k->add(a[c][r], a[c][j]);
      p = r;
    }
    swap_index(i, p);
    FieldElement d = a[i][i];
    FieldElement dinv = k->inv(d);
    for (std::size_t r = i + 1; r < n; ++r) {
      if (a[r][i].is_zero()) continue;
      FieldElement f = k->mul(a[r][i], dinv);
      for (std::size_t c = i + 1; c < n; ++c) a[r][c] = k->sub(a[r][c], k->mul(f, a[i][c]));
    }
    for (std::size_t r = i + 1; r < n; ++r) {
      a[r][i] = k->zero();
      a[i][r] = k->zero();
    }
    diag.push_back(d);
  }
  return diag;
}

GwElement diagonalize(const Field& k, const Matrix& gram) {
  GwElement e(k);
  for (const auto& d : diagonal_entries(k, gram)) e.add_symbol(d);
  return e;
}

// ---------------------------------------------------------------- invariants

namespace {

// Integer representative of a Q square class (reps are squarefree integers).
mpz_class q_int(const FieldElement& rep) { return std::get<mpq_class>(rep.rep()).get_num(); }

std::vector<mpz_class> expand(const GwElement& e, bool negative_part) {
  std::vector<mpz_class> out;
  for (const auto& t : e.terms()) {
    if ((t.mult < 0) != negative_part) continue;
    long m = t.mult < 0 ? -t.mult : t.mult;
    for (long i = 0; i < m; ++i) out.push_back(q_int(t.rep));
  }
  return out;
}

int hasse(const std::vector<mpz_class>& d, const mpz_class& p) {
  int h = 1;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) h *= arith::hilbert_symbol(d[i], d[j], p);
  return h;
}

std::set<mpz_class> relevant_primes(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  std::set<mpz_class> ps{2};
  for (const auto* v : {&a, &b})
    for (const auto& x : *v)
      for (const auto& p : arith::prime_divisors(x)) ps.insert(p);
  return ps;
}

}  // namespace

GwInvariants invariants(const GwElement& e) {
  GwInvariants inv;
  const Field& k = e.field();
  inv.rank = e.rank();
  if (!k) return inv;
  FieldElement disc = k->one();
  for (const auto& t : e.terms()) {
    long m = t.mult < 0 ? -t.mult : t.mult;
    if (m % 2) disc = k->mul(disc, t.rep);
  }
  inv.discriminant = k->square_class(disc);
  if (k->ordered()) {
    long s = 0;
    for (const auto& t : e.terms()) s += t.mult * sgn(std::get<mpq_class>(t.rep.rep()));
    inv.signature = s;
  }
  if (k->kind() == FieldKind::Rationals) {
    // Virtual classes report P + <-1> N.
    std::vector<mpz_class> d = expand(e, false);
    for (const auto& x : expand(e, true)) d.push_back(-x);
    for (const auto& p : relevant_primes(d, {})) inv.hasse_witt[p] = hasse(d, p);
  }
  return inv;
}

GwElement simplify(const GwElement& e) {
  const Field& k = e.field();
  if (!k) return e;
  if (k->is_finite()) {
    // Rank and discriminant classify forms over finite fields.
    GwInvariants inv = invariants(e);
    GwElement out(k);
    bool trivial = inv.discriminant->rep.is_one();
    out.add_symbol(k->one(), trivial ? inv.rank : inv.rank - 1);
    if (!trivial) out.add_symbol(inv.discriminant->rep);
    return out;
  }
  GwElement out = e;
  for (int guard = 0; guard < 64; ++guard) {
    const auto& ts = out.terms();
    bool changed = false;
    for (std::size_t i = 0; i < ts.size() && !changed; ++i) {
      FieldElement c = ts[i].rep;
      SquareClass cc{c};
      if (k->same_class(cc, {k->one()}) == Tri::True || k->same_class(cc, {k->from_int(-1)}) == Tri::True)
        continue;
      SquareClass neg = k->square_class(k->neg(c));
      for (std::size_t j = 0; j < ts.size(); ++j) {
        if (k->same_class(neg, {ts[j].rep}) != Tri::True) continue;
        long a = ts[i].mult, b = ts[j].mult;
        long n;
        if (i == j)
          n = a / 2;
        else if ((a > 0) == (b > 0))
          n = (a > 0) ? std::min(a, b) : std::max(a, b);
        else
          n = 0;
        if (n == 0) break;
        GwElement delta(k);
        delta.add_symbol(c, -n);
        delta.add_symbol(k->neg(c), -n);
        out = out + delta + GwElement::hyperbolic(k, n);
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }
  return out;
}

namespace {

Tri equals_over_q(const GwElement& d) {
  std::vector<mpz_class> p = expand(d, false), n = expand(d, true);
  if (p.size() != n.size()) return Tri::False;
  long sp = 0, sn = 0;
  mpz_class dp = 1, dn = 1;
  for (const auto& x : p) {
    sp += sgn(x);
    dp *= x;
  }
  for (const auto& x : n) {
    sn += sgn(x);
    dn *= x;
  }
  if (sp != sn) return Tri::False;
  if (arith::squarefree_part(dp) != arith::squarefree_part(dn)) return Tri::False;
  for (const auto& prime : relevant_primes(p, n))
    if (hasse(p, prime) != hasse(n, prime)) return Tri::False;
  return Tri::True;
}

}  // namespace

Tri equals(const GwElement& e1, const GwElement& e2) {
  Field k = e1.field() ? e1.field() : e2.field();
  if (e1.field() && e2.field()) require_same(e1.field(), e2.field());
  GwElement d = simplify(e1 - e2);
  if (d.empty()) return Tri::True;
  if (d.rank() != 0) return Tri::False;
  if (k->kind() == FieldKind::Rationals) return equals_over_q(d);
  FieldElement disc = k->one();
  for (const auto& t : d.terms())
    if (t.mult % 2) disc = k->mul(disc, t.rep);
  Tri disc_ok = k->is_square(disc);
  if (k->is_finite()) return disc_ok;
  if (disc_ok == Tri::False) return Tri::False;
  if (k->kind() == FieldKind::Puiseux) {
    SpringerResidues r = springer_residues(d, false);
    long r2 = r.second.rank();
    if (r2 % 2 != 0) return Tri::False;
    Field base = k->base();
    return tri_and(equals(r.second, GwElement::hyperbolic(base, r2 / 2)),
                   equals(r.first, GwElement::hyperbolic(base, -r2 / 2)));
  }
  return Tri::Unknown;
}

// ---------------------------------------------------------------- transfer

Matrix transfer_gram(const FieldElement& a, const std::vector<FieldElement>& basis_in) {
  const Field& L = a.field();
  Field k = L->trace_base();
  if (!k) throw Error(ErrorCode::NotAnExtension, L->descriptor() + " has no trace base");
  std::vector<FieldElement> basis = basis_in.empty() ? L->trace_basis() : basis_in;
  std::size_t n = basis.size();
  Matrix g = zero_matrix(k, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      FieldElement x = L->mul(a, L->mul(L->coerce(basis[i]), L->coerce(basis[j])));
      g[i][j] = L->trace(x);
      g[j][i] = g[i][j];
    }
  return g;
}

namespace {

std::vector<Field> trace_chain(const Field& L, const Field& k) {
  std::vector<Field> chain{L};
  while (!same_field(chain.back(), k)) {
    Field next = chain.back()->trace_base();
    if (!next) throw Error(ErrorCode::NotAnExtension, k->descriptor() + " is not below " + L->descriptor());
    chain.push_back(next);
  }
  return chain;
}

}  // namespace

long extension_degree(const Field& L, const Field& k) {
  long d = 1;
  auto chain = trace_chain(L, k);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) d *= chain[i]->trace_degree();
  return d;
}

GwElement transfer(const GwElement& e, const Field& k) {
  auto chain = trace_chain(e.field(), k);
  GwElement cur = e;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    GwElement next(chain[i]);
    for (const auto& t : cur.terms()) next = next + diagonalize(chain[i], transfer_gram(t.rep)).scaled(t.mult);
    cur = next;
  }
  return cur;
}

// ---------------------------------------------------------------- Springer

SpringerResidues springer_residues(const GwElement& e, bool normalize) {
  const Field& k = e.field();
  if (k->kind() != FieldKind::Puiseux) throw Error(ErrorCode::InvalidField, "residues need a Puiseux field");
  Field base = k->base();
  SpringerResidues r{GwElement(base), GwElement(base)};
  for (const auto& t : e.terms()) {
    auto v = k->valuation(t.rep);
    if (!v) throw Error(ErrorCode::PrecisionExhausted, "valuation of a symbol is unknown");
    FieldElement c = k->leading_coefficient(t.rep);
    if (*v % 2 == 0)
      r.first.add_symbol(c, t.mult);
    else
      r.second.add_symbol(c, t.mult);
  }
  if (!normalize || r.second.empty()) return r;
  // <s c> + <-s c> = <1> + <-1>, so hyperbolic parts move to the first residue.
  r.second = simplify(r.second);
  long n2 = r.second.rank();
  if (n2 % 2 == 0 && equals(r.second, GwElement::hyperbolic(base, n2 / 2)) == Tri::True) {
    r.first = r.first + GwElement::hyperbolic(base, n2 / 2);
    r.second = GwElement(base);
    return r;
  }
  long plus = 0, minus = 0;
  for (const auto& t : r.second.terms()) {
    if (t.rep.is_one()) plus = t.mult;
    if (base->equal(t.rep, base->square_class(base->from_int(-1)).rep)) minus = t.mult;
  }
  long n = 0;
  if (plus > 0 && minus > 0) n = std::min(plus, minus);
  if (plus < 0 && minus < 0) n = std::max(plus, minus);
  if (n != 0) {
    r.second = r.second - GwElement::hyperbolic(base, n);
    r.first = r.first + GwElement::hyperbolic(base, n);
  }
  return r;
}

GwElement springer_reconstruct(const SpringerResidues& r, const Field& puiseux) {
  GwElement out(puiseux);
  FieldElement s = puiseux->generator();
  for (const auto& t : r.first.terms()) out.add_symbol(puiseux->coerce(t.rep), t.mult);
  for (const auto& t : r.second.terms()) out.add_symbol(puiseux->mul(s, puiseux->coerce(t.rep)), t.mult);
  return out;
}

}  // namespace a1
