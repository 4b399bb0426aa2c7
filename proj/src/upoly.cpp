#include "a1/upoly.hpp"

#include <algorithm>
#include <set>

#include "a1/arith.hpp"

namespace a1::upoly {

void trim(Coeffs& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int deg(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

const FieldElement& lead(const Coeffs& a) { return a.back(); }

bool is_one(const Coeffs& a) { return a.size() == 1 && a[0].is_one(); }

Coeffs add(const Field& k, const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::max(a.size(), b.size()), k->zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = k->add(out[i], b[i]);
  trim(out);
  return out;
}

Coeffs sub(const Field& k, const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::max(a.size(), b.size()), k->zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = k->sub(out[i], b[i]);
  trim(out);
  return out;
}

Coeffs mul(const Field& k, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, k->zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = k->add(out[i + j], k->mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

Coeffs scale(const Field& k, const FieldElement& c, const Coeffs& a) {
  Coeffs out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(k->mul(c, x));
  trim(out);
  return out;
}

std::pair<Coeffs, Coeffs> divmod(const Field& k, const Coeffs& a, const Coeffs& b) {
  if (b.empty()) throw Error(ErrorCode::ZeroInput, "polynomial division by zero");
  Coeffs r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  Coeffs q(r.size() - b.size() + 1, k->zero());
  FieldElement inv_lead = k->inv(lead(b));
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    FieldElement c = k->mul(lead(r), inv_lead);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = k->sub(r[shift + j], k->mul(c, b[j]));
    r.pop_back();
    trim(r);
  }
  trim(q);
  return {q, r};
}

Coeffs mod(const Field& k, const Coeffs& a, const Coeffs& b) { return divmod(k, a, b).second; }

Coeffs monic(const Field& k, const Coeffs& a) {
  if (a.empty()) return a;
  return scale(k, k->inv(lead(a)), a);
}

Coeffs gcd(const Field& k, const Coeffs& a_in, const Coeffs& b_in) {
  Coeffs a = a_in, b = b_in;
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = mod(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(k, a);
}

Coeffs ext_gcd(const Field& k, const Coeffs& a_in, const Coeffs& b_in, Coeffs& s, Coeffs& t) {
  Coeffs r0 = a_in, r1 = b_in;
  trim(r0);
  trim(r1);
  Coeffs s0{k->one()}, s1{}, t0{}, t1{k->one()};
  while (!r1.empty()) {
    auto [q, r] = divmod(k, r0, r1);
    Coeffs s2 = sub(k, s0, mul(k, q, s1));
    Coeffs t2 = sub(k, t0, mul(k, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = {};
    t = {};
    return r0;
  }
  FieldElement c = k->inv(lead(r0));
  s = scale(k, c, s0);
  t = scale(k, c, t0);
  return scale(k, c, r0);
}

Coeffs derivative(const Field& k, const Coeffs& a) {
  Coeffs out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(k->mul(k->from_int(static_cast<long>(i)), a[i]));
  trim(out);
  return out;
}

Coeffs powmod(const Field& k, const Coeffs& a, const mpz_class& e, const Coeffs& m) {
  Coeffs result{k->one()};
  Coeffs base = mod(k, a, m);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(k, mul(k, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(k, mul(k, result, base), m);
  }
  if (e == 0) return mod(k, result, m);
  return result;
}

FieldElement eval(const Field& k, const Coeffs& a, const FieldElement& x) {
  FieldElement acc = x.field()->zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + x.field()->coerce(a[i]);
  (void)k;
  return acc;
}

Coeffs x_power(const Field& k, int n) {
  Coeffs out(static_cast<std::size_t>(n) + 1, k->zero());
  out[static_cast<std::size_t>(n)] = k->one();
  return out;
}

namespace {

std::vector<int> prime_factors_small(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

Tri rabin(const Field& k, const Coeffs& f_in) {
  Coeffs f = monic(k, f_in);
  int n = deg(f);
  if (n <= 0) return Tri::False;
  if (n == 1) return Tri::True;
  const mpz_class& q = k->order();
  Coeffs x = x_power(k, 1);
  for (int r : prime_factors_small(n)) {
    mpz_class e;
    mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n / r));
    Coeffs h = sub(k, powmod(k, x, e, f), x);
    if (!is_one(gcd(k, h, f))) return Tri::False;
  }
  mpz_class e;
  mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
  return sub(k, powmod(k, x, e, f), x).empty() ? Tri::True : Tri::False;
}

// Degrees of the irreducible factors of a squarefree monic f over F_p.
std::vector<int> ddf_pattern(const Field& k, Coeffs f) {
  std::vector<int> out;
  Coeffs x = x_power(k, 1);
  Coeffs h = x;
  for (int i = 1; 2 * i <= deg(f); ++i) {
    h = powmod(k, h, k->order(), f);
    Coeffs g = gcd(k, sub(k, h, x), f);
    int gd = deg(g);
    for (int j = 0; j < gd / i; ++j) out.push_back(i);
    if (gd > 0) {
      f = divmod(k, f, g).first;
      h = mod(k, h, f);
    }
  }
  if (deg(f) > 0) out.push_back(deg(f));
  return out;
}

bool has_rational_root(const Coeffs& f) {
  // f monic over Q; y = D x makes it integral and monic.
  int n = deg(f);
  mpz_class d = 1;
  for (const auto& c : f) {
    const auto& q = std::get<mpq_class>(c.rep());
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<mpz_class> g(static_cast<std::size_t>(n) + 1);
  mpz_class dp = 1;
  for (int i = n; i >= 0; --i) {
    mpq_class v = std::get<mpq_class>(f[static_cast<std::size_t>(i)].rep()) * mpq_class(dp);
    v.canonicalize();
    g[static_cast<std::size_t>(i)] = v.get_num();
    dp *= d;
  }
  if (g[0] == 0) return true;
  auto eval_int = [&](const mpz_class& y) {
    mpz_class acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * y + g[static_cast<std::size_t>(i)];
    return acc;
  };
  std::vector<mpz_class> divisors{1};
  for (const auto& [p, e] : arith::factor(g[0])) {
    std::size_t sz = divisors.size();
    mpz_class pk = 1;
    for (int j = 1; j <= e; ++j) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) divisors.push_back(divisors[i] * pk);
    }
  }
  for (const auto& dv : divisors)
    if (eval_int(dv) == 0 || eval_int(-dv) == 0) return true;
  return false;
}

Tri irreducible_over_q(const Field& k, const Coeffs& f_in) {
  Coeffs f = monic(k, f_in);
  int n = deg(f);
  if (n <= 0) return Tri::False;
  if (n == 1) return Tri::True;
  if (has_rational_root(f)) return Tri::False;
  if (n <= 3) return Tri::True;
  std::set<int> possible;
  for (int i = 0; i <= n; ++i) possible.insert(i);
  int tried = 0;
  for (long p = 3; tried < 24 && p < 2000; p += 2) {
    if (!arith::is_prime(p)) continue;
    Field fp = FieldNode::prime(p);
    Coeffs fr;
    bool ok = true;
    for (const auto& c : f) {
      const auto& q = std::get<mpq_class>(c.rep());
      if (q.get_den() % p == 0) {
        ok = false;
        break;
      }
      fr.push_back(fp->from_rational(q));
    }
    if (!ok) continue;
    if (!is_one(gcd(fp, fr, derivative(fp, fr)))) continue;
    ++tried;
    std::set<int> sums{0};
    for (int d : ddf_pattern(fp, fr)) {
      std::set<int> next = sums;
      for (int s : sums) next.insert(s + d);
      sums = std::move(next);
    }
    std::set<int> keep;
    for (int s : possible)
      if (sums.count(s)) keep.insert(s);
    possible = std::move(keep);
    if (possible.size() == 2) return Tri::True;
  }
  return Tri::Unknown;
}

}  // namespace

Tri is_irreducible(const Field& k, const Coeffs& a) {
  if (k->is_finite()) return rabin(k, a);
  if (k->kind() == FieldKind::Rationals) return irreducible_over_q(k, a);
  if (deg(a) == 1) return Tri::True;
  return Tri::Unknown;
}

namespace {

Coeffs pth_root(const Field& k, const Coeffs& a) {
  long p = k->characteristic();
  mpz_class e = k->order() / p;
  Coeffs out;
  for (std::size_t i = 0; i < a.size(); i += static_cast<std::size_t>(p)) out.push_back(k->pow(a[i], e));
  trim(out);
  return out;
}

}  // namespace

std::vector<std::pair<Coeffs, int>> squarefree(const Field& k, const Coeffs& a_in) {
  std::vector<std::pair<Coeffs, int>> out;
  Coeffs a = monic(k, a_in);
  if (deg(a) <= 0) return out;
  Coeffs c = gcd(k, a, derivative(k, a));
  Coeffs w = divmod(k, a, c).first;
  int i = 1;
  while (deg(w) > 0) {
    Coeffs y = gcd(k, w, c);
    Coeffs fac = divmod(k, w, y).first;
    if (deg(fac) > 0) out.emplace_back(fac, i);
    w = y;
    c = divmod(k, c, y).first;
    ++i;
  }
  if (deg(c) > 0) {
    if (k->characteristic() == 0 || !k->is_finite())
      throw Error(ErrorCode::Unsupported, "squarefree decomposition over this base");
    int p = static_cast<int>(k->characteristic());
    for (auto& [f, m] : squarefree(k, pth_root(k, c))) out.emplace_back(f, m * p);
  }
  return out;
}

std::string format(const Field& k, const Coeffs& a, const std::string& var) {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i].is_zero()) continue;
    std::string c = k->format(a[i]);
    bool compound = c.find(" + ") != std::string::npos || c.find(" - ") != std::string::npos;
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    std::string term;
    if (i == 0) {
      term = c;
    } else if (c == "1") {
      term = mono;
    } else if (c == "-1") {
      term = "-" + mono;
    } else {
      term = (compound ? "(" + c + ")" : c) + "*" + mono;
    }
    if (i == 0 && compound && !out.empty()) term = "(" + term + ")";
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace a1::upoly
