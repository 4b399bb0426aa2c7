#include "a1/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "a1/arith.hpp"
#include "a1/upoly.hpp"

namespace a1 {

namespace {

const mpq_class& qv(const FieldElement& a) { return std::get<mpq_class>(a.rep()); }
std::int64_t pv(const FieldElement& a) { return std::get<std::int64_t>(a.rep()); }
const PolyRep& ev(const FieldElement& a) { return std::get<PolyRep>(a.rep()); }
const RatFuncRep& rv(const FieldElement& a) { return std::get<RatFuncRep>(a.rep()); }
const PuiseuxRep& sv(const FieldElement& a) { return std::get<PuiseuxRep>(a.rep()); }

std::int64_t mod_p(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t powmod(std::int64_t a, mpz_class e, std::int64_t p) {
  mpz_class r;
  mpz_class base(static_cast<long>(a)), m(static_cast<long>(p));
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r.get_si();
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a > 0) == (b > 0))) ++q;
  return q;
}

std::string strip_spaces(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

bool compound(const std::string& s) {
  return s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos;
}

}  // namespace

// ---------------------------------------------------------------- elements

FieldElement::FieldElement(Field field, Rep rep) : field_(std::move(field)), rep_(std::move(rep)) {}

bool FieldElement::is_zero() const { return field_->is_zero(*this); }

bool FieldElement::is_one() const { return field_->equal(*this, field_->one()); }

FieldElement FieldElement::operator-() const { return field_->neg(*this); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
  auto [a, b] = unify(*this, o);
  return a.field()->add(a, b);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  auto [a, b] = unify(*this, o);
  return a.field()->sub(a, b);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  auto [a, b] = unify(*this, o);
  return a.field()->mul(a, b);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  auto [a, b] = unify(*this, o);
  return a.field()->mul(a, a.field()->inv(b));
}

FieldElement FieldElement::inverse() const { return field_->inv(*this); }

FieldElement FieldElement::pow(const mpz_class& e) const { return field_->pow(*this, e); }

bool FieldElement::operator==(const FieldElement& o) const {
  if (!valid() || !o.valid()) return valid() == o.valid();
  if (!same_field(field_, o.field_)) {
    if (!field_->contains(o.field_) && !o.field_->contains(field_)) return false;
    auto [a, b] = unify(*this, o);
    return a.field()->equal(a, b);
  }
  return field_->equal(*this, o);
}

std::string FieldElement::str() const { return valid() ? field_->format(*this) : "<null>"; }

bool same_field(const Field& a, const Field& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  return a->key() == b->key();
}

Field residue_field(const Field& f) { return f->kind() == FieldKind::Puiseux ? f->base() : f; }

std::pair<FieldElement, FieldElement> unify(const FieldElement& a, const FieldElement& b) {
  if (same_field(a.field(), b.field())) return {a, b};
  if (a.field()->contains(b.field())) return {a, a.field()->coerce(b)};
  if (b.field()->contains(a.field())) return {b.field()->coerce(a), b};
  throw Error(ErrorCode::FieldMismatch, a.field()->descriptor() + " vs " + b.field()->descriptor());
}

// ---------------------------------------------------------------- construction

Field FieldNode::rationals() {
  static Field q = [] {
    auto f = std::shared_ptr<FieldNode>(new FieldNode());
    f->kind_ = FieldKind::Rationals;
    f->finish();
    return Field(f);
  }();
  return q;
}

Field FieldNode::prime(std::int64_t p) {
  if (p == 2) throw Error(ErrorCode::InvalidField, "characteristic 2 is not supported");
  if (p < 2 || !arith::is_prime(mpz_class(static_cast<long>(p))))
    throw Error(ErrorCode::InvalidField, std::to_string(p) + " is not prime");
  static std::mutex mu;
  static std::map<std::int64_t, Field> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  auto f = std::shared_ptr<FieldNode>(new FieldNode());
  f->kind_ = FieldKind::PrimeField;
  f->char_ = p;
  f->order_ = mpz_class(static_cast<long>(p));
  f->finish();
  cache.emplace(p, f);
  return f;
}

namespace {

bool name_in_tower(const Field& f, const std::string& name) {
  for (const FieldNode* n = f.get(); n; n = n->base().get()) {
    if (n->kind() == FieldKind::SimpleExtension || n->kind() == FieldKind::RationalFunctions)
      if (n->name() == name) return true;
    if (n->kind() == FieldKind::Puiseux && (name == "s" || name == "t")) return true;
  }
  return false;
}

}  // namespace

Field FieldNode::extension(const Field& base, const std::string& name, std::vector<FieldElement> minpoly) {
  if (!base) throw Error(ErrorCode::InvalidField, "missing base field");
  if (base->kind() == FieldKind::Puiseux)
    throw Error(ErrorCode::InvalidField, "extensions of a Puiseux field are not supported");
  if (name.empty() || name_in_tower(base, name))
    throw Error(ErrorCode::InvalidField, "generator name '" + name + "' is empty or already used");
  for (auto& c : minpoly) c = base->coerce(c);
  upoly::trim(minpoly);
  if (upoly::deg(minpoly) < 1) throw Error(ErrorCode::InvalidField, "minimal polynomial must have degree >= 1");
  if (!upoly::lead(minpoly).is_one()) throw Error(ErrorCode::InvalidField, "minimal polynomial must be monic");
  if (!upoly::is_one(upoly::gcd(base, minpoly, upoly::derivative(base, minpoly))))
    throw Error(ErrorCode::InvalidField, "minimal polynomial is not separable");
  if (upoly::is_irreducible(base, minpoly) == Tri::False)
    throw Error(ErrorCode::InvalidField,
                "minimal polynomial " + upoly::format(base, minpoly, name) + " is reducible");
  auto f = std::shared_ptr<FieldNode>(new FieldNode());
  f->kind_ = FieldKind::SimpleExtension;
  f->base_ = base;
  f->name_ = name;
  f->minpoly_ = std::move(minpoly);
  f->finish();
  return f;
}

Field FieldNode::rational_functions(const Field& base, const std::string& var) {
  if (!base) throw Error(ErrorCode::InvalidField, "missing base field");
  if (base->kind() == FieldKind::Puiseux)
    throw Error(ErrorCode::InvalidField, "rational functions over a Puiseux field are not supported");
  if (var.empty() || name_in_tower(base, var))
    throw Error(ErrorCode::InvalidField, "variable name '" + var + "' is empty or already used");
  auto f = std::shared_ptr<FieldNode>(new FieldNode());
  f->kind_ = FieldKind::RationalFunctions;
  f->base_ = base;
  f->name_ = var;
  f->finish();
  return f;
}

Field FieldNode::puiseux(const Field& base, int m, std::int64_t cap, std::optional<FieldElement> lambda) {
  if (!base) throw Error(ErrorCode::InvalidField, "missing base field");
  if (base->kind() == FieldKind::Puiseux || base->kind() == FieldKind::RationalFunctions)
    throw Error(ErrorCode::InvalidField, "Puiseux coefficients must be Q, F_p or a finite extension");
  if (m < 1) throw Error(ErrorCode::InvalidField, "ramification must be positive");
  if (cap < 1) throw Error(ErrorCode::InvalidField, "precision must be positive");
  if (base->characteristic() != 0 && m % base->characteristic() == 0)
    throw Error(ErrorCode::InvalidField, "characteristic divides the ramification");
  FieldElement lam = lambda ? base->coerce(*lambda) : base->one();
  if (lam.is_zero()) throw Error(ErrorCode::InvalidField, "twist must be nonzero");
  if (m == 1 && !lam.is_one()) throw Error(ErrorCode::InvalidField, "twist requires ramification > 1");
  auto f = std::shared_ptr<FieldNode>(new FieldNode());
  f->kind_ = FieldKind::Puiseux;
  f->base_ = base;
  f->m_ = m;
  f->cap_ = cap;
  f->lambda_ = lam;
  f->finish();
  return f;
}

Field FieldNode::finite_extension(const Field& base, int r, const std::string& name) {
  if (!base->is_finite()) throw Error(ErrorCode::InfiniteField, "base is not finite");
  if (r < 1) throw Error(ErrorCode::InvalidField, "degree must be positive");
  if (r == 1) return base;
  std::uint64_t q = base->order().get_ui();
  std::uint64_t total = 1;
  for (int i = 0; i < r; ++i) total *= q;
  for (std::uint64_t n = 0; n < total; ++n) {
    upoly::Coeffs c;
    std::uint64_t x = n;
    for (int i = 0; i < r; ++i) {
      c.push_back(base->element_at(x % q));
      x /= q;
    }
    c.push_back(base->one());
    if (upoly::is_irreducible(base, c) == Tri::True) return extension(base, name, c);
  }
  throw Error(ErrorCode::InvalidField, "no irreducible polynomial found");
}

void FieldNode::finish() {
  switch (kind_) {
    case FieldKind::Rationals:
      key_ = nested_key_ = "Q";
      char_ = 0;
      canonical_ = true;
      break;
    case FieldKind::PrimeField:
      key_ = nested_key_ = "F" + std::to_string(char_);
      canonical_ = true;
      break;
    case FieldKind::SimpleExtension: {
      std::string mp = strip_spaces(upoly::format(base_, minpoly_, name_));
      key_ = base_->nested_key_ + "(" + name_ + "):" + mp;
      nested_key_ = base_->nested_key_ + "(" + name_ + "):[" + mp + "]";
      char_ = base_->char_;
      if (base_->is_finite()) {
        mpz_pow_ui(order_.get_mpz_t(), base_->order_.get_mpz_t(), static_cast<unsigned long>(degree()));
        canonical_ = true;
      }
      // Power sums of the roots give Tr(alpha^k).
      const Field& k = base_;
      int d = degree();
      trace_powers_.assign(static_cast<std::size_t>(d), k->zero());
      trace_powers_[0] = k->from_int(d);
      for (int j = 1; j < d; ++j) {
        FieldElement acc = k->mul(k->from_int(j), minpoly_[static_cast<std::size_t>(d - j)]);
        for (int i = 1; i < j; ++i)
          acc = k->add(acc, k->mul(minpoly_[static_cast<std::size_t>(d - i)], trace_powers_[static_cast<std::size_t>(j - i)]));
        trace_powers_[static_cast<std::size_t>(j)] = k->neg(acc);
      }
      trace_base_ = base_;
      break;
    }
    case FieldKind::RationalFunctions:
      key_ = nested_key_ = base_->nested_key_ + "(" + name_ + ")";
      char_ = base_->char_;
      canonical_ = base_->canonical_ && (base_->kind_ == FieldKind::Rationals || base_->is_finite());
      break;
    case FieldKind::Puiseux: {
      std::string tail = ";" + std::to_string(m_) + ";" + std::to_string(cap_);
      if (!lambda_.is_one()) tail += ";" + strip_spaces(base_->format(lambda_));
      key_ = nested_key_ = base_->nested_key_ + "((t" + tail + "))";
      char_ = base_->char_;
      canonical_ = base_->canonical_;
      if (m_ > 1)
        trace_base_ = puiseux(base_, 1, cap_);
      else if (base_->kind_ == FieldKind::SimpleExtension)
        trace_base_ = puiseux(base_->base_, 1, cap_);
      break;
    }
  }
  if (is_finite()) {
    std::uint64_t q = order_.get_ui();
    for (std::uint64_t i = 1; i < q; ++i) {
      FieldElement x = element_at(i);
      if (is_square(x) == Tri::False) {
        nonresidue_ = x;
        break;
      }
    }
  }
}

// ---------------------------------------------------------------- constants

namespace {

void normalize_series(PuiseuxRep& r, std::int64_t cap) {
  r.prec = std::min(r.prec, cap);
  std::vector<std::int64_t> e;
  std::vector<FieldElement> c;
  for (std::size_t i = 0; i < r.exps.size(); ++i) {
    if (r.exps[i] >= r.prec || r.coeffs[i].is_zero()) continue;
    e.push_back(r.exps[i]);
    c.push_back(r.coeffs[i]);
  }
  r.exps = std::move(e);
  r.coeffs = std::move(c);
}

}  // namespace

FieldElement FieldNode::zero() const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rationals: return {self, mpq_class(0)};
    case FieldKind::PrimeField: return {self, std::int64_t{0}};
    case FieldKind::SimpleExtension: return {self, PolyRep{}};
    case FieldKind::RationalFunctions: return {self, RatFuncRep{{}, {base_->one()}}};
    case FieldKind::Puiseux: return {self, PuiseuxRep{{}, {}, cap_}};
  }
  return {};
}

FieldElement FieldNode::one() const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rationals: return {self, mpq_class(1)};
    case FieldKind::PrimeField: return {self, std::int64_t{1}};
    case FieldKind::SimpleExtension: return {self, PolyRep{{base_->one()}}};
    case FieldKind::RationalFunctions: return {self, RatFuncRep{{base_->one()}, {base_->one()}}};
    case FieldKind::Puiseux: return {self, PuiseuxRep{{0}, {base_->one()}, cap_}};
  }
  return {};
}

FieldElement FieldNode::from_int(long v) const { return from_mpz(mpz_class(v)); }

FieldElement FieldNode::from_mpz(const mpz_class& v) const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rationals: return {self, mpq_class(v)};
    case FieldKind::PrimeField: {
      mpz_class r = v % mpz_class(static_cast<long>(char_));
      if (r < 0) r += char_;
      return {self, static_cast<std::int64_t>(r.get_si())};
    }
    default: return coerce(base_->from_mpz(v));
  }
}

FieldElement FieldNode::from_rational(const mpq_class& v) const {
  switch (kind_) {
    case FieldKind::Rationals: return {shared_from_this(), v};
    case FieldKind::PrimeField: {
      if (v.get_den() % char_ == 0)
        throw Error(ErrorCode::CoefficientNotInField, v.get_str() + " has denominator divisible by " + key_);
      return mul(from_mpz(v.get_num()), inv(from_mpz(v.get_den())));
    }
    default: return coerce(base_->from_rational(v));
  }
}

FieldElement FieldNode::generator() const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::SimpleExtension: return from_coeffs({base_->zero(), base_->one()});
    case FieldKind::RationalFunctions: return {self, RatFuncRep{{base_->zero(), base_->one()}, {base_->one()}}};
    case FieldKind::Puiseux: return from_series({1}, {base_->one()}, cap_);
    default: throw Error(ErrorCode::InvalidField, key_ + " has no generator");
  }
}

FieldElement FieldNode::t() const {
  if (kind_ != FieldKind::Puiseux) throw Error(ErrorCode::InvalidField, key_ + " is not a Puiseux field");
  return from_series({m_}, {base_->inv(lambda_)}, cap_);
}

FieldElement FieldNode::from_coeffs(std::vector<FieldElement> coeffs) const {
  auto self = shared_from_this();
  for (auto& c : coeffs) c = base_->coerce(c);
  switch (kind_) {
    case FieldKind::SimpleExtension: {
      upoly::trim(coeffs);
      return {self, PolyRep{upoly::mod(base_, coeffs, minpoly_)}};
    }
    case FieldKind::RationalFunctions: {
      upoly::trim(coeffs);
      return {self, RatFuncRep{coeffs, {base_->one()}}};
    }
    case FieldKind::Puiseux: {
      std::vector<std::int64_t> e;
      for (std::size_t i = 0; i < coeffs.size(); ++i) e.push_back(static_cast<std::int64_t>(i));
      return from_series(std::move(e), std::move(coeffs), cap_);
    }
    default: throw Error(ErrorCode::InvalidField, key_ + " has no coefficient representation");
  }
}

FieldElement FieldNode::from_series(std::vector<std::int64_t> exps, std::vector<FieldElement> coeffs,
                                    std::int64_t prec) const {
  if (kind_ != FieldKind::Puiseux) throw Error(ErrorCode::InvalidField, key_ + " is not a Puiseux field");
  std::map<std::int64_t, FieldElement> acc;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    FieldElement c = base_->coerce(coeffs[i]);
    auto it = acc.find(exps[i]);
    if (it == acc.end())
      acc.emplace(exps[i], c);
    else
      it->second = base_->add(it->second, c);
  }
  PuiseuxRep r;
  r.prec = prec;
  for (auto& [e, c] : acc) {
    r.exps.push_back(e);
    r.coeffs.push_back(c);
  }
  normalize_series(r, cap_);
  return {shared_from_this(), std::move(r)};
}

// ---------------------------------------------------------------- coercion

bool FieldNode::contains(const Field& sub) const {
  if (!sub) return false;
  if (nested_key_ == sub->nested_key_) return true;
  if (sub->kind_ == FieldKind::Puiseux) {
    if (kind_ != FieldKind::Puiseux) return false;
    if (sub->m_ == m_ && same_field(sub->base_, base_) && base_->equal(sub->lambda_, lambda_)) return true;
    return sub->m_ == 1 && base_->contains(sub->base_);
  }
  switch (kind_) {
    case FieldKind::Rationals:
    case FieldKind::PrimeField: return false;
    default: return base_->contains(sub);
  }
}

FieldElement FieldNode::coerce(const FieldElement& a) const {
  if (!a.valid()) throw Error(ErrorCode::FieldMismatch, "null element");
  auto self = shared_from_this();
  if (a.field().get() == this || a.field()->nested_key_ == nested_key_) return {self, a.rep()};
  switch (kind_) {
    case FieldKind::Rationals:
    case FieldKind::PrimeField:
      throw Error(ErrorCode::FieldMismatch, a.field()->descriptor() + " does not embed in " + key_);
    case FieldKind::SimpleExtension: {
      FieldElement b = base_->coerce(a);
      if (b.is_zero()) return zero();
      return {self, PolyRep{{b}}};
    }
    case FieldKind::RationalFunctions: {
      FieldElement b = base_->coerce(a);
      if (b.is_zero()) return zero();
      return {self, RatFuncRep{{b}, {base_->one()}}};
    }
    case FieldKind::Puiseux: {
      const Field& af = a.field();
      if (af->kind_ == FieldKind::Puiseux) {
        const auto& r = sv(a);
        if (af->m_ == m_ && same_field(af->base_, base_) && base_->equal(af->lambda_, lambda_))
          return from_series(r.exps, r.coeffs, r.prec);
        if (af->m_ == 1 && base_->contains(af->base_)) {
          // t = lambda^{-1} s^m
          FieldElement li = base_->inv(lambda_);
          std::vector<std::int64_t> e;
          std::vector<FieldElement> c;
          for (std::size_t i = 0; i < r.exps.size(); ++i) {
            e.push_back(r.exps[i] * m_);
            c.push_back(base_->mul(base_->coerce(r.coeffs[i]), base_->pow(li, mpz_class(static_cast<long>(r.exps[i])))));
          }
          return from_series(std::move(e), std::move(c), r.prec * m_);
        }
        throw Error(ErrorCode::FieldMismatch, af->descriptor() + " does not embed in " + key_);
      }
      FieldElement b = base_->coerce(a);
      return from_series({0}, {b}, cap_);
    }
  }
  return {};
}

// ---------------------------------------------------------------- arithmetic

namespace {

RatFuncRep normalize_ratfunc(const Field& k, upoly::Coeffs num, upoly::Coeffs den) {
  upoly::trim(num);
  upoly::trim(den);
  if (den.empty()) throw Error(ErrorCode::ZeroInput, "division by zero");
  if (num.empty()) return {{}, {k->one()}};
  upoly::Coeffs g = upoly::gcd(k, num, den);
  if (!upoly::is_one(g)) {
    num = upoly::divmod(k, num, g).first;
    den = upoly::divmod(k, den, g).first;
  }
  FieldElement c = k->inv(upoly::lead(den));
  return {upoly::scale(k, c, num), upoly::scale(k, c, den)};
}

std::int64_t series_vlb(const PuiseuxRep& r) { return r.exps.empty() ? r.prec : r.exps[0]; }

}  // namespace

FieldElement FieldNode::add(const FieldElement& a, const FieldElement& b) const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rationals: return {self, mpq_class(qv(a) + qv(b))};
    case FieldKind::PrimeField: return {self, mod_p(pv(a) + pv(b), char_)};
    case FieldKind::SimpleExtension: return {self, PolyRep{upoly::add(base_, ev(a).c, ev(b).c)}};
    case FieldKind::RationalFunctions: {
      const auto &x = rv(a), &y = rv(b);
      if (x.num.empty()) return b;
      if (y.num.empty()) return a;
      upoly::Coeffs num = upoly::add(base_, upoly::mul(base_, x.num, y.den), upoly::mul(base_, y.num, x.den));
      return {self, normalize_ratfunc(base_, num, upoly::mul(base_, x.den, y.den))};
    }
    case FieldKind::Puiseux: {
      const auto &x = sv(a), &y = sv(b);
      std::vector<std::int64_t> e(x.exps);
      e.insert(e.end(), y.exps.begin(), y.exps.end());
      std::vector<FieldElement> c(x.coeffs);
      c.insert(c.end(), y.coeffs.begin(), y.coeffs.end());
      return from_series(std::move(e), std::move(c), std::min(x.prec, y.prec));
    }
  }
  return {};
}

FieldElement FieldNode::neg(const FieldElement& a) const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rationals: return {self, mpq_class(-qv(a))};
    case FieldKind::PrimeField: return {self, mod_p(-pv(a), char_)};
    case FieldKind::SimpleExtension: return {self, PolyRep{upoly::scale(base_, base_->from_int(-1), ev(a).c)}};
    case FieldKind::RationalFunctions: {
      const auto& x = rv(a);
      return {self, RatFuncRep{upoly::scale(base_, base_->from_int(-1), x.num), x.den}};
    }
    case FieldKind::Puiseux: {
      PuiseuxRep r = sv(a);
      for (auto& c : r.coeffs) c = base_->neg(c);
      return {self, r};
    }
  }
  return {};
}

FieldElement FieldNode::sub(const FieldElement& a, const FieldElement& b) const { return add(a, neg(b)); }

FieldElement FieldNode::mul(const FieldElement& a, const FieldElement& b) const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rationals: return {self, mpq_class(qv(a) * qv(b))};
    case FieldKind::PrimeField: return {self, mulmod(pv(a), pv(b), char_)};
    case FieldKind::SimpleExtension:
      return {self, PolyRep{upoly::mod(base_, upoly::mul(base_, ev(a).c, ev(b).c), minpoly_)}};
    case FieldKind::RationalFunctions: {
      const auto &x = rv(a), &y = rv(b);
      return {self, normalize_ratfunc(base_, upoly::mul(base_, x.num, y.num), upoly::mul(base_, x.den, y.den))};
    }
    case FieldKind::Puiseux: {
      const auto &x = sv(a), &y = sv(b);
      std::int64_t prec = std::min(x.prec + series_vlb(y), y.prec + series_vlb(x));
      prec = std::min(prec, cap_);
      std::map<std::int64_t, FieldElement> acc;
      for (std::size_t i = 0; i < x.exps.size(); ++i) {
        for (std::size_t j = 0; j < y.exps.size(); ++j) {
          std::int64_t e = x.exps[i] + y.exps[j];
          if (e >= prec) break;
          FieldElement p = base_->mul(x.coeffs[i], y.coeffs[j]);
          auto it = acc.find(e);
          if (it == acc.end())
            acc.emplace(e, p);
          else
            it->second = base_->add(it->second, p);
        }
      }
      PuiseuxRep r;
      r.prec = prec;
      for (auto& [e, c] : acc) {
        r.exps.push_back(e);
        r.coeffs.push_back(c);
      }
      normalize_series(r, cap_);
      return {self, std::move(r)};
    }
  }
  return {};
}

FieldElement FieldNode::inv(const FieldElement& a) const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rationals:
      if (sgn(qv(a)) == 0) throw Error(ErrorCode::ZeroInput, "inverse of 0");
      return {self, mpq_class(1 / qv(a))};
    case FieldKind::PrimeField: {
      if (pv(a) == 0) throw Error(ErrorCode::ZeroInput, "inverse of 0");
      return {self, powmod(pv(a), mpz_class(static_cast<long>(char_ - 2)), char_)};
    }
    case FieldKind::SimpleExtension: {
      if (ev(a).c.empty()) throw Error(ErrorCode::ZeroInput, "inverse of 0");
      upoly::Coeffs s, t;
      upoly::Coeffs g = upoly::ext_gcd(base_, ev(a).c, minpoly_, s, t);
      if (!upoly::is_one(g)) throw Error(ErrorCode::ZeroInput, "element is not invertible");
      return {self, PolyRep{upoly::mod(base_, s, minpoly_)}};
    }
    case FieldKind::RationalFunctions: {
      const auto& x = rv(a);
      if (x.num.empty()) throw Error(ErrorCode::ZeroInput, "inverse of 0");
      return {self, normalize_ratfunc(base_, x.den, x.num)};
    }
    case FieldKind::Puiseux: {
      const auto& x = sv(a);
      if (x.exps.empty())
        throw Error(ErrorCode::PrecisionExhausted, "inverse of a series that vanishes to known precision");
      std::int64_t v = x.exps[0];
      std::int64_t rel = x.prec - v;
      FieldElement cinv = base_->inv(x.coeffs[0]);
      std::vector<FieldElement> u(static_cast<std::size_t>(rel), base_->zero());
      for (std::size_t i = 0; i < x.exps.size(); ++i)
        u[static_cast<std::size_t>(x.exps[i] - v)] = base_->mul(x.coeffs[i], cinv);
      std::vector<FieldElement> w(static_cast<std::size_t>(rel), base_->zero());
      w[0] = base_->one();
      for (std::int64_t k = 1; k < rel; ++k) {
        FieldElement acc = base_->zero();
        for (std::int64_t j = 1; j <= k; ++j) {
          const auto& uj = u[static_cast<std::size_t>(j)];
          if (uj.is_zero()) continue;
          acc = base_->add(acc, base_->mul(uj, w[static_cast<std::size_t>(k - j)]));
        }
        w[static_cast<std::size_t>(k)] = base_->neg(acc);
      }
      std::vector<std::int64_t> e;
      std::vector<FieldElement> c;
      for (std::int64_t k = 0; k < rel; ++k) {
        e.push_back(k - v);
        c.push_back(base_->mul(cinv, w[static_cast<std::size_t>(k)]));
      }
      return from_series(std::move(e), std::move(c), x.prec - 2 * v);
    }
  }
  return {};
}

FieldElement FieldNode::pow(const FieldElement& a, const mpz_class& e) const {
  if (e < 0) return pow(inv(a), mpz_class(-e));
  if (kind_ == FieldKind::PrimeField) return {shared_from_this(), powmod(pv(a), e, char_)};
  FieldElement result = one();
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, a);
  }
  return result;
}

bool FieldNode::is_zero(const FieldElement& a) const {
  switch (kind_) {
    case FieldKind::Rationals: return sgn(qv(a)) == 0;
    case FieldKind::PrimeField: return pv(a) == 0;
    case FieldKind::SimpleExtension: return ev(a).c.empty();
    case FieldKind::RationalFunctions: return rv(a).num.empty();
    case FieldKind::Puiseux: return sv(a).exps.empty();
  }
  return false;
}

namespace {

bool coeffs_equal(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].field()->equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

bool FieldNode::equal(const FieldElement& a, const FieldElement& b) const {
  switch (kind_) {
    case FieldKind::Rationals: return qv(a) == qv(b);
    case FieldKind::PrimeField: return pv(a) == pv(b);
    case FieldKind::SimpleExtension: return coeffs_equal(ev(a).c, ev(b).c);
    case FieldKind::RationalFunctions:
      return coeffs_equal(rv(a).num, rv(b).num) && coeffs_equal(rv(a).den, rv(b).den);
    case FieldKind::Puiseux: {
      // Agreement on the common known range.
      const auto &x = sv(a), &y = sv(b);
      std::int64_t p = std::min(x.prec, y.prec);
      std::size_t nx = 0, ny = 0;
      while (nx < x.exps.size() && x.exps[nx] < p) ++nx;
      while (ny < y.exps.size() && y.exps[ny] < p) ++ny;
      if (nx != ny) return false;
      for (std::size_t i = 0; i < nx; ++i)
        if (x.exps[i] != y.exps[i] || !base_->equal(x.coeffs[i], y.coeffs[i])) return false;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------- squares

namespace {

// Determinant over k by elimination; matrix consumed.
FieldElement det_over(const Field& k, std::vector<std::vector<FieldElement>> m) {
  std::size_t n = m.size();
  FieldElement det = k->one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return k->zero();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = k->neg(det);
    }
    det = k->mul(det, m[c][c]);
    FieldElement inv = k->inv(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      FieldElement f = k->mul(m[r][c], inv);
      for (std::size_t j = c; j < n; ++j) m[r][j] = k->sub(m[r][j], k->mul(f, m[c][j]));
    }
  }
  return det;
}

}  // namespace

Tri FieldNode::is_square(const FieldElement& a) const {
  if (is_zero(a)) throw Error(ErrorCode::ZeroInput, "square test of 0");
  if (is_finite()) {
    if (kind_ == FieldKind::PrimeField)
      return arith::legendre(mpz_class(static_cast<long>(pv(a))), order_) == 1 ? Tri::True : Tri::False;
    return equal(pow(a, (order_ - 1) / 2), one()) ? Tri::True : Tri::False;
  }
  switch (kind_) {
    case FieldKind::Rationals: return arith::rational_sqrt(qv(a)) ? Tri::True : Tri::False;
    case FieldKind::SimpleExtension: {
      // N(b^2) = N(b)^2, so a nonsquare norm rules out a square.
      int d = degree();
      std::vector<std::vector<FieldElement>> mat(static_cast<std::size_t>(d));
      FieldElement col = a;
      FieldElement alpha = generator();
      for (int j = 0; j < d; ++j) {
        const auto& c = ev(col).c;
        for (int i = 0; i < d; ++i)
          mat[static_cast<std::size_t>(i)].push_back(static_cast<std::size_t>(i) < c.size() ? c[static_cast<std::size_t>(i)] : base_->zero());
        col = mul(col, alpha);
      }
      if (base_->is_square(det_over(base_, mat)) == Tri::False) return Tri::False;
      if (d == 1) return base_->is_square(ev(a).c.empty() ? base_->zero() : ev(a).c[0]);
      if (d != 2) return Tri::Unknown;
      try {
        return sqrt(a) ? Tri::True : Tri::False;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Unsupported) return Tri::Unknown;
        throw;
      }
    }
    case FieldKind::RationalFunctions: {
      if (!(base_->characteristic() == 0 || base_->is_finite())) return Tri::Unknown;
      const auto& x = rv(a);
      upoly::Coeffs p = upoly::mul(base_, x.num, x.den);
      FieldElement lc = upoly::lead(p);
      for (const auto& [f, mult] : upoly::squarefree(base_, upoly::monic(base_, p)))
        if (mult % 2 == 1) return Tri::False;
      return base_->is_square(lc);
    }
    case FieldKind::Puiseux: {
      const auto& x = sv(a);
      if (x.exps.empty()) throw Error(ErrorCode::PrecisionExhausted, "leading term unknown");
      if (x.exps[0] % 2 != 0) return Tri::False;
      return base_->is_square(x.coeffs[0]);
    }
    default: return Tri::Unknown;
  }
}

SquareClass FieldNode::square_class(const FieldElement& a) const {
  if (is_zero(a)) throw Error(ErrorCode::ZeroInput, "square class of 0");
  auto self = shared_from_this();
  if (is_finite()) return {is_square(a) == Tri::True ? one() : nonresidue_};
  switch (kind_) {
    case FieldKind::Rationals: {
      const mpq_class& q = qv(a);
      return {FieldElement(self, mpq_class(arith::squarefree_part(q.get_num() * q.get_den())))};
    }
    case FieldKind::RationalFunctions: {
      if (!(base_->characteristic() == 0 || base_->is_finite())) return {a};
      const auto& x = rv(a);
      upoly::Coeffs p = upoly::mul(base_, x.num, x.den);
      FieldElement lc = upoly::lead(p);
      upoly::Coeffs odd{base_->one()};
      for (const auto& [f, mult] : upoly::squarefree(base_, upoly::monic(base_, p)))
        if (mult % 2 == 1) odd = upoly::mul(base_, odd, f);
      FieldElement c = base_->square_class(lc).rep;
      return {FieldElement(self, RatFuncRep{upoly::scale(base_, c, odd), {base_->one()}})};
    }
    case FieldKind::Puiseux: {
      const auto& x = sv(a);
      if (x.exps.empty()) throw Error(ErrorCode::PrecisionExhausted, "leading term unknown");
      std::int64_t parity = ((x.exps[0] % 2) + 2) % 2;
      FieldElement c = base_->square_class(x.coeffs[0]).rep;
      return {from_series({parity}, {c}, cap_)};
    }
    default: return {a};
  }
}

Tri FieldNode::same_class(const SquareClass& a, const SquareClass& b) const {
  FieldElement x = coerce(a.rep), y = coerce(b.rep);
  if (canonical_) return equal(x, y) ? Tri::True : Tri::False;
  return is_square(mul(x, inv(y)));
}

namespace {

std::optional<FieldElement> tonelli_shanks(const FieldNode& k, const FieldElement& a) {
  if (k.is_square(a) != Tri::True) return std::nullopt;
  mpz_class q1 = k.order() - 1;
  unsigned long s = 0;
  while (mpz_even_p(q1.get_mpz_t())) {
    q1 /= 2;
    ++s;
  }
  FieldElement z = k.pow(k.nonresidue(), q1);
  FieldElement x = k.pow(a, (q1 + 1) / 2);
  FieldElement b = k.pow(a, q1);
  unsigned long m = s;
  while (!k.equal(b, k.one())) {
    unsigned long i = 0;
    FieldElement bb = b;
    while (!k.equal(bb, k.one())) {
      bb = k.mul(bb, bb);
      ++i;
    }
    FieldElement g = z;
    for (unsigned long j = 0; j + 1 < m - i; ++j) g = k.mul(g, g);
    x = k.mul(x, g);
    z = k.mul(g, g);
    b = k.mul(b, z);
    m = i;
  }
  return x;
}

}  // namespace

std::optional<FieldElement> FieldNode::sqrt(const FieldElement& a) const {
  auto self = shared_from_this();
  if (is_zero(a)) return a;
  if (is_finite()) return tonelli_shanks(*this, a);
  switch (kind_) {
    case FieldKind::Rationals: {
      auto r = arith::rational_sqrt(qv(a));
      if (!r) return std::nullopt;
      return FieldElement(self, *r);
    }
    case FieldKind::SimpleExtension: {
      if (degree() != 2) throw Error(ErrorCode::Unsupported, "square roots in extensions of degree > 2");
      // beta = alpha + b/2 with beta^2 = D; a = u + v*beta.
      const Field& k = base_;
      FieldElement b = minpoly_[1], c = minpoly_[0];
      FieldElement half = k->inv(k->from_int(2));
      FieldElement bh = k->mul(b, half);
      FieldElement D = k->sub(k->mul(bh, bh), c);
      const auto& co = ev(a).c;
      FieldElement a0 = co.size() > 0 ? co[0] : k->zero();
      FieldElement a1 = co.size() > 1 ? co[1] : k->zero();
      FieldElement u = k->sub(a0, k->mul(a1, bh)), v = a1;
      FieldElement beta = add(generator(), coerce(bh));
      if (v.is_zero()) {
        if (auto r = k->sqrt(u)) return coerce(*r);
        if (auto r = k->sqrt(k->mul(u, k->inv(D)))) return mul(coerce(*r), beta);
        return std::nullopt;
      }
      FieldElement n = k->sub(k->mul(u, u), k->mul(k->mul(v, v), D));
      auto r = k->sqrt(n);
      if (!r) return std::nullopt;
      for (const FieldElement& eps : {*r, k->neg(*r)}) {
        FieldElement p2 = k->mul(k->add(u, eps), half);
        if (p2.is_zero()) continue;
        auto p = k->sqrt(p2);
        if (!p) continue;
        FieldElement qq = k->mul(v, k->inv(k->mul(k->from_int(2), *p)));
        return add(coerce(*p), mul(coerce(qq), beta));
      }
      return std::nullopt;
    }
    case FieldKind::Puiseux: {
      const auto& x = sv(a);
      if (x.exps.empty()) throw Error(ErrorCode::PrecisionExhausted, "leading term unknown");
      std::int64_t v = x.exps[0];
      if (v % 2 != 0) return std::nullopt;
      auto c0 = base_->sqrt(x.coeffs[0]);
      if (!c0) return std::nullopt;
      std::int64_t rel = x.prec - v;
      FieldElement cinv = base_->inv(x.coeffs[0]);
      std::vector<FieldElement> u(static_cast<std::size_t>(rel), base_->zero());
      for (std::size_t i = 0; i < x.exps.size(); ++i)
        u[static_cast<std::size_t>(x.exps[i] - v)] = base_->mul(x.coeffs[i], cinv);
      std::vector<FieldElement> y(static_cast<std::size_t>(rel), base_->zero());
      y[0] = base_->one();
      FieldElement half = base_->inv(base_->from_int(2));
      for (std::int64_t k = 1; k < rel; ++k) {
        FieldElement acc = u[static_cast<std::size_t>(k)];
        for (std::int64_t j = 1; j < k; ++j)
          acc = base_->sub(acc, base_->mul(y[static_cast<std::size_t>(j)], y[static_cast<std::size_t>(k - j)]));
        y[static_cast<std::size_t>(k)] = base_->mul(acc, half);
      }
      std::vector<std::int64_t> e;
      std::vector<FieldElement> c;
      for (std::int64_t k = 0; k < rel; ++k) {
        e.push_back(k + v / 2);
        c.push_back(base_->mul(*c0, y[static_cast<std::size_t>(k)]));
      }
      return from_series(std::move(e), std::move(c), rel + v / 2);
    }
    default: throw Error(ErrorCode::Unsupported, "square roots in " + key_);
  }
}

// ---------------------------------------------------------------- trace

Field FieldNode::trace_base() const { return trace_base_; }

int FieldNode::trace_degree() const {
  if (kind_ == FieldKind::SimpleExtension) return degree();
  if (kind_ == FieldKind::Puiseux) {
    if (m_ > 1) return m_;
    if (base_->kind_ == FieldKind::SimpleExtension) return base_->degree();
  }
  return 0;
}

std::vector<FieldElement> FieldNode::trace_basis() const {
  std::vector<FieldElement> out;
  if (kind_ == FieldKind::SimpleExtension) {
    FieldElement p = one(), g = generator();
    for (int i = 0; i < degree(); ++i) {
      out.push_back(p);
      p = mul(p, g);
    }
  } else if (kind_ == FieldKind::Puiseux && m_ > 1) {
    for (int i = 0; i < m_; ++i) out.push_back(from_series({i}, {base_->one()}, cap_));
  } else if (kind_ == FieldKind::Puiseux && base_->kind_ == FieldKind::SimpleExtension) {
    for (const auto& b : base_->trace_basis()) out.push_back(coerce(b));
  } else {
    throw Error(ErrorCode::NotAnExtension, key_ + " has no trace base");
  }
  return out;
}

FieldElement FieldNode::trace(const FieldElement& a_in) const {
  if (!trace_base_) throw Error(ErrorCode::NotAnExtension, key_ + " has no trace base");
  FieldElement a = coerce(a_in);
  if (kind_ == FieldKind::SimpleExtension) {
    FieldElement acc = base_->zero();
    const auto& c = ev(a).c;
    for (std::size_t i = 0; i < c.size(); ++i) acc = base_->add(acc, base_->mul(c[i], trace_powers_[i]));
    return acc;
  }
  const auto& x = sv(a);
  std::vector<std::int64_t> e;
  std::vector<FieldElement> c;
  if (m_ > 1) {
    FieldElement mm = base_->from_int(m_);
    for (std::size_t i = 0; i < x.exps.size(); ++i) {
      if (x.exps[i] % m_ != 0) continue;
      std::int64_t j = x.exps[i] / m_;
      e.push_back(j);
      c.push_back(base_->mul(mm, base_->mul(x.coeffs[i], base_->pow(lambda_, mpz_class(static_cast<long>(j))))));
    }
    return trace_base_->from_series(std::move(e), std::move(c), ceil_div(x.prec, m_));
  }
  for (std::size_t i = 0; i < x.exps.size(); ++i) {
    e.push_back(x.exps[i]);
    c.push_back(base_->trace(x.coeffs[i]));
  }
  return trace_base_->from_series(std::move(e), std::move(c), x.prec);
}

// ---------------------------------------------------------------- enumeration

std::uint64_t FieldNode::index(const FieldElement& a) const {
  if (!is_finite()) throw Error(ErrorCode::InfiniteField, key_ + " is infinite");
  if (kind_ == FieldKind::PrimeField) return static_cast<std::uint64_t>(pv(a));
  std::uint64_t q = base_->order().get_ui();
  std::uint64_t out = 0;
  const auto& c = ev(a).c;
  for (std::size_t i = c.size(); i-- > 0;) out = out * q + base_->index(c[i]);
  return out;
}

FieldElement FieldNode::element_at(std::uint64_t i) const {
  if (!is_finite()) throw Error(ErrorCode::InfiniteField, key_ + " is infinite");
  auto self = shared_from_this();
  if (kind_ == FieldKind::PrimeField) return {self, static_cast<std::int64_t>(i)};
  std::uint64_t q = base_->order().get_ui();
  upoly::Coeffs c;
  for (int j = 0; j < degree(); ++j) {
    c.push_back(base_->element_at(i % q));
    i /= q;
  }
  upoly::trim(c);
  return {self, PolyRep{c}};
}

std::vector<FieldElement> FieldNode::enumerate(std::uint64_t bound) const {
  if (!is_finite()) throw Error(ErrorCode::InfiniteField, key_ + " is infinite");
  if (order_ > bound) throw Error(ErrorCode::InfiniteField, key_ + " exceeds the enumeration bound");
  std::vector<FieldElement> out;
  std::uint64_t q = order_.get_ui();
  out.reserve(q);
  for (std::uint64_t i = 0; i < q; ++i) out.push_back(element_at(i));
  return out;
}

// ---------------------------------------------------------------- series accessors

std::optional<std::int64_t> FieldNode::valuation(const FieldElement& a) const {
  const auto& x = sv(a);
  if (x.exps.empty()) return std::nullopt;
  return x.exps[0];
}

FieldElement FieldNode::leading_coefficient(const FieldElement& a) const {
  const auto& x = sv(a);
  if (x.exps.empty()) throw Error(ErrorCode::PrecisionExhausted, "leading term unknown");
  return x.coeffs[0];
}

std::int64_t FieldNode::precision(const FieldElement& a) const { return sv(a).prec; }

FieldElement FieldNode::exact(const FieldElement& a) const {
  const auto& x = sv(a);
  return from_series(x.exps, x.coeffs, cap_);
}

// ---------------------------------------------------------------- formatting

namespace {

std::string exponent_str(std::int64_t num, std::int64_t den) {
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  num /= g;
  den /= g;
  if (den == 1) return num == 1 ? "" : (num < 0 ? "^(" + std::to_string(num) + ")" : "^" + std::to_string(num));
  return "^(" + std::to_string(num) + "/" + std::to_string(den) + ")";
}

}  // namespace

std::string FieldNode::format(const FieldElement& a) const {
  switch (kind_) {
    case FieldKind::Rationals: return qv(a).get_str();
    case FieldKind::PrimeField: {
      std::int64_t v = pv(a);
      if (v > char_ / 2) v -= char_;
      return std::to_string(v);
    }
    case FieldKind::SimpleExtension: return upoly::format(base_, ev(a).c, name_);
    case FieldKind::RationalFunctions: {
      const auto& x = rv(a);
      std::string n = upoly::format(base_, x.num, name_);
      if (upoly::is_one(x.den)) return n;
      return "(" + n + ")/(" + upoly::format(base_, x.den, name_) + ")";
    }
    case FieldKind::Puiseux: {
      const auto& x = sv(a);
      if (x.exps.empty()) return "0";
      std::string out;
      bool twisted = !lambda_.is_one();
      for (std::size_t i = 0; i < x.exps.size(); ++i) {
        std::int64_t e = x.exps[i];
        std::string mono;
        if (e != 0) mono = twisted ? "s" + exponent_str(e, 1) : "t" + exponent_str(e, m_);
        std::string c = base_->format(x.coeffs[i]);
        std::string term;
        if (mono.empty())
          term = compound(c) ? "(" + c + ")" : c;
        else if (c == "1")
          term = mono;
        else if (c == "-1")
          term = "-" + mono;
        else
          term = (compound(c) ? "(" + c + ")" : c) + "*" + mono;
        if (out.empty())
          out = term;
        else if (term[0] == '-')
          out += " - " + term.substr(1);
        else
          out += " + " + term;
      }
      return out;
    }
  }
  return {};
}

}  // namespace a1
