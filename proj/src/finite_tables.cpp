#include "a1/finite_tables.hpp"

#include <map>
#include <mutex>

#include "a1/arith.hpp"

namespace a1 {

std::shared_ptr<const FiniteFieldTables> FiniteFieldTables::get(const Field& k) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const FiniteFieldTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[k->key()];
  if (!slot) slot = std::make_shared<const FiniteFieldTables>(k);
  return slot;
}

FiniteFieldTables::FiniteFieldTables(Field k) : field_(std::move(k)) {
  if (!field_->is_finite()) throw Error(ErrorCode::InfiniteField, field_->descriptor());
  if (field_->order() > 1000000) throw Error(ErrorCode::Unsupported, "field too large for tables");
  q_ = static_cast<std::uint32_t>(field_->order().get_ui());
  std::uint32_t n = q_ - 1;
  std::vector<mpz_class> cofactors;
  for (const auto& p : arith::prime_divisors(n)) cofactors.push_back(n / p);
  FieldElement g;
  for (std::uint64_t i = 1; i < q_; ++i) {
    FieldElement c = field_->element_at(i);
    if (c.is_zero()) continue;
    bool primitive = true;
    for (const auto& e : cofactors)
      if (field_->pow(c, e).is_one()) {
        primitive = false;
        break;
      }
    if (primitive) {
      g = c;
      break;
    }
  }
  by_index_.assign(q_, 0);
  index_.assign(q_, 0);
  elements_.assign(q_, field_->zero());
  elements_[0] = field_->zero();
  index_[0] = field_->index(elements_[0]);
  by_index_[index_[0]] = 0;
  FieldElement cur = field_->one();
  for (std::uint32_t e = 0; e < n; ++e) {
    elements_[e + 1] = cur;
    index_[e + 1] = field_->index(cur);
    by_index_[index_[e + 1]] = e + 1;
    cur = field_->mul(cur, g);
  }
  zech_.assign(n, -1);
  FieldElement one = field_->one();
  for (std::uint32_t e = 0; e < n; ++e) {
    Elt s = by_index_[field_->index(field_->add(one, elements_[e + 1]))];
    zech_[e] = s == 0 ? -1 : static_cast<std::int64_t>(s) - 1;
  }
}

FiniteFieldTables::Elt FiniteFieldTables::add(Elt a, Elt b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  std::uint32_t n = q_ - 1;
  std::uint32_t la = a - 1, lb = b - 1;
  std::uint32_t d = (lb + n - la) % n;
  std::int64_t z = zech_[d];
  if (z < 0) return 0;
  return static_cast<Elt>((la + static_cast<std::uint32_t>(z)) % n) + 1;
}

FiniteFieldTables::Elt FiniteFieldTables::neg(Elt a) const {
  if (a == 0) return 0;
  std::uint32_t n = q_ - 1;
  return (a - 1 + n / 2) % n + 1;
}

FiniteFieldTables::Elt FiniteFieldTables::mul(Elt a, Elt b) const {
  if (a == 0 || b == 0) return 0;
  std::uint32_t n = q_ - 1;
  return static_cast<Elt>((static_cast<std::uint64_t>(a - 1) + (b - 1)) % n) + 1;
}

FiniteFieldTables::Elt FiniteFieldTables::inv(Elt a) const {
  if (a == 0) throw Error(ErrorCode::ZeroInput, "inverse of zero");
  std::uint32_t n = q_ - 1;
  return (n - (a - 1)) % n + 1;
}

FiniteFieldTables::Elt FiniteFieldTables::pow(Elt a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  std::uint64_t n = q_ - 1;
  return static_cast<Elt>(((a - 1) * (e % n)) % n) + 1;
}

FiniteFieldTables::Elt FiniteFieldTables::from(const FieldElement& a) const {
  return by_index_[field_->index(field_->coerce(a))];
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& f, std::shared_ptr<const FiniteFieldTables> tables)
    : t_(std::move(tables)) {
  for (const auto& [m, c] : f.terms()) terms_.push_back({t_->from(c), m});
}

FiniteFieldTables::Elt CompiledPolynomial::eval(const std::vector<FiniteFieldTables::Elt>& x) const {
  FiniteFieldTables::Elt acc = 0;
  for (const auto& [c, m] : terms_) {
    FiniteFieldTables::Elt term = c;
    for (std::size_t i = 0; i < m.size() && term != 0; ++i)
      if (m[i] != 0) term = t_->mul(term, t_->pow(x[i], static_cast<std::uint64_t>(m[i])));
    acc = t_->add(acc, term);
  }
  return acc;
}

}  // namespace a1
