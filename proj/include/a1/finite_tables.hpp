#pragma once

// Log/Zech tables for a finite field, used to enumerate fibers quickly.
// An element is 0 for zero and n + 1 for g^n, g the first primitive element.

#include <cstdint>
#include <memory>
#include <vector>

#include "a1/field.hpp"
#include "a1/polynomial.hpp"

namespace a1 {

class FiniteFieldTables {
 public:
  using Elt = std::uint32_t;

  /// Shared tables for a finite field of order at most 10^6.
  static std::shared_ptr<const FiniteFieldTables> get(const Field& k);

  explicit FiniteFieldTables(Field k);

  const Field& field() const { return field_; }
  std::uint32_t order() const { return q_; }

  Elt add(Elt a, Elt b) const;
  Elt neg(Elt a) const;
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const;
  Elt pow(Elt a, std::uint64_t e) const;

  Elt from(const FieldElement& a) const;
  const FieldElement& element(Elt a) const { return elements_[a]; }
  /// Position in the field's canonical enumeration order.
  std::uint64_t index(Elt a) const { return index_[a]; }

 private:
  Field field_;
  std::uint32_t q_ = 0;
  std::vector<Elt> by_index_;          // canonical index -> Elt
  std::vector<std::uint64_t> index_;   // Elt -> canonical index
  std::vector<FieldElement> elements_; // Elt -> element
  std::vector<std::int64_t> zech_;     // log(1 + g^n), -1 when 1 + g^n = 0
};

/// A polynomial evaluated through tables of a field containing its coefficients.
class CompiledPolynomial {
 public:
  CompiledPolynomial(const Polynomial& f, std::shared_ptr<const FiniteFieldTables> tables);
  FiniteFieldTables::Elt eval(const std::vector<FiniteFieldTables::Elt>& x) const;

 private:
  std::shared_ptr<const FiniteFieldTables> t_;
  std::vector<std::pair<FiniteFieldTables::Elt, Monomial>> terms_;
};

}  // namespace a1
