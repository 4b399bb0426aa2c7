#pragma once

// Exact field tower: Q, F_p, simple extensions, rational functions and
// truncated Puiseux series, behind one runtime-dispatched interface.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "a1/error.hpp"

namespace a1 {

enum class FieldKind { Rationals, PrimeField, SimpleExtension, RationalFunctions, Puiseux };

class FieldNode;
using Field = std::shared_ptr<const FieldNode>;

class FieldElement;

/// Coefficients c_0..c_{d-1} over the base, trailing zeros trimmed.
struct PolyRep {
  std::vector<FieldElement> c;
};

/// num/den over the base; den monic, gcd(num, den) = 1.
struct RatFuncRep {
  std::vector<FieldElement> num;
  std::vector<FieldElement> den;
};

/// Sum of coeffs[i] * s^exps[i], exps strictly increasing, coeffs nonzero.
/// Every term with exponent below prec is known exactly; prec <= field cap.
struct PuiseuxRep {
  std::vector<std::int64_t> exps;
  std::vector<FieldElement> coeffs;
  std::int64_t prec = 0;
};

class FieldElement {
 public:
  using Rep = std::variant<mpq_class, std::int64_t, PolyRep, RatFuncRep, PuiseuxRep>;

  FieldElement() = default;
  FieldElement(Field field, Rep rep);

  const Field& field() const { return field_; }
  const Rep& rep() const { return rep_; }
  bool valid() const { return field_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement inverse() const;
  FieldElement pow(const mpz_class& e) const;

  /// Representation equality; the canonical form makes this field equality.
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string str() const;

 private:
  Field field_;
  Rep rep_;
};

/// Canonical representative of a class in k^x/(k^x)^2.
struct SquareClass {
  FieldElement rep;
};

class FieldNode : public std::enable_shared_from_this<FieldNode> {
 public:
  static Field rationals();
  static Field prime(std::int64_t p);
  /// minpoly: coefficients low to high over base, monic, separable, irreducible.
  static Field extension(const Field& base, const std::string& name, std::vector<FieldElement> minpoly);
  static Field rational_functions(const Field& base, const std::string& var);
  /// k'((s)) with s^m = lambda * t, truncated at s-exponent cap.
  static Field puiseux(const Field& base, int m, std::int64_t cap, std::optional<FieldElement> lambda = {});
  /// F_{q^r} as F_q(name) modulo the first monic irreducible of degree r.
  static Field finite_extension(const Field& base, int r, const std::string& name = "w");

  FieldKind kind() const { return kind_; }
  const Field& base() const { return base_; }
  const std::string& name() const { return name_; }
  const std::vector<FieldElement>& minpoly() const { return minpoly_; }
  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  int ramification() const { return m_; }
  std::int64_t cap() const { return cap_; }
  const FieldElement& twist() const { return lambda_; }
  std::int64_t characteristic() const { return char_; }
  bool is_finite() const { return order_ != 0; }
  const mpz_class& order() const { return order_; }
  /// Fully bracketed descriptor; equal keys mean equal fields.
  const std::string& key() const { return nested_key_; }
  std::string descriptor() const { return key_; }

  /// Square classes have canonical representatives, so class equality is syntactic.
  bool canonical_square_classes() const { return canonical_; }
  /// Q with its real embedding; signatures are defined.
  bool ordered() const { return kind_ == FieldKind::Rationals; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long v) const;
  FieldElement from_mpz(const mpz_class& v) const;
  FieldElement from_rational(const mpq_class& v) const;
  FieldElement generator() const;
  /// t for a Puiseux field.
  FieldElement t() const;
  /// Constant of a Puiseux field or coefficient polynomial of an extension.
  FieldElement from_coeffs(std::vector<FieldElement> coeffs) const;
  FieldElement from_series(std::vector<std::int64_t> exps, std::vector<FieldElement> coeffs,
                           std::int64_t prec) const;

  /// Image of a in this field when a's field is a subfield in the tower
  /// (or a Puiseux field differing only in cap).
  FieldElement coerce(const FieldElement& a) const;
  bool contains(const Field& sub) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement inv(const FieldElement& a) const;
  FieldElement pow(const FieldElement& a, const mpz_class& e) const;
  bool is_zero(const FieldElement& a) const;
  bool equal(const FieldElement& a, const FieldElement& b) const;

  Tri is_square(const FieldElement& a) const;
  SquareClass square_class(const FieldElement& a) const;
  /// Class comparison; syntactic when canonical, otherwise via the ratio.
  Tri same_class(const SquareClass& a, const SquareClass& b) const;
  std::optional<FieldElement> sqrt(const FieldElement& a) const;

  /// One step down the trace tower; null when there is none.
  Field trace_base() const;
  /// Basis of this field over trace_base().
  std::vector<FieldElement> trace_basis() const;
  FieldElement trace(const FieldElement& a) const;
  /// [this : trace_base()].
  int trace_degree() const;

  /// Finite fields: canonical index in [0, q) and its inverse.
  std::uint64_t index(const FieldElement& a) const;
  FieldElement element_at(std::uint64_t i) const;
  std::vector<FieldElement> enumerate(std::uint64_t bound = 10000) const;
  /// First quadratic nonresidue in index order (finite fields).
  const FieldElement& nonresidue() const { return nonresidue_; }

  /// Puiseux accessors.
  std::optional<std::int64_t> valuation(const FieldElement& a) const;
  FieldElement leading_coefficient(const FieldElement& a) const;
  std::int64_t precision(const FieldElement& a) const;
  /// Reset the precision of a series to the cap (treat as exact).
  FieldElement exact(const FieldElement& a) const;

  std::string format(const FieldElement& a) const;

  FieldNode(const FieldNode&) = delete;
  FieldNode& operator=(const FieldNode&) = delete;

 private:
  FieldNode() = default;
  void finish();

  FieldKind kind_ = FieldKind::Rationals;
  Field base_;
  std::string name_;
  std::vector<FieldElement> minpoly_;
  std::vector<FieldElement> trace_powers_;
  int m_ = 1;
  std::int64_t cap_ = 0;
  FieldElement lambda_;
  std::int64_t char_ = 0;
  mpz_class order_ = 0;
  std::string key_;
  std::string nested_key_;
  Field trace_base_;
  bool canonical_ = false;
  FieldElement nonresidue_;

  friend class FieldElement;
};

bool same_field(const Field& a, const Field& b);

/// Coefficient field of a Puiseux field, or the field itself.
Field residue_field(const Field& f);

/// Bring a and b into a common field of the tower.
std::pair<FieldElement, FieldElement> unify(const FieldElement& a, const FieldElement& b);

}  // namespace a1
