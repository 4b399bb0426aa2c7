#pragma once

// Sparse multivariate polynomials over a Field. The variable named "t" is the
// deformation parameter and is never differentiated.

#include <map>
#include <string>
#include <vector>

#include "a1/field.hpp"

namespace a1 {

using Monomial = std::vector<int>;

/// Graded lexicographic, larger monomials first.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

int monomial_degree(const Monomial& m);

class Polynomial {
 public:
  using Terms = std::map<Monomial, FieldElement, GrlexDescending>;

  Polynomial() = default;
  Polynomial(Field k, std::vector<std::string> vars);

  static Polynomial constant(const Field& k, const std::vector<std::string>& vars, const FieldElement& c);
  static Polynomial variable(const Field& k, const std::vector<std::string>& vars, std::size_t i);
  static Polynomial monomial(const Field& k, const std::vector<std::string>& vars, const Monomial& m,
                             const FieldElement& c);

  const Field& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int total_degree() const;
  /// Lowest total degree of a term; -1 for zero.
  int order() const;
  int var_index(const std::string& name) const;
  FieldElement coefficient(const Monomial& m) const;
  FieldElement constant_term() const;

  void add_term(const Monomial& m, const FieldElement& c);

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scale(const FieldElement& c) const;
  Polynomial pow(unsigned e) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial derivative(std::size_t i) const;
  /// Value at a point whose field contains the coefficients.
  FieldElement evaluate(const std::vector<FieldElement>& point) const;
  /// Substitute one polynomial per variable; all substitutes share a ring.
  Polynomial compose(const std::vector<Polynomial>& subs) const;
  Polynomial change_field(const Field& k) const;
  /// Rewrite over another variable list containing every variable in use.
  Polynomial with_vars(const std::vector<std::string>& vars) const;
  /// Terms of total degree < n.
  Polynomial truncate(int n) const;
  /// Substitute a value for one variable, keeping the ring.
  Polynomial specialize(std::size_t i, const FieldElement& v) const;

  std::string str() const;

 private:
  Field field_;
  std::vector<std::string> vars_;
  Terms terms_;
};

/// Indices of the variables other than "t".
std::vector<std::size_t> space_variables(const std::vector<std::string>& vars);

std::vector<Polynomial> gradient(const Polynomial& f);
std::vector<std::vector<Polynomial>> jacobian_matrix(const std::vector<Polynomial>& fs);
Polynomial jacobian_determinant(const std::vector<Polynomial>& fs);
std::vector<std::vector<Polynomial>> hessian_matrix(const Polynomial& f);
Polynomial hessian_determinant(const Polynomial& f);
Polynomial determinant(const std::vector<std::vector<Polynomial>>& m);
/// F(x0, x) = x0^d f(x / x0) with x0 prepended to the variables.
Polynomial homogenize(const Polynomial& f, const std::string& x0);

}  // namespace a1
