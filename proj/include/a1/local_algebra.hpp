#pragma once

// The local algebra of an isolated zero, as k[x]/((f) + m^N) for a certified N.

#include <map>
#include <vector>

#include "a1/linalg.hpp"
#include "a1/polynomial.hpp"

namespace a1 {

struct LocalAlgebra {
  Field field;
  std::vector<std::string> vars;
  /// The system translated so the zero is the origin.
  std::vector<Polynomial> system;
  /// First N with dim((f) + m^N) = dim((f) + m^(N+1)); then m^N lies in (f) locally.
  int order = 0;
  std::vector<Monomial> basis;
  /// Monomials of degree < order, largest first; the Macaulay matrix columns.
  std::vector<Monomial> columns;
  Echelon reduced;

  std::size_t dimension() const { return basis.size(); }
};

/// Translate a polynomial so that the point x becomes the origin.
Polynomial translate(const Polynomial& p, const std::vector<FieldElement>& x);

/// dim k[x]/((f) + m^n) for a system already centred at the origin.
std::size_t truncated_dimension(const std::vector<Polynomial>& fs, int n);

LocalAlgebra local_quotient(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& x,
                            int max_order = 32);

/// Coordinates over A.basis of a polynomial in the translated coordinates.
Row normal_form(const Polynomial& p, const LocalAlgebra& A);

/// Normal form of the Jacobian determinant of the translated system.
Row jacobian_image(const LocalAlgebra& A);

}  // namespace a1
