#pragma once

// Grothendieck-Witt classes: integer combinations of rank-one symbols <a>.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "a1/field.hpp"
#include "a1/linalg.hpp"

namespace a1 {

struct GwTerm {
  FieldElement rep;  // square-class representative
  long mult = 0;     // nonzero
};

class GwElement {
 public:
  GwElement() = default;
  explicit GwElement(Field k) : field_(std::move(k)) {}

  static GwElement symbol(const FieldElement& a, long mult = 1);
  /// n copies of <1> + <-1>.
  static GwElement hyperbolic(const Field& k, long n = 1);

  const Field& field() const { return field_; }
  const std::vector<GwTerm>& terms() const { return terms_; }
  long rank() const;
  bool empty() const { return terms_.empty(); }

  void add_symbol(const FieldElement& a, long mult = 1);

  GwElement operator+(const GwElement& o) const;
  GwElement operator-(const GwElement& o) const;
  GwElement operator-() const { return scaled(-1); }
  GwElement operator*(const GwElement& o) const;
  GwElement scaled(long n) const;

  /// Canonical text: `15<1> + 12<-1>`.
  std::string str() const;
  nlohmann::json to_json() const;

 private:
  void add_class(const FieldElement& rep, long mult);
  void sort_terms();

  Field field_;
  std::vector<GwTerm> terms_;
};

/// Symmetric congruence to a diagonal; first nonzero diagonal pivot.
std::vector<FieldElement> diagonal_entries(const Field& k, const Matrix& gram);
GwElement diagonalize(const Field& k, const Matrix& gram);

struct GwInvariants {
  long rank = 0;
  std::optional<SquareClass> discriminant;
  std::optional<long> signature;               // ordered fields only
  std::map<mpz_class, int> hasse_witt;         // Q only, primes dividing 2 * entries
};

GwInvariants invariants(const GwElement& e);

/// Decide e1 = e2 in GW(k); Unknown where the field has no complete invariants.
Tri equals(const GwElement& e1, const GwElement& e2);

/// Merge <c> + <-c> pairs into <1> + <-1>.
GwElement simplify(const GwElement& e);

/// Gram matrix Tr(a b_i b_j) one step down the trace tower.
Matrix transfer_gram(const FieldElement& a, const std::vector<FieldElement>& basis = {});
GwElement transfer(const GwElement& e, const Field& k);
/// Degree of L over k along the trace tower; NotAnExtension when k is not below L.
long extension_degree(const Field& L, const Field& k);

/// Residues of a class over a Puiseux field with uniformizer s.
/// With normalize, hyperbolic parts of the second residue move to the first.
struct SpringerResidues {
  GwElement first;
  GwElement second;
};
SpringerResidues springer_residues(const GwElement& e, bool normalize = true);
/// first + <s> * second over the Puiseux field.
GwElement springer_reconstruct(const SpringerResidues& r, const Field& puiseux);

}  // namespace a1
