#pragma once

// Critical-point branches of deformations f + t g over truncated Puiseux fields.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "a1/gw.hpp"
#include "a1/polynomial.hpp"

namespace a1 {

/// f + t g over the union of their variables, t last.
Polynomial deformation(const Polynomial& f, const Polynomial& g);

struct Branch {
  Field field;  // k'((s)) with s^m = lambda t
  std::vector<std::string> vars;
  std::vector<FieldElement> coords;
  /// Coordinates agree with a true critical point below s^precision.
  std::int64_t precision = 0;
  /// Valuation of grad(f + t g) after each Newton step, seed first.
  std::vector<std::int64_t> residual_valuations;
  std::int64_t hessian_valuation = 0;
};

/// Newton iteration from seed values of the space variables (missing ones are 0),
/// given over a Puiseux field. target defaults to the field's cap.
Branch newton_lift(const Polynomial& f, const Polynomial& g, const std::map<std::string, FieldElement>& seed,
                   std::int64_t target = 0);

/// <Hess(f + t g)> on the branch, over the branch field.
GwElement branch_type(const Branch& b, const Polynomial& f, const Polynomial& g);

struct BranchSummary {
  std::size_t index = 0;
  bool duplicate = false;  // a conjugate of an earlier branch
  std::size_t conjugate_of = 0;
  GwElement type;
  long degree = 0;  // [k'((s)) : k((t))]
};

struct BifurcationReport {
  GwElement lhs;  // mu_p(f) over k
  std::vector<BranchSummary> branches;
  SpringerResidues rhs_residues;  // of the sum of transfers, normalized
  long rank_sum = 0;
  bool complete = false;
  Tri result = Tri::Unknown;
  std::string diagnosis;
};

BifurcationReport verify_bifurcation(const Polynomial& f, const Polynomial& g, const std::vector<Branch>& branches,
                                     const std::vector<FieldElement>& p, int max_order = 32);

}  // namespace a1
