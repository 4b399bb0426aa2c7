#pragma once

// A1-Milnor numbers, nodes and their types, and the finite-field check that a
// generic linear perturbation splits a singularity into nodes of matching total type.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "a1/degree.hpp"

namespace a1 {

/// mu_x(f) = local degree of grad f at x, transferred to the field of f.
GwElement milnor_number(const Polynomial& f, const std::vector<FieldElement>& x, int max_order = 32);

enum class PointKind { Smooth, Node, HigherSingularity };
const char* point_kind_name(PointKind k);

struct SingularPoint {
  PointKind kind = PointKind::Smooth;
  FieldElement value;                  // f(x)
  std::optional<FieldElement> hessian; // Hessian determinant at x when grad f(x) = 0
};

SingularPoint classify_point(const Polynomial& f, const std::vector<FieldElement>& x);

/// <Hess f(x)> over the field of x.
GwElement node_type(const Polynomial& f, const std::vector<FieldElement>& x);

struct FamilyNode {
  std::vector<FieldElement> coords;
  int degree = 1;
  FieldElement hessian;  // over the residue field
  GwElement type;        // over the residue field
  GwElement transfer;    // over the base field
};

struct FamilySample {
  std::vector<FieldElement> a;
  /// generic | degenerate (some critical point is not a node) | escapes (preimages beyond max-ext)
  std::string status;
  std::vector<FamilyNode> nodes;
  GwElement rhs;
  Tri equal = Tri::Unknown;
  /// Only rational nodes: the product of their types has the discriminant of the left side.
  std::optional<bool> rational_obstruction;
  std::string bucket;
};

struct FamilyReport {
  GwElement lhs;
  long lhs_rank = 0;
  std::vector<std::vector<FieldElement>> singular_points;
  std::vector<FamilySample> samples;
  long generic = 0;
  bool all_equal = true;
  bool obstructions_hold = true;
  std::map<std::string, long> buckets;
};

/// Samples a in F_q^n \ {0}; for each, the critical points of f - a.x over F_{q^r}, r <= max_ext.
FamilyReport verify_linear_family(const Polynomial& f, std::size_t samples, int max_ext, std::uint64_t rng_seed = 0);

}  // namespace a1
