#pragma once

// Local and global A1-degrees.

#include <optional>
#include <vector>

#include "a1/finite_tables.hpp"
#include "a1/gw.hpp"
#include "a1/local_algebra.hpp"

namespace a1 {

/// Degree of the subfield generated by the coordinates over k; NotAnExtension when
/// some coordinate is not in a field above k.
long residue_degree(const std::vector<FieldElement>& x, const Field& k);

/// Tr_{k(q)/k} <Jf(q)>. The coordinates of q must generate their field over k.
GwElement local_degree_simple(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& q);

struct EklForm {
  LocalAlgebra algebra;
  Row jacobian;
  /// Values of eta on the basis; eta(Jf) = dim.
  Row eta;
  Matrix gram;
  GwElement cls;
};

/// eta = (dim / J_j) e_j^* at the first basis coordinate j with J_j != 0.
Row default_eta(const LocalAlgebra& A, const Row& jacobian);
Matrix ekl_gram(const LocalAlgebra& A, const Row& eta);

/// EKL form over the field of the point; eta defaults to default_eta.
EklForm ekl_form(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& x,
                 std::optional<Row> eta = {}, int max_order = 32);

/// EKL class transferred to the field of the system.
GwElement local_degree_ekl(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& x,
                           int max_order = 32);

/// Simple-zero formula when Jf(x) != 0, EKL otherwise.
GwElement local_degree(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& x, int max_order = 32);

/// Coefficients c_ij of (A(X)B(Y) - A(Y)B(X)) / (X - Y), i, j < deg A.
Matrix bezout_matrix(const Polynomial& a, const Polynomial& b);
GwElement bezout_form_p1(const Polynomial& a, const Polynomial& b);

/// F_{q^r} over a finite field k, or k itself when r = 1.
Field finite_extension_of(const Field& k, int r);

struct FiberPoint {
  std::vector<FieldElement> coords;  // over the residue field
  int degree = 1;                    // Frobenius orbit size
  FieldElement jacobian;
  GwElement contribution;            // over the base field
};

struct GlobalDegree {
  GwElement degree;
  std::vector<FiberPoint> points;
  long geometric_count = 0;  // points over the algebraic closure found
};

/// Zeros of fs over F_{q^r}, r <= max_ext, one per Frobenius orbit, as raw points.
std::vector<FiberPoint> fiber_points(const std::vector<Polynomial>& fs, int max_ext,
                                     const std::optional<Polynomial>& nonvanishing = {});

/// Sum over the fiber of fs at y of Tr <Jf>. expected, when given, is the number of
/// geometric preimages the fiber must have.
GlobalDegree global_degree_finite_field(const std::vector<Polynomial>& fs, const std::vector<FieldElement>& y,
                                        int max_ext = 3, std::optional<long> expected = {});

/// Degree of z -> A/B at a finite value y; fibers counted in A - yB with B != 0.
GlobalDegree global_degree_p1(const Polynomial& a, const Polynomial& b, const FieldElement& y, int max_ext = 3);

}  // namespace a1
