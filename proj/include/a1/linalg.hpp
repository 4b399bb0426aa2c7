#pragma once

#include <optional>
#include <string>
#include <vector>

#include "a1/field.hpp"

namespace a1 {

using Row = std::vector<FieldElement>;
using Matrix = std::vector<Row>;

Matrix zero_matrix(const Field& k, std::size_t rows, std::size_t cols);
Matrix identity_matrix(const Field& k, std::size_t n);
Matrix transpose(const Matrix& a);
Matrix multiply(const Field& k, const Matrix& a, const Matrix& b);
bool is_symmetric(const Matrix& a);
/// `[[a, b], [c, d]]`.
std::string matrix_str(const Matrix& a);

FieldElement determinant(const Field& k, Matrix a);

/// Reduced row echelon form; pivots[i] is the pivot column of row i.
struct Echelon {
  Matrix rows;
  std::vector<std::size_t> pivots;
};
Echelon row_reduce(const Field& k, Matrix a);

/// Solve a x = b for square nonsingular a; series fields pivot on least valuation.
std::optional<Row> solve(const Field& k, Matrix a, Row b);

}  // namespace a1
