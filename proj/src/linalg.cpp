#include "a1/linalg.hpp"

namespace a1 {

Matrix zero_matrix(const Field& k, std::size_t rows, std::size_t cols) {
  return Matrix(rows, Row(cols, k->zero()));
}

Matrix identity_matrix(const Field& k, std::size_t n) {
  Matrix m = zero_matrix(k, n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = k->one();
  return m;
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return a;
  Matrix t(a[0].size(), Row(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Matrix multiply(const Field& k, const Matrix& a, const Matrix& b) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  Matrix c = zero_matrix(k, n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < inner; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] = k->add(c[i][j], k->mul(a[i][l], b[l][j]));
    }
  return c;
}

std::string matrix_str(const Matrix& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < a[i].size(); ++j) s += (j ? ", " : "") + a[i][j].str();
    s += "]";
  }
  return s + "]";
}

bool is_symmetric(const Matrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (a[i][j] != a[j][i]) return false;
  }
  return true;
}

namespace {

// Row index in [from, n) of the pivot for column c, or n.
std::size_t pick_pivot(const Field& k, const Matrix& a, std::size_t from, std::size_t c) {
  std::size_t best = a.size();
  std::optional<std::int64_t> best_v;
  for (std::size_t r = from; r < a.size(); ++r) {
    if (a[r][c].is_zero()) continue;
    if (k->kind() != FieldKind::Puiseux) return r;
    auto v = k->valuation(a[r][c]);
    if (!best_v || *v < *best_v) {
      best_v = v;
      best = r;
    }
  }
  return best;
}

}  // namespace

FieldElement determinant(const Field& k, Matrix a) {
  std::size_t n = a.size();
  FieldElement det = k->one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = pick_pivot(k, a, c, c);
    if (piv == n) return k->zero();
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = k->neg(det);
    }
    det = k->mul(det, a[c][c]);
    FieldElement inv = k->inv(a[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      FieldElement f = k->mul(a[r][c], inv);
      for (std::size_t j = c; j < n; ++j) a[r][j] = k->sub(a[r][j], k->mul(f, a[c][j]));
    }
  }
  return det;
}

Echelon row_reduce(const Field& k, Matrix a) {
  Echelon out;
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = pick_pivot(k, a, r, c);
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    FieldElement inv = k->inv(a[r][c]);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = k->mul(a[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      FieldElement f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (a[r][j].is_zero()) continue;
        a[i][j] = k->sub(a[i][j], k->mul(f, a[r][j]));
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

std::optional<Row> solve(const Field& k, Matrix a, Row b) {
  std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = pick_pivot(k, a, c, c);
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    FieldElement inv = k->inv(a[c][c]);
    for (std::size_t j = c; j <= n; ++j) a[c][j] = k->mul(a[c][j], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      FieldElement f = a[r][c];
      for (std::size_t j = c; j <= n; ++j) a[r][j] = k->sub(a[r][j], k->mul(f, a[c][j]));
    }
  }
  Row x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace a1
