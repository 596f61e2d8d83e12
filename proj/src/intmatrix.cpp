#include "trisect/intmatrix.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "trisect/error.hpp"

namespace trisect {

namespace {

using Wide = __int128;
using WideMatrix = std::vector<std::vector<Wide>>;

Wide wabs(Wide x) { return x < 0 ? -x : x; }

Wide wgcd(Wide a, Wide b) {
  a = wabs(a);
  b = wabs(b);
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

WideMatrix widen(const IntMatrix& m) {
  WideMatrix w(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) w[i].assign(m[i].begin(), m[i].end());
  return w;
}

void normalize_row(std::vector<Wide>& row) {
  Wide g = 0;
  for (Wide x : row) g = wgcd(g, x);
  if (g > 1) {
    for (Wide& x : row) x /= g;
  }
}

std::int64_t narrow(Wide x) {
  if (x > INT64_MAX || x < INT64_MIN) throw InternalConsistency("integer overflow in matrix arithmetic");
  return static_cast<std::int64_t>(x);
}

// Integer reduced row echelon form: pivot rows are primitive and every pivot
// column is zero outside its pivot row. Returns pivot columns.
std::vector<std::size_t> integer_rref(WideMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Wide f = a[i][c];
      const Wide piv = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = a[i][k] * piv - a[r][k] * f;
      normalize_row(a[i]);
    }
    normalize_row(a[r]);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

IntMatrix to_int_matrix(const std::vector<std::vector<int>>& m) {
  IntMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i].assign(m[i].begin(), m[i].end());
  return out;
}

int matrix_rank(const IntMatrix& m) {
  WideMatrix a = widen(m);
  return static_cast<int>(integer_rref(a).size());
}

std::int64_t determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  WideMatrix a = widen(m);
  Wide sign = 1;
  Wide prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return narrow(sign * a[n - 1][n - 1]);
}

std::vector<std::int64_t> invariant_factors(const IntMatrix& m) {
  WideMatrix a = widen(m);
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::int64_t> out;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry in the trailing block becomes the pivot.
    std::size_t pi = rows;
    std::size_t pj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] != 0 && (pi == rows || wabs(a[i][j]) < wabs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      const Wide q = a[i][t] / a[t][t];
      for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
      if (a[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      const Wide q = a[t][j] / a[t][t];
      for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
      if (a[t][j] != 0) clean = false;
    }
    if (!clean) continue;

    // Pivot must divide the trailing block; otherwise fold a row in and retry.
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i) {
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[i][j] % a[t][t] != 0) {
          for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
          divides = false;
          break;
        }
      }
    }
    if (!divides) continue;
    out.push_back(narrow(wabs(a[t][t])));
    ++t;
  }
  return out;
}

std::optional<std::vector<std::int64_t>> kernel_vector(const IntMatrix& m) {
  if (m.empty()) return std::nullopt;
  WideMatrix a = widen(m);
  const std::size_t cols = a[0].size();
  const auto pivots = integer_rref(a);
  if (pivots.size() == cols) return std::nullopt;

  std::size_t free_col = 0;
  {
    std::size_t k = 0;
    while (k < pivots.size() && pivots[k] == free_col) {
      ++free_col;
      ++k;
    }
  }
  Wide scale = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const Wide p = wabs(a[r][pivots[r]]);
    scale = scale / wgcd(scale, p) * p;
  }
  std::vector<Wide> x(cols, 0);
  x[free_col] = scale;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    x[pivots[r]] = -a[r][free_col] * scale / a[r][pivots[r]];
  }
  normalize_row(x);
  std::vector<std::int64_t> out;
  out.reserve(cols);
  for (Wide v : x) out.push_back(narrow(v));
  return out;
}

}  // namespace trisect
