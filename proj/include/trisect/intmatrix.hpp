#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace trisect {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

IntMatrix to_int_matrix(const std::vector<std::vector<int>>& m);

int matrix_rank(const IntMatrix& m);

// Exact determinant of a square matrix (Bareiss elimination).
std::int64_t determinant(const IntMatrix& m);

// Nonzero diagonal of the Smith normal form, in divisibility order.
std::vector<std::int64_t> invariant_factors(const IntMatrix& m);

// A primitive integer vector v with m v = 0, if the kernel is nontrivial.
std::optional<std::vector<std::int64_t>> kernel_vector(const IntMatrix& m);

}  // namespace trisect
