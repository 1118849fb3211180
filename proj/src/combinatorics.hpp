#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "anyonsim/optics.hpp"

namespace anyonsim::internal {

/// All m-bit masks with exactly n bits set, in increasing numeric order.
inline std::vector<std::uint64_t> masks_with_popcount(int m, int n) {
  std::vector<std::uint64_t> out;
  if (n < 0 || n > m) return out;
  if (n == 0) return {0};
  std::uint64_t x = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const std::uint64_t limit = (m == 64) ? 0 : std::uint64_t{1} << m;
  while (true) {
    out.push_back(x);
    // Gosper's hack
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    if (r == 0) break;
    x = (((r ^ x) >> 2) / c) | r;
    if (limit != 0 && x >= limit) break;
  }
  return out;
}

/// Occupied modes (0-based) in increasing order.
inline std::vector<int> occupied_modes(std::uint64_t bits) {
  std::vector<int> out;
  while (bits != 0) {
    out.push_back(std::countr_zero(bits));
    bits &= bits - 1;
  }
  return out;
}

/// det M[rows, cols]; empty selection gives 1.
inline Complex minor_determinant(const Matrix& mat, const std::vector<int>& rows,
                                 const std::vector<int>& cols) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) return Complex(1.0);
  Matrix sub(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = mat(rows[r], cols[c]);
  }
  if (n == 1) return sub(0, 0);
  return sub.partialPivLu().determinant();
}

}  // namespace anyonsim::internal
