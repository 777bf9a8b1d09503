#include "tenv/core/linalg.hpp"

#include <utility>

namespace tenv {

std::size_t matrix_rank(RationalMatrix m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size(), rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k)
        if (m[rank][k] != 0) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t matrix_rank_mod(std::vector<std::vector<long>> m, long p) {
  if (m.empty()) return 0;
  auto inv = [p](long a) {
    long r = 1, e = p - 2;
    a %= p;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rows = m.size(), cols = m[0].size(), rank = 0;
  for (auto& row : m)
    for (auto& v : row) v = ((v % p) + p) % p;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    long iv = inv(m[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      long f = m[r][c] * iv % p;
      for (std::size_t k = c; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace tenv
