#pragma once

#include <vector>

#include "tenv/core/rational.hpp"

namespace tenv {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact rank by Gaussian elimination (the argument is consumed).
std::size_t matrix_rank(RationalMatrix m);

/// Rank of a matrix with entries in F_p, p prime and small.
std::size_t matrix_rank_mod(std::vector<std::vector<long>> m, long p);

}  // namespace tenv
