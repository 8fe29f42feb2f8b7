#pragma once

#include <vector>

#include "folia/rational.hpp"

namespace folia {

using RatMatrix = std::vector<std::vector<Rat>>;

// exact rank by fraction-free (Bareiss style) elimination over the integers
// after clearing denominators row by row
long rat_rank(RatMatrix m);

// exact integer determinant, Bareiss elimination
Int int_det(std::vector<std::vector<Int>> m);

} // namespace folia
