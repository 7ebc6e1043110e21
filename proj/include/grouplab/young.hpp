#pragma once

#include <utility>
#include <vector>

#include "grouplab/partition.hpp"

namespace grouplab {

// perm[i] = image of i, 0-based.
using Permutation = std::vector<int>;

int permutation_sign(const Permutation& p);

// Expanded Young symmetrizer: the products p*q over the row group P and the
// signed column group Q of the row-major standard tableau. P and Q intersect
// only in the identity, so every term carries coefficient +1 or -1 and the
// identity's coefficient is +1.
struct SignedPermSum {
    int degree = 0;
    std::vector<std::pair<Permutation, int>> terms;
};

// Capped at |lambda| <= 8 (the row/column group product grows factorially).
SignedPermSum young_symmetrizer(const Partition& lambda);

}  // namespace grouplab
