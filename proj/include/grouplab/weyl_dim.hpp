#pragma once

#include <gmpxx.h>

#include "grouplab/partition.hpp"

namespace grouplab {

// Exact dimension of the irreducible representation of g indexed by lambda,
// from Weyl's product formulas (type B/D for SO and Spin, C for Sp, A for SU).
// All arithmetic is rational and the result is asserted integral. For SO(2k)
// with exactly k rows the value is the dimension of a single member of the
// mirror pair; is_self_associated flags that case. For SU the value depends
// only on part differences, so partitions with n rows give the dimension of
// their full-column reduction.
mpz_class weyl_dimension(const GroupSpec& g, const Partition& lambda);

// SO(2k) partitions with first column of length exactly k index a mirror pair
// of irreducible representations of equal dimension.
bool is_self_associated(const GroupSpec& g, const Partition& lambda);

// Lower-bound expressions from the dimension audits, kept in one place so the
// sweeps never restate them.
mpq_class so_sp_dimension_lower_bound(int n, long d);      // (n-d)^d / d!
mpz_class su_dimension_lower_bound(int n, long d);         // binom(floor(n/2), d)
double high_level_dimension_lower_bound(Family f, int n);  // exp(n/32) or exp(n/16)

}  // namespace grouplab
