#pragma once

#include <gmpxx.h>

#include <vector>

#include "grouplab/partition.hpp"

namespace grouplab {

// Fundamental-weight data realized through the orthogonal generators u_j
// (||u_j||^2 = 2 for SO and Sp under the trace form on the given matrix
// realization) or the stated SU inner products; everything is exact rational.
//
// metric_scale converts the realization's trace form into the entry-sum
// metric of the group's native matrices. For SO and SU the two coincide; the
// Sp realization lives in 2n x 2n complex matrices, which double the
// quaternionic entry norms, so its scale is 1/2. Eigenvalues are reported in
// the native entry metric; only there does one bound envelope cover all four
// families.
struct WeightSystem {
    Family family = Family::SO;
    int n = 0;
    int rank = 0;
    std::vector<std::vector<mpq_class>> gram;  // <w_i, w_j> under the trace form
    mpq_class metric_scale = 1;

    mpq_class dot(const std::vector<long>& a, const std::vector<long>& b) const;
};

WeightSystem weight_system(Family family, int n);

// Coefficients of the dominant weight v = sum r_i w_i for the representation
// indexed by lambda. For SO(2k) partitions with k rows there are two mirror
// branches differing by an r_{k-1} / r_k swap; `mirror` selects the second.
struct WeightCoefficients {
    std::vector<long> r;
    bool has_mirror = false;
};

WeightCoefficients partition_to_weights(Family family, const Partition& lambda, int n,
                                        bool mirror = false);

// Laplace-Beltrami eigenvalue lambda_v = -2<v,sigma> - ||v||^2 where sigma is
// the all-ones weight combination. Non-positive; zero only for the empty
// partition.
mpq_class laplacian_eigenvalue(Family family, const Partition& lambda, int n,
                               bool mirror = false);

struct EigenvalueBound {
    mpq_class lambda_v;
    long level = 0;
    mpq_class bound;  // -2 D^2 - 2 n D
    bool pass = false;
};

// pass iff 0 >= lambda_v >= -2 D^2 - 2 n D with D the level of lambda.
EigenvalueBound check_eigenvalue_bound(Family family, const Partition& lambda, int n);

}  // namespace grouplab
