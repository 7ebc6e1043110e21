#pragma once

#include <map>
#include <string>
#include <vector>

#include "grouplab/errors.hpp"
#include "grouplab/matrix.hpp"

namespace grouplab {

// Weakly decreasing non-negative parts. Values are stored doubled so that the
// uniform half-integer partitions indexing spin representations stay exact;
// a partition is either all-integer or all-half-integer.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<long> parts);
    explicit Partition(const std::vector<long>& parts);

    static Partition from_twice(std::vector<long> twice_parts);
    static Partition half_integers(const std::vector<long>& twice_parts);

    size_t rows() const { return twice_.size(); }
    bool empty() const { return twice_.empty(); }
    bool is_integer() const;
    bool is_half_integer() const { return !twice_.empty() && !is_integer(); }

    // Integer part value; throws on half-integer partitions.
    long part(size_t i) const;
    // Doubled value, zero beyond the last row.
    long twice_part(size_t i) const { return i < twice_.size() ? twice_[i] : 0; }

    long sum() const;  // integer partitions only
    long twice_sum() const;

    size_t first_column_length() const { return twice_.size(); }

    std::string to_string() const;

    bool operator==(const Partition& o) const { return twice_ == o.twice_; }
    bool operator!=(const Partition& o) const { return twice_ != o.twice_; }
    bool operator<(const Partition& o) const { return twice_ < o.twice_; }

private:
    void normalize();
    std::vector<long> twice_;
};

// All partitions of d with at most max_rows rows, lexicographically descending.
std::vector<Partition> partitions_of(long d, long max_rows);

// Partition-counting oracle p(d) (independent of the enumeration).
long partition_count(long d);

using StepVector = std::vector<long>;

// a_i = lambda_i - lambda_{i+1} for i = 1..n-1; requires fewer than n rows.
StepVector step_vector(const Partition& lambda, int n);
Partition partition_from_steps(const StepVector& steps);

// Level of the irreducible representation indexed by lambda: sum of parts for
// SO/Sp/Spin, weighted step-vector sum (total level) for SU. The SU formula is
// applied for all levels, including d >= n/2 where it is an extrapolation.
long level(const GroupSpec& g, const Partition& lambda);

// Validates the family's row constraints without computing anything.
void check_shape(const GroupSpec& g, const Partition& lambda);

// Step-vector split at ceil(n/2): the efficient truncation keeps the first
// half, the dually-efficient truncation keeps the second half.
Partition efficient_truncation(const Partition& lambda, int n);
Partition dually_efficient_truncation(const Partition& lambda, int n);

// Littlewood-Richardson expansion of the tensor product S_alpha x S_beta,
// computed by staged horizontal-strip additions of alpha's rows onto beta
// followed by the lattice-word check on the reverse reading word.
std::map<Partition, long> littlewood_richardson(const Partition& alpha, const Partition& beta);

struct QuasirandomProfile {
    int n = 0;
    double c = 0.0;
    std::vector<double> q_by_level;  // Q_d for 0 <= d < n/2
    double q_tail = 0.0;

    double q(int d) const { return q_by_level.at(static_cast<size_t>(d)); }
};

// Q_d = (cn/d)^d for d < cn/(1+c), saturating at Q = (1+c)^{cn/(1+c)}.
QuasirandomProfile quasirandom_profile(int n, double c);

struct MinRankResult {
    long min_rank = 0;
    long quasirandomness = 0;  // D of the product
};

// Product of simple factors: min-rank is min n_i; D uses D(SU(m)) = m,
// D(Spin(m)) = m, D(Sp(m)) = 2m.
MinRankResult min_rank_and_D(const std::vector<GroupSpec>& factors);

}  // namespace grouplab
