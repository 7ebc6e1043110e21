#include "grouplab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace grouplab {

Partition::Partition(std::initializer_list<long> parts) : Partition(std::vector<long>(parts)) {}

Partition::Partition(const std::vector<long>& parts) {
    twice_.reserve(parts.size());
    for (long p : parts) twice_.push_back(2 * p);
    normalize();
}

Partition Partition::from_twice(std::vector<long> twice_parts) {
    Partition p;
    p.twice_ = std::move(twice_parts);
    p.normalize();
    return p;
}

Partition Partition::half_integers(const std::vector<long>& twice_parts) {
    for (long t : twice_parts)
        if (t % 2 == 0) throw InvalidShapeError("half_integers: doubled parts must be odd");
    return from_twice(std::vector<long>(twice_parts));
}

void Partition::normalize() {
    for (size_t i = 0; i < twice_.size(); ++i) {
        if (twice_[i] < 0) throw InvalidShapeError("Partition: negative part");
        if (i > 0 && twice_[i] > twice_[i - 1])
            throw InvalidShapeError("Partition: parts must be weakly decreasing");
    }
    while (!twice_.empty() && twice_.back() == 0) twice_.pop_back();
    if (!twice_.empty()) {
        const long parity = twice_.front() % 2;
        for (long t : twice_)
            if (t % 2 != parity)
                throw InvalidShapeError("Partition: mixed integer and half-integer parts");
    }
}

bool Partition::is_integer() const {
    return twice_.empty() || twice_.front() % 2 == 0;
}

long Partition::part(size_t i) const {
    if (i >= twice_.size()) return 0;
    if (twice_[i] % 2 != 0) throw InvalidShapeError("Partition: half-integer part accessed as integer");
    return twice_[i] / 2;
}

long Partition::sum() const {
    if (!is_integer()) throw InvalidShapeError("Partition: half-integer partition has no integer sum");
    return twice_sum() / 2;
}

long Partition::twice_sum() const {
    return std::accumulate(twice_.begin(), twice_.end(), 0L);
}

std::string Partition::to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < twice_.size(); ++i) {
        if (i) s += ",";
        if (twice_[i] % 2 == 0)
            s += std::to_string(twice_[i] / 2);
        else
            s += std::to_string(twice_[i]) + "/2";
    }
    return s + ")";
}

namespace {

void enumerate_partitions(long remaining, long max_part, long rows_left, std::vector<long>& acc,
                          std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(acc);
        return;
    }
    if (rows_left == 0) return;
    for (long p = std::min(remaining, max_part); p >= 1; --p) {
        acc.push_back(p);
        enumerate_partitions(remaining - p, p, rows_left - 1, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(long d, long max_rows) {
    if (d < 0 || max_rows < 0) throw InvalidShapeError("partitions_of: negative arguments");
    std::vector<Partition> out;
    std::vector<long> acc;
    enumerate_partitions(d, d, max_rows, acc, out);
    return out;
}

long partition_count(long d) {
    if (d < 0) return 0;
    std::vector<long> dp(static_cast<size_t>(d) + 1, 0);
    dp[0] = 1;
    for (long k = 1; k <= d; ++k)
        for (long j = k; j <= d; ++j) dp[j] += dp[j - k];
    return dp[d];
}

StepVector step_vector(const Partition& lambda, int n) {
    if (!lambda.is_integer()) throw InvalidShapeError("step_vector: integer partitions only");
    if (lambda.rows() >= static_cast<size_t>(n))
        throw InvalidShapeError("step_vector: partition needs fewer than n rows");
    StepVector a(static_cast<size_t>(n) - 1, 0);
    for (int i = 0; i + 1 <= n - 1; ++i) a[i] = lambda.part(i) - lambda.part(i + 1);
    return a;
}

Partition partition_from_steps(const StepVector& steps) {
    std::vector<long> parts(steps.size(), 0);
    long acc = 0;
    for (size_t i = steps.size(); i-- > 0;) {
        if (steps[i] < 0) throw InvalidShapeError("partition_from_steps: negative step");
        acc += steps[i];
        parts[i] = acc;
    }
    return Partition(parts);
}

void check_shape(const GroupSpec& g, const Partition& lambda) {
    const size_t rows = lambda.rows();
    switch (g.family) {
        case Family::SO:
            if (!lambda.is_integer()) throw InvalidShapeError("SO: integer partitions only");
            if (rows > static_cast<size_t>(g.n / 2))
                throw InvalidShapeError("SO(n): at most floor(n/2) rows");
            break;
        case Family::Spin:
            if (rows > static_cast<size_t>(g.n / 2))
                throw InvalidShapeError("Spin(n): at most floor(n/2) rows");
            break;
        case Family::Sp:
            if (!lambda.is_integer()) throw InvalidShapeError("Sp: integer partitions only");
            if (rows > static_cast<size_t>(g.n)) throw InvalidShapeError("Sp(n): at most n rows");
            break;
        case Family::SU:
            if (!lambda.is_integer()) throw InvalidShapeError("SU: integer partitions only");
            if (rows > static_cast<size_t>(g.n)) throw InvalidShapeError("SU(n): at most n rows");
            break;
    }
}

long level(const GroupSpec& g, const Partition& lambda) {
    check_shape(g, lambda);
    switch (g.family) {
        case Family::SO:
        case Family::Sp:
        case Family::Spin:
            if (!lambda.is_integer())
                throw InvalidShapeError("level: half-integer spin partitions have no polynomial level");
            return lambda.sum();
        case Family::SU: {
            // Full-column parts are trivial in SU(n); reduce before stepping.
            Partition reduced = lambda;
            if (lambda.rows() == static_cast<size_t>(g.n)) {
                std::vector<long> parts;
                for (size_t i = 0; i < lambda.rows(); ++i)
                    parts.push_back(lambda.part(i) - lambda.part(lambda.rows() - 1));
                reduced = Partition(parts);
            }
            const StepVector a = step_vector(reduced, g.n);
            long total = 0;
            for (int i = 1; i <= g.n - 1; ++i)
                total += a[i - 1] * std::min<long>(i, g.n - i);
            return total;
        }
    }
    return 0;
}

Partition efficient_truncation(const Partition& lambda, int n) {
    StepVector a = step_vector(lambda, n);
    const size_t half = static_cast<size_t>((n + 1) / 2);  // first half is a_1..a_{ceil(n/2)-1}
    for (size_t i = half - 1; i < a.size(); ++i) a[i] = 0;
    return partition_from_steps(a);
}

Partition dually_efficient_truncation(const Partition& lambda, int n) {
    StepVector a = step_vector(lambda, n);
    const size_t half = static_cast<size_t>((n + 1) / 2);
    for (size_t i = 0; i + 1 < half; ++i) a[i] = 0;
    return partition_from_steps(a);
}

namespace {

struct LrState {
    std::vector<long> shape;        // current partition shape
    std::vector<std::vector<int>> labels;  // labels[r] = labels of added boxes in row r, left to right
};

// Reverse reading word: rows top to bottom, each row right to left. Prefix
// counts of p must dominate those of p+1 throughout.
bool lattice_condition(const LrState& st, int max_label) {
    std::vector<long> counts(static_cast<size_t>(max_label) + 1, 0);
    for (const auto& row : st.labels)
        for (auto it = row.rbegin(); it != row.rend(); ++it) {
            const int lab = *it;
            counts[lab]++;
            if (lab > 1 && counts[lab] > counts[lab - 1]) return false;
        }
    return true;
}

}  // namespace

std::map<Partition, long> littlewood_richardson(const Partition& alpha, const Partition& beta) {
    if (!alpha.is_integer() || !beta.is_integer())
        throw InvalidShapeError("littlewood_richardson: integer partitions only");
    std::map<Partition, long> out;

    // Iterative staging: maintain all partial states after each row of alpha.
    std::vector<LrState> states;
    LrState init;
    for (size_t r = 0; r < beta.rows(); ++r) init.shape.push_back(beta.part(r));
    init.labels.assign(init.shape.size(), {});
    states.push_back(init);

    const int nstages = static_cast<int>(alpha.rows());
    for (int stage = 1; stage <= nstages; ++stage) {
        const long count = alpha.part(static_cast<size_t>(stage) - 1);
        std::vector<LrState> next_states;
        for (const LrState& st : states) {
            // enumerate additions of `count` boxes labeled `stage`
            struct Go {
                static void run(const LrState& st, int label, long remaining, size_t row,
                                std::vector<long>& adds, std::vector<LrState>& sink) {
                    const size_t nrows = st.shape.size();
                    if (row == nrows + 1) {
                        if (remaining == 0) emit(st, label, adds, sink);
                        return;
                    }
                    const long old_len = row < nrows ? st.shape[row] : 0;
                    // horizontal strip: additions to this row may not pass the
                    // previous row's old length
                    const long cap = row == 0 ? remaining : std::max<long>(0, st.shape[row - 1] - old_len);
                    for (long k = std::min(remaining, cap); k >= 0; --k) {
                        adds.push_back(k);
                        run(st, label, remaining - k, row + 1, adds, sink);
                        adds.pop_back();
                    }
                }

                static void emit(const LrState& st, int label, const std::vector<long>& adds,
                                 std::vector<LrState>& sink) {
                    LrState next = st;
                    for (size_t r = 0; r < adds.size(); ++r) {
                        if (adds[r] == 0) continue;
                        if (r >= next.shape.size()) {
                            if (r != next.shape.size()) return;  // gap; cannot happen
                            next.shape.push_back(0);
                            next.labels.emplace_back();
                        }
                        next.shape[r] += adds[r];
                        for (long t = 0; t < adds[r]; ++t) next.labels[r].push_back(label);
                    }
                    for (size_t r = 1; r < next.shape.size(); ++r)
                        if (next.shape[r] > next.shape[r - 1]) return;
                    sink.push_back(std::move(next));
                }
            };
            std::vector<long> adds;
            Go::run(st, stage, count, 0, adds, next_states);
        }
        states = std::move(next_states);
    }

    for (const LrState& st : states)
        if (lattice_condition(st, nstages)) out[Partition(st.shape)]++;
    return out;
}

QuasirandomProfile quasirandom_profile(int n, double c) {
    if (n < 2 || c <= 0.0 || c > 1.0)
        throw InvalidShapeError("quasirandom_profile: need n >= 2 and 0 < c <= 1");
    QuasirandomProfile p;
    p.n = n;
    p.c = c;
    const double threshold = c * n / (1.0 + c);
    p.q_tail = std::pow(1.0 + c, threshold);
    const int dmax = (n + 1) / 2;  // levels 0 <= d < n/2
    p.q_by_level.resize(static_cast<size_t>(dmax));
    for (int d = 0; d < dmax; ++d) {
        if (d == 0)
            p.q_by_level[0] = 1.0;
        else if (d < threshold)
            p.q_by_level[static_cast<size_t>(d)] = std::pow(c * n / d, d);
        else
            p.q_by_level[static_cast<size_t>(d)] = p.q_tail;
    }
    return p;
}

MinRankResult min_rank_and_D(const std::vector<GroupSpec>& factors) {
    if (factors.empty()) throw InvalidShapeError("min_rank_and_D: empty factor list");
    MinRankResult r;
    r.min_rank = factors.front().n;
    r.quasirandomness = 0;
    bool first = true;
    for (const GroupSpec& g : factors) {
        long d = 0;
        switch (g.family) {
            case Family::SU:
            case Family::Spin: d = g.n; break;
            case Family::Sp: d = 2L * g.n; break;
            case Family::SO:
                throw InvalidShapeError("min_rank_and_D: factors must be simply connected (SU/Spin/Sp)");
        }
        r.min_rank = std::min<long>(r.min_rank, g.n);
        r.quasirandomness = first ? d : std::min(r.quasirandomness, d);
        first = false;
    }
    return r;
}

}  // namespace grouplab
