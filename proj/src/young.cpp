#include "grouplab/young.hpp"

#include <algorithm>

namespace grouplab {

namespace {

// All permutations of [d] preserving the given blocks (as sets).
std::vector<Permutation> block_permutations(int d, const std::vector<std::vector<int>>& blocks) {
    std::vector<Permutation> out;
    Permutation base(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) base[static_cast<size_t>(i)] = i;
    out.push_back(base);
    for (const auto& block : blocks) {
        if (block.size() < 2) continue;
        std::vector<int> idx = block;
        std::sort(idx.begin(), idx.end());
        std::vector<Permutation> next;
        std::vector<int> images = idx;
        do {
            for (const Permutation& p : out) {
                Permutation q = p;
                for (size_t t = 0; t < idx.size(); ++t) q[static_cast<size_t>(idx[t])] = p[static_cast<size_t>(images[t])];
                next.push_back(std::move(q));
            }
        } while (std::next_permutation(images.begin(), images.end()));
        out = std::move(next);
    }
    return out;
}

}  // namespace

int permutation_sign(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    int sign = 1;
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        size_t j = i;
        int len = 0;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<size_t>(p[j]);
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

SignedPermSum young_symmetrizer(const Partition& lambda) {
    if (!lambda.is_integer()) throw InvalidShapeError("young_symmetrizer: integer partitions only");
    const long d = lambda.sum();
    if (d > 8) throw TooLargeError("young_symmetrizer: |lambda| > 8");

    // Row-major standard tableau: cell (r, c) holds the entry
    // lambda_1 + ... + lambda_{r-1} + c (0-based here).
    std::vector<std::vector<int>> rows;
    std::vector<std::vector<int>> cols;
    long next = 0;
    for (size_t r = 0; r < lambda.rows(); ++r) {
        std::vector<int> row;
        for (long c = 0; c < lambda.part(r); ++c) {
            row.push_back(static_cast<int>(next));
            if (cols.size() <= static_cast<size_t>(c)) cols.emplace_back();
            cols[static_cast<size_t>(c)].push_back(static_cast<int>(next));
            ++next;
        }
        rows.push_back(std::move(row));
    }

    const auto p_group = block_permutations(static_cast<int>(d), rows);
    const auto q_group = block_permutations(static_cast<int>(d), cols);

    SignedPermSum out;
    out.degree = static_cast<int>(d);
    out.terms.reserve(p_group.size() * q_group.size());
    for (const Permutation& q : q_group) {
        const int sgn = permutation_sign(q);
        for (const Permutation& p : p_group) {
            Permutation pq(static_cast<size_t>(d));
            for (int x = 0; x < d; ++x)
                pq[static_cast<size_t>(x)] = p[static_cast<size_t>(q[static_cast<size_t>(x)])];
            out.terms.emplace_back(std::move(pq), sgn);
        }
    }
    return out;
}

}  // namespace grouplab
