#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "grouplab/rng.hpp"

namespace grouplab {

// Monte-Carlo estimate with its standard error and seed provenance. Reported
// acceptance bands are value +- z * std_error with z = 3 throughout.
struct EstimateWithCI {
    double value = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    double half_width(double z = 3.0) const { return z * std_error; }
    bool within(double target, double z = 3.0) const {
        return std::abs(value - target) <= half_width(z);
    }
};

// Number of substreams a chunked estimator is split into; fixed so results do
// not depend on how chunks are scheduled.
inline constexpr int kMcChunks = 64;

// Acceptance band for a sweep of `cells` simultaneous statistics: the z such
// that the whole sweep false-alarms at the same rate as a single two-sided
// 3-sigma test (Bonferroni split of 0.0027).
inline double family_band_z(int cells) {
    const double alpha = 0.0027 / std::max(1, cells);
    double lo = 3.0, hi = 10.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::erfc(mid / std::sqrt(2.0)) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Mean of fn over n_samples draws, seeded per chunk from `base`.
template <typename Fn>
EstimateWithCI mc_mean(long n_samples, const RngStream& base, Fn&& fn) {
    EstimateWithCI est;
    est.n_samples = n_samples;
    double sum = 0.0, sumsq = 0.0;
    const int chunks = static_cast<int>(std::min<long>(kMcChunks, std::max<long>(1, n_samples)));
    long done = 0;
    for (int c = 0; c < chunks; ++c) {
        const long quota = n_samples / chunks + (c < n_samples % chunks ? 1 : 0);
        RngStream rng = base.substream(static_cast<std::uint64_t>(c));
        for (long i = 0; i < quota; ++i) {
            const double v = fn(rng);
            sum += v;
            sumsq += v * v;
        }
        done += quota;
    }
    est.value = done > 0 ? sum / static_cast<double>(done) : 0.0;
    if (done > 1) {
        const double var = std::max(0.0, (sumsq - sum * sum / static_cast<double>(done)) /
                                             static_cast<double>(done - 1));
        est.std_error = std::sqrt(var / static_cast<double>(done));
    }
    return est;
}

}  // namespace grouplab
