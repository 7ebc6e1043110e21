#pragma once

#include <cmath>
#include <cstdint>

namespace grouplab {

// Counter-free seedable stream. Identical (seed, stream_id) pairs replay the
// same sequence; distinct stream_ids are decorrelated by splitmix64 before
// seeding the xoshiro256++ state. We roll our own normal() so that output is
// bit-stable across standard libraries.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}

    RngStream(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1));
        for (auto& s : state_) s = splitmix64(x);
        // xoshiro must not start at the all-zero state
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[3] = 1;
        have_spare_ = false;
        spare_ = 0.0;
    }

    // Derive a child stream; used to key per-chunk / per-cell generators.
    RngStream substream(std::uint64_t k) const {
        std::uint64_t h = state_[0];
        h ^= 0xbf58476d1ce4e5b9ULL * (k + 0x2545f4914f6cdd1dULL);
        RngStream r;
        std::uint64_t x = h;
        for (auto& s : r.state_) s = splitmix64(x);
        if ((r.state_[0] | r.state_[1] | r.state_[2] | r.state_[3]) == 0) r.state_[3] = 1;
        return r;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in (0, 1], 53-bit resolution. Never returns 0, so log() is safe.
    double uniform01() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Standard normal via Box-Muller; the paired draw is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = uniform01();
        const double v = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double two_pi_v = 2.0 * 3.14159265358979323846 * v;
        spare_ = r * std::sin(two_pi_v);
        have_spare_ = true;
        return r * std::cos(two_pi_v);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Euclidean norm of an m-dimensional standard Gaussian vector.
    double chi_norm(int m) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            const double z = normal();
            s += z * z;
        }
        return std::sqrt(s);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
    bool have_spare_;
    double spare_;
};

}  // namespace grouplab
