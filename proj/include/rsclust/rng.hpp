#ifndef RSCLUST_RNG_HPP
#define RSCLUST_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace rsclust {

// Seeded random stream: xoshiro256** with the state expanded from the seed by
// SplitMix64. The integer sequence is a pure function of the seed, identical
// on every platform. Substreams are derived from (seed, label) only, so they
// do not depend on how much of the parent stream has been consumed; this is
// what makes parallel and serial experiment runs byte-identical.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) w = splitmix64(x);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, 1) with 53 random bits
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // unbiased uniform integer in [0, n); n must be >= 1
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // standard normal, Marsaglia polar method (one spare cached per pair)
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    // Independent-behaving substream keyed by (this stream's seed, label).
    RngStream derive(std::uint64_t label) const {
        return RngStream(mix64(mix64(seed_ + 0x9e3779b97f4a7c15ULL) ^
                               (label + 0xbf58476d1ce4e5b9ULL)));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        return mix64(x);
    }

    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline RngStream derive_stream(const RngStream& base, std::uint64_t label) {
    return base.derive(label);
}

}  // namespace rsclust

#endif  // RSCLUST_RNG_HPP
