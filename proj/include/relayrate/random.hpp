#ifndef RELAYRATE_RANDOM_HPP
#define RELAYRATE_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace relayrate {

// SplitMix64 step; used to derive independent per-task seeds from a master
// seed without correlated streams.
inline std::uint64_t split_mix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    split_mix64(s);
    return split_mix64(s);
}

// xoshiro256** with hand-rolled float transforms, so that streams are
// bit-reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = split_mix64(s);
    }

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

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; one value per call, cache discarded
    // intentionally to keep the stream position independent of call pairing.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Uniform over the probability simplex (flat Dirichlet) of dimension n.
    std::vector<double> simplex(std::size_t n) {
        std::vector<double> x(n);
        double sum = 0.0;
        for (auto& v : x) {
            double u = uniform();
            while (u <= 0.0) u = uniform();
            v = -std::log(u);
            sum += v;
        }
        for (auto& v : x) v /= sum;
        return x;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

}  // namespace relayrate

#endif  // RELAYRATE_RANDOM_HPP
