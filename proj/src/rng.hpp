#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

// Counter-based random number generation (Philox4x32-10).
//
// Every random value consumed by the engine is a pure function of
// (64-bit seed, stream tag, agent index, step index). There is no
// generator state to carry, so replicates can run on any thread in any
// order and still produce bit-identical trajectories, and a single
// agent/step draw can be recomputed in isolation.

namespace wocsim::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
inline constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline Counter philox_round(const Counter& ctr, const Key& key) {
    const std::uint64_t p0 = std::uint64_t(kPhiloxM4x32A) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(kPhiloxM4x32B) * ctr[2];
    return {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0],
            std::uint32_t(p1),
            std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
            std::uint32_t(p0)};
}

// 10-round Philox4x32 block function.
inline Counter philox4x32(Counter ctr, Key key) {
    ctr = philox_round(ctr, key);
    for (int round = 1; round < 10; ++round) {
        key[0] += kPhiloxW32A;
        key[1] += kPhiloxW32B;
        ctr = philox_round(ctr, key);
    }
    return ctr;
}

// 64-bit finalizer used to derive independent child seeds (sweep cells,
// replicate resampling) from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Uniform in (0, 1]; the +1 keeps log() away from 0.
inline double uniform_open_closed(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (std::uint64_t(hi) << 32) | lo;
    return double((bits >> 11) + 1) * 0x1.0p-53;
}

// Distinct tags keep population sampling and step noise on disjoint
// substreams even when both derive from the same seed.
enum class Stream : std::uint32_t { population = 1, noise = 2 };

// Standard Gaussian field indexed by (agent, step). One Philox block
// yields a Box-Muller pair shared by agents 2k and 2k+1; the value for a
// given (agent, step) never depends on evaluation order.
class GaussianField {
  public:
    GaussianField(std::uint64_t seed, Stream stream)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
          tag_(std::uint32_t(stream)) {}

    // Draws for agents (2*pair_index, 2*pair_index + 1) in one block.
    std::pair<double, double> pair_draw(std::uint32_t pair_index,
                                        std::uint64_t step) const {
        const Counter block = philox4x32(
            {pair_index, std::uint32_t(step), std::uint32_t(step >> 32),
             tag_},
            key_);
        const double u1 = uniform_open_closed(block[0], block[1]);
        const double u2 = uniform_open_closed(block[2], block[3]);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        return {r * std::cos(angle), r * std::sin(angle)};
    }

    double operator()(std::uint32_t agent, std::uint64_t step) const {
        const auto [even, odd] = pair_draw(agent >> 1, step);
        return (agent & 1u) ? odd : even;
    }

  private:
    Key key_;
    std::uint32_t tag_;
};

}  // namespace wocsim::rng
