#pragma once

#include <cassert>
#include <cstdint>

namespace plandscape {

// Splittable counter-based RNG: a splitmix64 walk whose increment (gamma)
// is derived from the stream id, so every (seed, stream_id) pair owns an
// independent sequence. Replaying a pair reproduces the sample sequence
// bit for bit.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : state_(mix(seed + kGolden)), gamma_(mix(stream_id + kSqrt2) | 1ULL) {}

    std::uint64_t next_u64() {
        state_ += gamma_;
        return mix(state_);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1); safe to pass through log().
    double next_double_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound), unbiased via rejection. Requires bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        assert(bound >= 1);
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Generator identity, recorded in run manifests.
    static constexpr const char* family() { return "splitmix64-gamma-streams"; }

  private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kSqrt2 = 0x6A09E667F3BCC909ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    std::uint64_t gamma_;
};

}  // namespace plandscape
