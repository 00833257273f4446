#pragma once

// Counter-based random numbers (Philox4x32-10, Salmon et al. SC'11).
// Every draw is a pure function of (seed, path index, step index, slot),
// so parallel path generation is order-free and bit-reproducible.

#include <array>
#include <cmath>
#include <cstdint>

namespace sdelab {

struct Philox4x32 {
    static constexpr std::uint32_t kMulA = 0xD2511F53u;
    static constexpr std::uint32_t kMulB = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    static constexpr std::uint32_t kWeylB = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        return ctr;
    }
};

inline double uniform_from_bits(std::uint64_t bits) {
    // 53-bit mantissa, value in [0, 1)
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// One stream per (seed, stream_id).  Draws are indexed by (step, block):
// each block yields two N(0,1) variates via Box-Muller.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_id_(stream_id) {}

    std::array<std::uint64_t, 2> bits128(std::uint64_t step, std::uint32_t block) const {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(stream_id_),
            static_cast<std::uint32_t>(stream_id_ >> 32),
            static_cast<std::uint32_t>(step),
            (static_cast<std::uint32_t>(step >> 32) << 8) | block};
        const auto out = Philox4x32::block(ctr, key_);
        return {(static_cast<std::uint64_t>(out[1]) << 32) | out[0],
                (static_cast<std::uint64_t>(out[3]) << 32) | out[2]};
    }

    // Uniform pair in (0,1] x [0,1)
    std::array<double, 2> uniform2(std::uint64_t step, std::uint32_t block) const {
        const auto b = bits128(step, block);
        return {1.0 - uniform_from_bits(b[0]), uniform_from_bits(b[1])};
    }

    // Standard normal pair (Box-Muller)
    std::array<double, 2> normal2(std::uint64_t step, std::uint32_t block) const {
        const auto u = uniform2(step, block);
        const double r = std::sqrt(-2.0 * std::log(u[0]));
        const double a = 6.283185307179586476925286766559 * u[1];
        return {r * std::cos(a), r * std::sin(a)};
    }

    // Fills n standard normals for one step.
    void normals(std::uint64_t step, int n, double* out) const {
        int i = 0;
        for (std::uint32_t block = 0; i < n; ++block) {
            const auto z = normal2(step, block);
            out[i++] = z[0];
            if (i < n) out[i++] = z[1];
        }
    }

    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_id_;
};

} // namespace sdelab
