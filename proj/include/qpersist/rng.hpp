#pragma once

// Counter-based RNG (Philox4x32-10).  Streams are addressed by
// (seed, stream, block), so simulation chunks draw from disjoint,
// reproducible subsequences regardless of scheduling.

#include <array>
#include <cmath>
#include <cstdint>

namespace qpersist {

namespace detail {

inline constexpr std::uint32_t philox_m0 = 0xD2511F53u;
inline constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
inline constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
inline constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c, std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = std::uint64_t(philox_m0) * c[0];
    const std::uint64_t p1 = std::uint64_t(philox_m1) * c[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

}  // namespace detail

// One 128-bit block keyed by seed; counter words are (block, stream).
inline std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint64_t stream,
                                               std::uint64_t block) {
    std::array<std::uint32_t, 4> c = {
        static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (int r = 0; r < 10; ++r) {
        detail::philox_round(c, k0, k1);
        k0 += detail::philox_w0;
        k1 += detail::philox_w1;
    }
    return c;
}

class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream), block_(0), pos_(4) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = philox4x32(seed_, stream_, block_++);
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    // strictly inside (0,1): (x + 1/2) / 2^32
    double uniform() { return (next_u32() + 0.5) * 0x1p-32; }

    // asymmetric Laplace draw, mass xi on the negative side, from one uniform
    double sample_laplace(double xi) {
        double u = uniform();
        if (u < xi) return std::log(u / xi);
        return -std::log((1.0 - u) / (1.0 - xi));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    std::uint64_t seed_, stream_, block_;
    std::array<std::uint32_t, 4> buf_{};
    int pos_;
};

}  // namespace qpersist
