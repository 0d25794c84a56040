#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace permsim::shadows {

/// Philox4x32-10 counter-based generator.
///
/// The key is the 64-bit seed; the counter holds a 64-bit block index and a
/// 64-bit stream id, so Philox4x32(seed, i) gives independent substreams for
/// every snapshot index i. Satisfies UniformRandomBitGenerator.
class Philox4x32 {
  public:
    using result_type = std::uint32_t;
    using Counter     = std::array<std::uint32_t, 4>;
    using Key         = std::array<std::uint32_t, 2>;

    explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

    /// The ten-round bijection on one counter block.
    static Counter block(Counter ctr, Key key) {
        for(int round = 0; round < 10; ++round) {
            if(round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if(pos_ == 4) refill();
        return buffer_[static_cast<std::size_t>(pos_++)];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = (*this)();
        const std::uint64_t hi = (*this)();
        return (hi << 32) | lo;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    void refill() {
        buffer_ = block(ctr_, key_);
        if(++ctr_[0] == 0) ++ctr_[1];
        pos_ = 0;
    }

    Key     key_;
    Counter ctr_;
    Counter buffer_{};
    int     pos_{4};
};

} // namespace permsim::shadows
