#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace dfnoma {

/// splitmix64 finalizer; used to spread structured ids over the stream space.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Philox 4x32-10 counter-based block cipher. The 64-bit key is the seed; the
/// upper counter half carries the stream id, the lower half the block index,
/// so any (seed, stream) pair names an independent 2^64-block sequence that
/// can be regenerated from scratch at any offset.
class Philox4x32 {
public:
    Philox4x32(std::uint64_t key, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
          stream_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

    std::array<std::uint32_t, 4> block(std::uint64_t index) const {
        std::array<std::uint32_t, 4> x{static_cast<std::uint32_t>(index),
                                       static_cast<std::uint32_t>(index >> 32), stream_[0],
                                       stream_[1]};
        std::uint32_t k0 = key_[0];
        std::uint32_t k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * x[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * x[2];
            x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k0,
                 static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k1,
                 static_cast<std::uint32_t>(p0)};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return x;
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> stream_;
};

/// Buffered draw interface over one Philox stream, with uniform and normal
/// variates. Identical (seed, stream_id) replays the identical sequence.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) : gen_(seed, stream_id) {}

    std::uint32_t next_u32() {
        if (index_ == 4) {
            buffer_ = gen_.block(block_++);
            index_ = 0;
        }
        return buffer_[index_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        return lo | (std::uint64_t{next_u32()} << 32);
    }

    /// Uniform on (0, 1), 53-bit resolution, endpoints excluded.
    double u01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; the second variate of each pair is
    /// cached, so draws alternate between one and zero uniform consumptions.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(u01()));
        const double theta = 2.0 * std::numbers::pi * u01();
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    Philox4x32 gen_;
    std::array<std::uint32_t, 4> buffer_{};
    std::uint64_t block_ = 0;
    int index_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace dfnoma
