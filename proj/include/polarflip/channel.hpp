#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "polarflip/bits.hpp"

namespace polarflip {

/// SplitMix64: the per-substream generator. Substreams are keyed from
/// (seed, point, frame) so that simulation results do not depend on how
/// frames are scheduled across workers.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random mantissa bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint8_t bit() { return static_cast<std::uint8_t>(next() & 1u); }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Substream key for frame `frame` of grid point `point` under `seed`.
inline std::uint64_t substream_key(std::uint64_t seed, std::uint64_t point, std::uint64_t frame) {
    std::uint64_t k = mix64(seed + 0x9E3779B97F4A7C15ULL);
    k = mix64(k ^ (point + 0xBF58476D1CE4E5B9ULL));
    k = mix64(k ^ (frame + 0x94D049BB133111EBULL));
    return k;
}

/// Per-frame random stream: payload bits and Gaussian noise. Normals come
/// from the trigonometric Box-Muller transform; each pair consumes exactly
/// two 64-bit draws, so the draw order is fixed per release.
class FrameRng {
public:
    explicit FrameRng(std::uint64_t key) : gen_(key) {}
    FrameRng(std::uint64_t seed, std::uint64_t point, std::uint64_t frame)
        : gen_(substream_key(seed, point, frame)) {}

    std::uint8_t bit() { return gen_.bit(); }
    double uniform01() { return gen_.uniform01(); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] keeps the log finite.
        const double u1 = (static_cast<double>(gen_.next() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = gen_.uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    SplitMix64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Noise standard deviation for a given Eb/N0 (dB) and code rate:
/// sigma = sqrt(1 / (2 * rate * 10^(ebn0/10))).
inline double sigma_from_ebn0(double ebn0_db, double rate) {
    if (rate <= 0.0) throw std::invalid_argument("sigma_from_ebn0: rate must be positive");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

struct ChannelParams {
    double ebn0_db = 0.0;
    double rate = 1.0;      // payload rate k_payload / N
    std::uint64_t seed = 1;

    double sigma() const { return sigma_from_ebn0(ebn0_db, rate); }
};

/// BPSK mapping: bit 0 -> +1.0, bit 1 -> -1.0.
LlrVec modulate_bpsk(std::span<const std::uint8_t> bits);

/// y[i] = s[i] + n[i] with n ~ N(0, sigma^2) drawn from `rng` in order.
LlrVec transmit_awgn(std::span<const double> symbols, double sigma, FrameRng& rng);

/// Channel LLRs for BPSK over AWGN: alpha[i] = 2 y[i] / sigma^2.
/// Positive values favor bit 0.
LlrVec llr_from_channel(std::span<const double> y, double sigma);

} // namespace polarflip
