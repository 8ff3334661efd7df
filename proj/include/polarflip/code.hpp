#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "polarflip/bits.hpp"

namespace polarflip {

/// Static definition of an (N, k) polar code: block length, number of
/// unfrozen positions (payload + CRC) and the frozen index set.
class PolarCode {
public:
    PolarCode(std::size_t n_bits, std::size_t k_info, std::vector<std::uint32_t> frozen,
              std::size_t crc_bits = 0);

    std::size_t n_bits() const { return n_bits_; }
    std::size_t k_info() const { return k_info_; }
    std::size_t crc_bits() const { return crc_bits_; }
    std::size_t k_payload() const { return k_info_ - crc_bits_; }
    double rate() const { return static_cast<double>(k_info_) / static_cast<double>(n_bits_); }
    double payload_rate() const { return static_cast<double>(k_payload()) / static_cast<double>(n_bits_); }

    bool is_frozen(std::size_t i) const { return frozen_mask_[i] != 0; }
    const std::vector<std::uint32_t>& frozen() const { return frozen_; }
    const std::vector<std::uint8_t>& frozen_mask() const { return frozen_mask_; }
    /// Unfrozen u-domain positions in ascending order; info bit d lives at info_positions()[d].
    const std::vector<std::uint32_t>& info_positions() const { return info_positions_; }
    /// u-domain index of the first information bit (b in the latency model).
    std::size_t first_info_bit() const { return info_positions_.front(); }

private:
    std::size_t n_bits_;
    std::size_t k_info_;
    std::size_t crc_bits_;
    std::vector<std::uint32_t> frozen_;
    std::vector<std::uint8_t> frozen_mask_;
    std::vector<std::uint32_t> info_positions_;
};

/// Per-position mean LLRs of the bit channels under the Gaussian
/// approximation of density evolution, for an AWGN channel with noise
/// standard deviation sigma and BPSK signaling. Natural (non bit-reversed)
/// u-domain indexing; larger mean = more reliable.
std::vector<double> ga_bit_channel_means(std::size_t n_bits, double sigma);

/// Builds an (n_bits, k_info) code by freezing the N-k least reliable
/// positions under the Gaussian approximation. The design point is an
/// Eb/N0 in dB converted with rate k_info/n_bits. Ties in reliability are
/// broken toward freezing the lower index. Deterministic.
PolarCode construct_frozen_set(std::size_t n_bits, std::size_t k_info, double design_ebn0_db,
                               std::size_t crc_bits = 0);

/// Reads a frozen-set file: a header line "N=<int> k=<int> crc=<int>"
/// followed by one frozen u-domain index per line. Blank lines are ignored.
PolarCode load_frozen_set(const std::filesystem::path& path);

/// Writes the format accepted by load_frozen_set.
void save_frozen_set(const PolarCode& code, const std::filesystem::path& path);

/// Non-systematic encoding: scatters the k info bits into the unfrozen
/// positions of u in ascending index order, zeros the frozen positions,
/// and applies the polar transform.
BitVec encode(const PolarCode& code, std::span<const std::uint8_t> info);

} // namespace polarflip
