#pragma once

#include <cstdint>
#include <span>

#include "polarflip/bits.hpp"

namespace polarflip {

/// Bit-serial CRC parameters. The register is processed MSB-first over the
/// input bit stream; `reflect` reverses the emitted checksum bit order and
/// `final_xor` is applied to the register before emission.
struct CrcSpec {
    std::size_t width = 16;
    std::uint64_t poly = 0x1021;  // generator without the leading x^width term
    std::uint64_t init = 0;
    bool reflect = false;
    std::uint64_t final_xor = 0;

    static CrcSpec ccitt16() { return CrcSpec{}; }
    static CrcSpec none() { return CrcSpec{0, 0, 0, false, 0}; }
};

/// CRC register value over a bit sequence.
std::uint64_t crc_compute(std::span<const std::uint8_t> bits, const CrcSpec& spec);

/// payload followed by its checksum bits, MSB first.
BitVec crc_attach(std::span<const std::uint8_t> payload, const CrcSpec& spec);

/// True iff the trailing spec.width bits match the CRC of the prefix.
/// A zero-width spec always passes.
bool crc_check(std::span<const std::uint8_t> block, const CrcSpec& spec);

} // namespace polarflip
