#include "polarflip/crc.hpp"

namespace polarflip {

std::uint64_t crc_compute(std::span<const std::uint8_t> bits, const CrcSpec& spec) {
    if (spec.width == 0) return 0;
    if (spec.width > 63) throw std::invalid_argument("crc_compute: width must be <= 63");
    const std::uint64_t top = std::uint64_t{1} << (spec.width - 1);
    const std::uint64_t mask = (std::uint64_t{1} << spec.width) - 1;
    std::uint64_t reg = spec.init & mask;
    for (std::uint8_t b : bits) {
        const bool feedback = ((reg & top) != 0) != ((b & 1) != 0);
        reg = (reg << 1) & mask;
        if (feedback) reg ^= spec.poly & mask;
    }
    reg ^= spec.final_xor & mask;
    if (spec.reflect) {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < spec.width; ++i)
            if (reg & (std::uint64_t{1} << i)) r |= std::uint64_t{1} << (spec.width - 1 - i);
        reg = r;
    }
    return reg;
}

BitVec crc_attach(std::span<const std::uint8_t> payload, const CrcSpec& spec) {
    BitVec out(payload.begin(), payload.end());
    if (spec.width == 0) return out;
    const std::uint64_t crc = crc_compute(payload, spec);
    for (std::size_t i = 0; i < spec.width; ++i)
        out.push_back(static_cast<std::uint8_t>((crc >> (spec.width - 1 - i)) & 1));
    return out;
}

bool crc_check(std::span<const std::uint8_t> block, const CrcSpec& spec) {
    if (spec.width == 0) return true;
    if (block.size() < spec.width) throw std::invalid_argument("crc_check: block shorter than CRC");
    const std::uint64_t crc = crc_compute(block.first(block.size() - spec.width), spec);
    for (std::size_t i = 0; i < spec.width; ++i) {
        const std::uint8_t expect = static_cast<std::uint8_t>((crc >> (spec.width - 1 - i)) & 1);
        if ((block[block.size() - spec.width + i] & 1) != expect) return false;
    }
    return true;
}

} // namespace polarflip
