#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace polarflip {

using BitVec = std::vector<std::uint8_t>;
using LlrVec = std::vector<double>;

constexpr bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline unsigned log2_exact(std::size_t v) {
    if (!is_power_of_two(v)) throw std::invalid_argument("length must be a power of two");
    unsigned n = 0;
    while ((std::size_t{1} << n) < v) ++n;
    return n;
}

/// In-place polar transform v <- v * F^(x)n over GF(2), butterfly form.
/// F^(x)n is an involution, so this doubles as its own inverse.
inline void polar_transform_inplace(std::span<std::uint8_t> v) {
    const std::size_t n = v.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("polar_transform: length must be a power of two");
    for (std::size_t len = 1; len < n; len <<= 1)
        for (std::size_t blk = 0; blk < n; blk += 2 * len)
            for (std::size_t i = blk; i < blk + len; ++i)
                v[i] ^= v[i + len];
}

inline BitVec polar_transform(BitVec v) {
    polar_transform_inplace(v);
    return v;
}

inline std::size_t hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

} // namespace polarflip
