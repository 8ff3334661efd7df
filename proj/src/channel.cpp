#include "polarflip/channel.hpp"

namespace polarflip {

LlrVec modulate_bpsk(std::span<const std::uint8_t> bits) {
    LlrVec symbols(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) symbols[i] = (bits[i] & 1) ? -1.0 : 1.0;
    return symbols;
}

LlrVec transmit_awgn(std::span<const double> symbols, double sigma, FrameRng& rng) {
    if (sigma < 0.0) throw std::invalid_argument("transmit_awgn: sigma must be non-negative");
    LlrVec y(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) y[i] = symbols[i] + sigma * rng.gaussian();
    return y;
}

LlrVec llr_from_channel(std::span<const double> y, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("llr_from_channel: sigma must be positive");
    const double scale = 2.0 / (sigma * sigma);
    LlrVec alpha(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) alpha[i] = scale * y[i];
    return alpha;
}

} // namespace polarflip
