#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polarflip/code.hpp"
#include "polarflip/crc.hpp"

namespace polarflip {

/// Min-sum check update: sign(a*b) * min(|a|, |b|). Zero counts as positive.
inline double f_minsum(double a, double b) {
    const double m = std::min(std::fabs(a), std::fabs(b));
    return (a < 0.0) != (b < 0.0) ? -m : m;
}

/// Right-edge update: b + a for beta = 0, b - a for beta = 1.
inline double g_llr(double a, double b, std::uint8_t beta) {
    return beta ? b - a : b + a;
}

/// Partial-sum combine: first half beta_l ^ beta_r, second half beta_r.
BitVec combine(std::span<const std::uint8_t> beta_l, std::span<const std::uint8_t> beta_r);

/// Hard decision under the tie-to-zero convention.
inline std::uint8_t hard_decision(double alpha) { return alpha < 0.0 ? 1 : 0; }

struct DecodeResult {
    BitVec u_hat;       // length N, frozen positions are 0
    BitVec info_hat;    // u_hat restricted to the unfrozen positions
    std::size_t trials_used = 1;
    bool crc_ok = false; // true iff a CRC check passed during decoding
};

/// Successive-cancellation decoder with the flip extension. One instance
/// owns per-frame scratch and is single-threaded; use one per worker.
class ScDecoder {
public:
    explicit ScDecoder(const PolarCode& code);

    /// Plain SC pass.
    const DecodeResult& decode(std::span<const double> alpha);

    /// CRC-aided flip decoding: trial 1 records |decision LLR| for every
    /// information leaf; failing the CRC, trial t inverts the hard decision
    /// at the position with the (t-1)-th smallest recorded reliability.
    const DecodeResult& scf_decode(std::span<const double> alpha, std::size_t t_max,
                                   const CrcSpec& crc);

    /// Reliabilities recorded by the most recent trial-1 pass, one per info
    /// ordinal.
    const std::vector<double>& leaf_reliability() const { return lambda_; }

    const PolarCode& code() const { return *code_; }

private:
    void pass(std::span<const double> alpha, std::ptrdiff_t flip_u, bool record);
    void visit(std::size_t depth, std::size_t u_lo);

    const PolarCode* code_;
    std::vector<LlrVec> alpha_;   // one buffer per tree level
    BitVec cw_;                   // partial sums, codeword domain
    std::vector<double> lambda_;  // |decision LLR| per info ordinal
    std::vector<std::uint32_t> info_rank_;  // unfrozen rank per u index
    std::vector<std::uint32_t> flip_order_; // info ordinals by ascending reliability
    DecodeResult result_;
    std::ptrdiff_t flip_u_ = -1;
    bool record_ = false;
};

/// One-shot wrappers.
DecodeResult sc_decode(const PolarCode& code, std::span<const double> alpha);
DecodeResult scf_decode(const PolarCode& code, std::span<const double> alpha, std::size_t t_max,
                        const CrcSpec& crc);

} // namespace polarflip
