#pragma once

#include <cstdint>

#include "polarflip/tree.hpp"

namespace polarflip {

struct HwParams {
    std::size_t p_lanes = 64;   // LLRs processed per clock cycle
    std::size_t q_lambda = 8;   // bits per stored decision LLR
    std::size_t t_max = 8;
};

/// Clock cycles of one pass of the reference semi-parallel SC decoder:
/// 2N + (N/64) log2(N/256) - sum_i floor(b/2^i) ceil(2^i/64), where b is
/// the index of the first information bit. The 64 is part of that
/// architecture and independent of the configurable P.
double sc_latency_semiparallel(std::size_t n_bits, std::size_t b_first_info);

/// Worst case of the trial loop: t_max passes.
double scf_worst_case(std::size_t t_max, double per_trial_cc);

/// Cycle model for one pass of the tree-pruned decoder. Costs, with
/// P = hw.p_lanes:
///   - f and g producing N_v/2 LLRs: ceil((N_v/2)/P) each; a Rate-0 child is
///     never visited, so the edge feeding one is free
///   - combine producing its N_v/2 fresh partial sums: ceil((N_v/2)/P),
///     free when either child is Rate-0
///   - Rate-0 leaf: 0; Rate-1/Rep/Birep leaf: ceil(N_v/P)
///   - SPC leaf: ceil(N_v/P) + 1 (parity and candidate selection)
/// `calibration` scales the total (default 1.0).
double fast_ssc_latency(const DecoderTree& tree, const HwParams& hw, double calibration = 1.0);

struct MemoryEstimate {
    std::size_t lambda_bits = 0; // Q_lambda * (T_max - 1)
    std::size_t index_bits = 0;  // (T_max - 1) * ceil(log2 k)
};

MemoryEstimate memory_estimate(const PolarCode& code, const HwParams& hw);

/// avg_trials * per_trial_cc.
double average_execution(double avg_trials, double per_trial_cc);

} // namespace polarflip
