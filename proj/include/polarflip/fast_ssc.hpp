#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polarflip/crc.hpp"
#include "polarflip/sc.hpp"
#include "polarflip/tree.hpp"

namespace polarflip {

/// One flip candidate: reliability, owning node, decision index within the
/// node, and the global info ordinal (used for reporting and tie-breaking).
struct DecisionEntry {
    double lambda = 0.0;
    std::uint32_t node_id = 0;
    std::uint32_t local_d = 0;
    std::uint32_t info_index = 0;
};

inline bool decision_less(const DecisionEntry& a, const DecisionEntry& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.info_index < b.info_index;
}

/// Bounded list of flip candidates kept sorted ascending by (lambda,
/// info_index). Capacity T_max - 1.
class DecisionList {
public:
    explicit DecisionList(std::size_t capacity = 0) : capacity_(capacity) {
        entries_.reserve(capacity);
    }

    void clear() { entries_.clear(); }
    void insert(const DecisionEntry& e);

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const DecisionEntry& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<DecisionEntry>& entries() const { return entries_; }

private:
    std::size_t capacity_;
    std::vector<DecisionEntry> entries_;
};

struct FlipTarget {
    std::uint32_t node_id = 0;
    std::uint32_t local_d = 0;
};

/// Constituent-code decoders. Each writes the node codeword estimate into
/// `beta` and, when `lambdas` is non-null, appends its k_v decision
/// reliabilities in decision order d = 0..k_v-1.

/// Rate-1: beta[i] = HD(alpha[i]), lambda_d = |alpha_d|; a flip inverts
/// beta[flip] after decoding.
void decode_rate1(std::span<const double> alpha, std::optional<std::size_t> flip,
                  std::span<std::uint8_t> beta, std::vector<double>* lambdas = nullptr);

/// Repetition: one decision on the sum of all inputs; a flip inverts every
/// beta entry.
void decode_rep(std::span<const double> alpha, std::optional<std::size_t> flip,
                std::span<std::uint8_t> beta, std::vector<double>* lambdas = nullptr);

/// Birepetition: two interleaved repetition codes; d = 0 is the even-indexed
/// one. A flip inverts the selected interleaved half.
void decode_birep(std::span<const double> alpha, std::optional<std::size_t> flip,
                  std::span<std::uint8_t> beta, std::vector<double>* lambdas = nullptr);

/// Single parity check: hard decisions, with the least-reliable position
/// inverted when the parity fails. lambda_d = |alpha_(d+1)| +
/// s*(-1)^p*min|alpha|. A flip inverts two positions so the output parity
/// stays even: {flip, i_min2} when flip is the least-reliable index,
/// {flip, i_min1} otherwise. flip = 0 (the frozen position) is invalid.
void decode_spc(std::span<const double> alpha, double s_factor, std::optional<std::size_t> flip,
                std::span<std::uint8_t> beta, std::vector<double>* lambdas = nullptr);

/// Tree-pruned decoder with per-node flip support. One instance owns
/// per-frame scratch and is single-threaded; use one per worker.
class FastSscDecoder {
public:
    FastSscDecoder(const PolarCode& code, const DecoderTree& tree, double s_factor = 1.0,
                   std::size_t t_max = 1);

    /// One decoding pass. Without a flip target this is the trial-1 pass and
    /// rebuilds the decision list; with one, the targeted node applies its
    /// flip rule and the list is left untouched.
    const DecodeResult& decode(std::span<const double> alpha,
                               std::optional<FlipTarget> flip = std::nullopt);

    /// CRC-aided trial loop: trial 1 builds the list, trial t >= 2 re-decodes
    /// flipping list entry t-2. Stops on CRC pass or after t_max trials.
    const DecodeResult& flip_decode(std::span<const double> alpha, const CrcSpec& crc);

    const DecisionList& decision_list() const { return list_; }
    const PolarCode& code() const { return *code_; }
    const DecoderTree& tree() const { return *tree_; }
    double s_factor() const { return s_factor_; }
    std::size_t t_max() const { return t_max_; }

private:
    void visit(std::uint32_t node_id, std::size_t depth, bool build_list, const FlipTarget* flip);
    void finish();

    const PolarCode* code_;
    const DecoderTree* tree_;
    double s_factor_;
    std::size_t t_max_;
    std::vector<LlrVec> alpha_;  // one buffer per tree level
    BitVec cw_;                  // leaf codeword estimates / partial sums
    std::vector<double> lambda_scratch_;
    DecisionList list_;
    DecodeResult result_;
};

/// One-shot wrappers.
struct FastDecodeOutput {
    DecodeResult result;
    DecisionList list;
};

FastDecodeOutput fast_ssc_decode(const PolarCode& code, const DecoderTree& tree,
                                 std::span<const double> alpha,
                                 std::optional<FlipTarget> flip = std::nullopt,
                                 double s_factor = 1.0, std::size_t t_max = 1);

DecodeResult fast_ssc_flip_decode(const PolarCode& code, const DecoderTree& tree,
                                  std::span<const double> alpha, std::size_t t_max,
                                  double s_factor, const CrcSpec& crc);

} // namespace polarflip
