#include "polarflip/fast_ssc.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace polarflip {

void DecisionList::insert(const DecisionEntry& e) {
    if (capacity_ == 0) return;
    if (entries_.size() == capacity_ && !decision_less(e, entries_.back())) return;
    auto it = std::upper_bound(entries_.begin(), entries_.end(), e, decision_less);
    entries_.insert(it, e);
    if (entries_.size() > capacity_) entries_.pop_back();
}

void decode_rate1(std::span<const double> alpha, std::optional<std::size_t> flip,
                  std::span<std::uint8_t> beta, std::vector<double>* lambdas) {
    const std::size_t w = alpha.size();
    if (beta.size() != w) throw std::invalid_argument("decode_rate1: beta length mismatch");
    if (flip && *flip >= w) throw std::invalid_argument("decode_rate1: flip index out of range");
    for (std::size_t i = 0; i < w; ++i) {
        beta[i] = hard_decision(alpha[i]);
        if (lambdas) lambdas->push_back(std::fabs(alpha[i]));
    }
    if (flip) beta[*flip] ^= 1;
}

void decode_rep(std::span<const double> alpha, std::optional<std::size_t> flip,
                std::span<std::uint8_t> beta, std::vector<double>* lambdas) {
    const std::size_t w = alpha.size();
    if (beta.size() != w) throw std::invalid_argument("decode_rep: beta length mismatch");
    double sum = 0.0;
    for (double a : alpha) sum += a;
    std::uint8_t bit = hard_decision(sum);
    if (flip) bit ^= 1;
    std::memset(beta.data(), bit, w);
    if (lambdas) lambdas->push_back(std::fabs(sum));
}

void decode_birep(std::span<const double> alpha, std::optional<std::size_t> flip,
                  std::span<std::uint8_t> beta, std::vector<double>* lambdas) {
    const std::size_t w = alpha.size();
    if (w < 4 || w % 2 != 0) throw std::invalid_argument("decode_birep: width must be even and >= 4");
    if (beta.size() != w) throw std::invalid_argument("decode_birep: beta length mismatch");
    if (flip && *flip >= 2) throw std::invalid_argument("decode_birep: flip selector must be 0 or 1");
    double sum_even = 0.0, sum_odd = 0.0;
    for (std::size_t i = 0; i < w; i += 2) {
        sum_even += alpha[i];
        sum_odd += alpha[i + 1];
    }
    std::uint8_t bit_even = hard_decision(sum_even);
    std::uint8_t bit_odd = hard_decision(sum_odd);
    if (flip) (*flip == 0 ? bit_even : bit_odd) ^= 1;
    for (std::size_t i = 0; i < w; i += 2) {
        beta[i] = bit_even;
        beta[i + 1] = bit_odd;
    }
    if (lambdas) {
        lambdas->push_back(std::fabs(sum_even));
        lambdas->push_back(std::fabs(sum_odd));
    }
}

void decode_spc(std::span<const double> alpha, double s_factor, std::optional<std::size_t> flip,
                std::span<std::uint8_t> beta, std::vector<double>* lambdas) {
    const std::size_t w = alpha.size();
    if (w < 2) throw std::invalid_argument("decode_spc: width must be >= 2");
    if (beta.size() != w) throw std::invalid_argument("decode_spc: beta length mismatch");
    if (flip && (*flip == 0 || *flip >= w))
        throw std::invalid_argument("decode_spc: flip must target an information position");

    std::uint8_t parity = 0;
    std::size_t i_min1 = 0, i_min2 = 0;
    double m1 = std::numeric_limits<double>::infinity();
    double m2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w; ++i) {
        beta[i] = hard_decision(alpha[i]);
        parity ^= beta[i];
        const double mag = std::fabs(alpha[i]);
        if (mag < m1) {
            m2 = m1; i_min2 = i_min1;
            m1 = mag; i_min1 = i;
        } else if (mag < m2) {
            m2 = mag; i_min2 = i;
        }
    }
    if (parity) beta[i_min1] ^= 1; // single-flip rule, keeps the parity even

    if (flip) {
        if (*flip == i_min1) {
            beta[i_min1] ^= 1;
            beta[i_min2] ^= 1;
        } else {
            beta[*flip] ^= 1;
            beta[i_min1] ^= 1;
        }
    }

    if (lambdas) {
        const double offset = (parity ? -s_factor : s_factor) * m1;
        for (std::size_t d = 0; d + 1 < w; ++d) lambdas->push_back(std::fabs(alpha[d + 1]) + offset);
    }
}

FastSscDecoder::FastSscDecoder(const PolarCode& code, const DecoderTree& tree, double s_factor,
                               std::size_t t_max)
    : code_(&code), tree_(&tree), s_factor_(s_factor), t_max_(t_max),
      list_(t_max > 0 ? t_max - 1 : 0) {
    if (tree.n_bits != code.n_bits())
        throw std::invalid_argument("FastSscDecoder: tree and code lengths differ");
    if (t_max < 1) throw std::invalid_argument("FastSscDecoder: t_max must be >= 1");
    const std::size_t n = code.n_bits();
    const unsigned levels = log2_exact(n);
    alpha_.resize(levels + 1);
    for (unsigned d = 0; d <= levels; ++d) alpha_[d].resize(n >> d);
    cw_.resize(n);
    result_.u_hat.resize(n);
    result_.info_hat.resize(code.k_info());
}

void FastSscDecoder::visit(std::uint32_t node_id, std::size_t depth, bool build_list,
                           const FlipTarget* flip) {
    const TreeNode& node = tree_->nodes[node_id];
    const std::size_t w = node.width;
    const std::size_t lo = node.u_lo;
    LlrVec& a = alpha_[depth];

    if (node.is_leaf()) {
        if (node.kind == NodeKind::Rate0) {
            std::memset(cw_.data() + lo, 0, w);
            return;
        }
        std::optional<std::size_t> local_flip;
        if (flip && flip->node_id == node_id) {
            // SPC decisions are indexed past the frozen position 0.
            local_flip = node.kind == NodeKind::Spc ? flip->local_d + 1 : flip->local_d;
        }
        std::span<const double> in(a.data(), w);
        std::span<std::uint8_t> beta(cw_.data() + lo, w);
        std::vector<double>* lam = nullptr;
        if (build_list) {
            lambda_scratch_.clear();
            lam = &lambda_scratch_;
        }
        switch (node.kind) {
            case NodeKind::Rate1: decode_rate1(in, local_flip, beta, lam); break;
            case NodeKind::Rep: decode_rep(in, local_flip, beta, lam); break;
            case NodeKind::Birep: decode_birep(in, local_flip, beta, lam); break;
            case NodeKind::Spc: decode_spc(in, s_factor_, local_flip, beta, lam); break;
            default: break;
        }
        if (build_list)
            for (std::uint32_t d = 0; d < node.k_v; ++d)
                list_.insert({lambda_scratch_[d], node_id, d, node.info_base + d});
        return;
    }

    const std::size_t half = w / 2;
    const auto left = static_cast<std::uint32_t>(node.left);
    const auto right = static_cast<std::uint32_t>(node.right);
    LlrVec& child = alpha_[depth + 1];

    if (tree_->nodes[left].kind == NodeKind::Rate0) {
        // No LLRs needed: the left estimate is known to be all-zero.
        std::memset(cw_.data() + lo, 0, half);
    } else {
        for (std::size_t i = 0; i < half; ++i) child[i] = f_minsum(a[i], a[i + half]);
        visit(left, depth + 1, build_list, flip);
    }
    if (tree_->nodes[right].kind == NodeKind::Rate0) {
        std::memset(cw_.data() + lo + half, 0, half);
    } else {
        for (std::size_t i = 0; i < half; ++i) child[i] = g_llr(a[i], a[i + half], cw_[lo + i]);
        visit(right, depth + 1, build_list, flip);
    }
    for (std::size_t i = 0; i < half; ++i) cw_[lo + i] ^= cw_[lo + half + i];
}

void FastSscDecoder::finish() {
    // Leaf betas live in the codeword domain; one global transform recovers
    // u since the per-leaf inverse transforms compose to it.
    std::copy(cw_.begin(), cw_.end(), result_.u_hat.begin());
    polar_transform_inplace(result_.u_hat);
    const auto& pos = code_->info_positions();
    for (std::size_t d = 0; d < pos.size(); ++d) result_.info_hat[d] = result_.u_hat[pos[d]];
}

const DecodeResult& FastSscDecoder::decode(std::span<const double> alpha,
                                           std::optional<FlipTarget> flip) {
    if (alpha.size() != code_->n_bits())
        throw std::invalid_argument("fast_ssc_decode: LLR length must be N");
    if (flip && flip->node_id >= tree_->nodes.size())
        throw std::invalid_argument("fast_ssc_decode: flip node not in tree");
    std::copy(alpha.begin(), alpha.end(), alpha_[0].begin());
    const bool build_list = !flip.has_value();
    if (build_list) list_.clear();
    visit(0, 0, build_list, flip ? &*flip : nullptr);
    finish();
    result_.trials_used = 1;
    result_.crc_ok = false;
    return result_;
}

const DecodeResult& FastSscDecoder::flip_decode(std::span<const double> alpha, const CrcSpec& crc) {
    decode(alpha);
    result_.crc_ok = crc.width > 0 && crc_check(result_.info_hat, crc);
    if (crc.width == 0 || result_.crc_ok || t_max_ == 1) return result_;

    for (std::size_t t = 2; t <= t_max_; ++t) {
        if (t - 2 >= list_.size()) break;
        const DecisionEntry& e = list_[t - 2];
        std::copy(alpha.begin(), alpha.end(), alpha_[0].begin());
        FlipTarget target{e.node_id, e.local_d};
        visit(0, 0, false, &target);
        finish();
        result_.trials_used = t;
        result_.crc_ok = crc_check(result_.info_hat, crc);
        if (result_.crc_ok) return result_;
    }
    return result_;
}

FastDecodeOutput fast_ssc_decode(const PolarCode& code, const DecoderTree& tree,
                                 std::span<const double> alpha, std::optional<FlipTarget> flip,
                                 double s_factor, std::size_t t_max) {
    FastSscDecoder dec(code, tree, s_factor, t_max);
    FastDecodeOutput out{dec.decode(alpha, flip), dec.decision_list()};
    return out;
}

DecodeResult fast_ssc_flip_decode(const PolarCode& code, const DecoderTree& tree,
                                  std::span<const double> alpha, std::size_t t_max,
                                  double s_factor, const CrcSpec& crc) {
    FastSscDecoder dec(code, tree, s_factor, t_max);
    return dec.flip_decode(alpha, crc);
}

} // namespace polarflip
