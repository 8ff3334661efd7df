#include "polarflip/sc.hpp"

#include <algorithm>
#include <numeric>

namespace polarflip {

BitVec combine(std::span<const std::uint8_t> beta_l, std::span<const std::uint8_t> beta_r) {
    if (beta_l.size() != beta_r.size()) throw std::invalid_argument("combine: length mismatch");
    BitVec out(beta_l.size() * 2);
    for (std::size_t i = 0; i < beta_l.size(); ++i) {
        out[i] = beta_l[i] ^ beta_r[i];
        out[i + beta_l.size()] = beta_r[i];
    }
    return out;
}

ScDecoder::ScDecoder(const PolarCode& code) : code_(&code) {
    const std::size_t n = code.n_bits();
    const unsigned levels = log2_exact(n);
    alpha_.resize(levels + 1);
    for (unsigned d = 0; d <= levels; ++d) alpha_[d].resize(n >> d);
    cw_.resize(n);
    lambda_.resize(code.k_info());
    result_.u_hat.resize(n);
    result_.info_hat.resize(code.k_info());
}

void ScDecoder::visit(std::size_t depth, std::size_t u_lo) {
    const std::size_t w = code_->n_bits() >> depth;
    LlrVec& a = alpha_[depth];
    if (w == 1) {
        std::uint8_t bit = 0;
        if (!code_->is_frozen(u_lo)) {
            bit = hard_decision(a[0]);
            if (static_cast<std::ptrdiff_t>(u_lo) == flip_u_) bit ^= 1;
            if (record_) lambda_[/* info ordinal */ info_rank_[u_lo]] = std::fabs(a[0]);
        }
        result_.u_hat[u_lo] = bit;
        cw_[u_lo] = bit;
        return;
    }
    const std::size_t half = w / 2;
    LlrVec& child = alpha_[depth + 1];
    for (std::size_t i = 0; i < half; ++i) child[i] = f_minsum(a[i], a[i + half]);
    visit(depth + 1, u_lo);
    for (std::size_t i = 0; i < half; ++i) child[i] = g_llr(a[i], a[i + half], cw_[u_lo + i]);
    visit(depth + 1, u_lo + half);
    for (std::size_t i = 0; i < half; ++i) cw_[u_lo + i] ^= cw_[u_lo + half + i];
}

void ScDecoder::pass(std::span<const double> alpha, std::ptrdiff_t flip_u, bool record) {
    if (alpha.size() != code_->n_bits()) throw std::invalid_argument("sc_decode: LLR length must be N");
    if (info_rank_.empty()) {
        info_rank_.resize(code_->n_bits(), 0);
        std::uint32_t rank = 0;
        for (std::size_t i = 0; i < code_->n_bits(); ++i) {
            info_rank_[i] = rank;
            if (!code_->is_frozen(i)) ++rank;
        }
    }
    std::copy(alpha.begin(), alpha.end(), alpha_[0].begin());
    flip_u_ = flip_u;
    record_ = record;
    visit(0, 0);
    const auto& pos = code_->info_positions();
    for (std::size_t d = 0; d < pos.size(); ++d) result_.info_hat[d] = result_.u_hat[pos[d]];
}

const DecodeResult& ScDecoder::decode(std::span<const double> alpha) {
    pass(alpha, -1, false);
    result_.trials_used = 1;
    result_.crc_ok = false;
    return result_;
}

const DecodeResult& ScDecoder::scf_decode(std::span<const double> alpha, std::size_t t_max,
                                          const CrcSpec& crc) {
    if (t_max < 1) throw std::invalid_argument("scf_decode: t_max must be >= 1");
    pass(alpha, -1, true);
    result_.trials_used = 1;
    result_.crc_ok = crc.width > 0 && crc_check(result_.info_hat, crc);
    if (crc.width == 0 || result_.crc_ok || t_max == 1) return result_;

    // Information ordinals by ascending recorded reliability, ties by ordinal.
    flip_order_.resize(code_->k_info());
    std::iota(flip_order_.begin(), flip_order_.end(), 0);
    const std::size_t n_candidates = std::min(t_max - 1, flip_order_.size());
    std::partial_sort(flip_order_.begin(), flip_order_.begin() + n_candidates, flip_order_.end(),
                      [&](std::uint32_t x, std::uint32_t y) {
                          if (lambda_[x] != lambda_[y]) return lambda_[x] < lambda_[y];
                          return x < y;
                      });

    for (std::size_t t = 2; t <= t_max; ++t) {
        if (t - 2 >= n_candidates) break;
        const std::size_t flip_u = code_->info_positions()[flip_order_[t - 2]];
        pass(alpha, static_cast<std::ptrdiff_t>(flip_u), false);
        result_.trials_used = t;
        result_.crc_ok = crc_check(result_.info_hat, crc);
        if (result_.crc_ok) return result_;
    }
    return result_;
}

DecodeResult sc_decode(const PolarCode& code, std::span<const double> alpha) {
    ScDecoder dec(code);
    return dec.decode(alpha);
}

DecodeResult scf_decode(const PolarCode& code, std::span<const double> alpha, std::size_t t_max,
                        const CrcSpec& crc) {
    ScDecoder dec(code);
    return dec.scf_decode(alpha, t_max, crc);
}

} // namespace polarflip
