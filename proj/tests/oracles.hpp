#pragma once

// Test-only reference implementations, kept independent of the library's
// decoding paths: plain recursive formulations with per-call allocation and
// no buffer reuse.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "polarflip/code.hpp"
#include "polarflip/tree.hpp"

namespace oracle {

using polarflip::BitVec;
using polarflip::LlrVec;

// GF(2) polynomial long division remainder: payload * x^width mod generator.
inline BitVec crc_longdiv(const BitVec& payload, std::size_t width, std::uint64_t poly) {
    BitVec dividend(payload);
    dividend.resize(payload.size() + width, 0);
    BitVec gen(width + 1);
    gen[0] = 1;
    for (std::size_t i = 0; i < width; ++i) gen[i + 1] = (poly >> (width - 1 - i)) & 1;
    for (std::size_t i = 0; i + width < dividend.size(); ++i)
        if (dividend[i])
            for (std::size_t j = 0; j <= width; ++j) dividend[i + j] ^= gen[j];
    return BitVec(dividend.end() - static_cast<std::ptrdiff_t>(width), dividend.end());
}

// Dense F^(x)n product, quadratic on purpose.
inline BitVec transform_matrix(const BitVec& u) {
    const std::size_t n = u.size();
    BitVec x(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        std::uint8_t acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            if ((j & ~i) == 0) acc ^= u[i]; // F^n[i][j] = 1 iff bits(j) subset of bits(i)
        x[j] = acc;
    }
    return x;
}

inline double f_ref(double a, double b) {
    const double s = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
    return s * std::min(std::fabs(a), std::fabs(b));
}

struct ScRef {
    const std::vector<std::uint8_t>* frozen_mask;
    BitVec u_hat{};
    LlrVec leaf_llr{}; // decision LLR seen at each u position
    std::ptrdiff_t flip_u = -1;
    bool genie_all_zero = false; // force every decision to the true all-zero bit

    BitVec run(const LlrVec& alpha) {
        u_hat.assign(alpha.size(), 0);
        leaf_llr.assign(alpha.size(), 0.0);
        return rec(alpha, 0);
    }

    BitVec rec(const LlrVec& a, std::size_t lo) {
        if (a.size() == 1) {
            leaf_llr[lo] = a[0];
            std::uint8_t bit = 0;
            if (!(*frozen_mask)[lo]) {
                bit = a[0] < 0 ? 1 : 0;
                if (static_cast<std::ptrdiff_t>(lo) == flip_u) bit ^= 1;
                if (genie_all_zero) bit = 0;
            }
            u_hat[lo] = bit;
            return {bit};
        }
        const std::size_t half = a.size() / 2;
        LlrVec al(half), ar(half);
        for (std::size_t i = 0; i < half; ++i) al[i] = f_ref(a[i], a[i + half]);
        BitVec bl = rec(al, lo);
        for (std::size_t i = 0; i < half; ++i) ar[i] = bl[i] ? a[i + half] - a[i] : a[i + half] + a[i];
        BitVec br = rec(ar, lo + half);
        BitVec out(a.size());
        for (std::size_t i = 0; i < half; ++i) {
            out[i] = bl[i] ^ br[i];
            out[i + half] = br[i];
        }
        return out;
    }
};

struct RefLambda {
    double lambda;
    std::uint32_t info_index;
};

// Walks the pruned tree with fresh vectors, emitting every leaf decision
// reliability; returns the root-level codeword estimate.
struct FastRef {
    const polarflip::DecoderTree* tree;
    double s_factor = 1.0;
    std::vector<RefLambda> lambdas{};

    BitVec run(const LlrVec& alpha) {
        lambdas.clear();
        return rec(0, alpha);
    }

    BitVec rec(std::uint32_t id, const LlrVec& a) {
        const auto& node = tree->nodes[id];
        const std::size_t w = node.width;
        using polarflip::NodeKind;
        switch (node.kind) {
            case NodeKind::Rate0: return BitVec(w, 0);
            case NodeKind::Rate1: {
                BitVec beta(w);
                for (std::size_t i = 0; i < w; ++i) {
                    beta[i] = a[i] < 0;
                    lambdas.push_back({std::fabs(a[i]), node.info_base + static_cast<std::uint32_t>(i)});
                }
                return beta;
            }
            case NodeKind::Rep: {
                double sum = 0;
                for (double v : a) sum += v;
                lambdas.push_back({std::fabs(sum), node.info_base});
                return BitVec(w, sum < 0 ? 1 : 0);
            }
            case NodeKind::Birep: {
                double se = 0, so = 0;
                for (std::size_t i = 0; i < w; i += 2) { se += a[i]; so += a[i + 1]; }
                lambdas.push_back({std::fabs(se), node.info_base});
                lambdas.push_back({std::fabs(so), node.info_base + 1});
                BitVec beta(w);
                for (std::size_t i = 0; i < w; i += 2) {
                    beta[i] = se < 0;
                    beta[i + 1] = so < 0;
                }
                return beta;
            }
            case NodeKind::Spc: {
                BitVec beta(w);
                std::uint8_t p = 0;
                std::size_t imin = 0;
                for (std::size_t i = 0; i < w; ++i) {
                    beta[i] = a[i] < 0;
                    p ^= beta[i];
                    if (std::fabs(a[i]) < std::fabs(a[imin])) imin = i;
                }
                const double offset = (p ? -s_factor : s_factor) * std::fabs(a[imin]);
                for (std::size_t d = 0; d + 1 < w; ++d)
                    lambdas.push_back({std::fabs(a[d + 1]) + offset,
                                       node.info_base + static_cast<std::uint32_t>(d)});
                if (p) beta[imin] ^= 1;
                return beta;
            }
            case NodeKind::Branch: break;
        }
        const std::size_t half = w / 2;
        LlrVec al(half), ar(half);
        for (std::size_t i = 0; i < half; ++i) al[i] = f_ref(a[i], a[i + half]);
        BitVec bl = rec(static_cast<std::uint32_t>(node.left), al);
        for (std::size_t i = 0; i < half; ++i) ar[i] = bl[i] ? a[i + half] - a[i] : a[i + half] + a[i];
        BitVec br = rec(static_cast<std::uint32_t>(node.right), ar);
        BitVec out(w);
        for (std::size_t i = 0; i < half; ++i) {
            out[i] = bl[i] ^ br[i];
            out[i + half] = br[i];
        }
        return out;
    }
};

inline polarflip::PolarCode random_code(std::mt19937_64& gen, std::size_t n_bits,
                                        std::size_t crc_bits = 0) {
    std::uniform_int_distribution<std::size_t> kd(crc_bits + 1, n_bits - 1);
    const std::size_t k = kd(gen);
    std::vector<std::uint32_t> idx(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i) idx[i] = static_cast<std::uint32_t>(i);
    std::shuffle(idx.begin(), idx.end(), gen);
    idx.resize(n_bits - k);
    return polarflip::PolarCode(n_bits, k, std::move(idx), crc_bits);
}

inline LlrVec random_llrs(std::mt19937_64& gen, std::size_t n, double scale = 4.0) {
    std::normal_distribution<double> nd(0.0, scale);
    LlrVec a(n);
    for (auto& v : a) v = nd(gen);
    return a;
}

} // namespace oracle
