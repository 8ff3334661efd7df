#include "polarflip/latency.hpp"

#include <cmath>
#include <stdexcept>

namespace polarflip {

double sc_latency_semiparallel(std::size_t n_bits, std::size_t b_first_info) {
    if (!is_power_of_two(n_bits)) throw std::invalid_argument("sc_latency: N must be a power of two");
    if (b_first_info >= n_bits) throw std::invalid_argument("sc_latency: b must be < N");
    const double n = static_cast<double>(n_bits);
    double cycles = 2.0 * n + (n / 64.0) * std::log2(n / 256.0);
    const unsigned levels = log2_exact(n_bits);
    for (unsigned i = 0; i <= levels; ++i) {
        const auto pow2 = std::size_t{1} << i;
        cycles -= static_cast<double>(b_first_info / pow2) * std::ceil(static_cast<double>(pow2) / 64.0);
    }
    return cycles;
}

double scf_worst_case(std::size_t t_max, double per_trial_cc) {
    if (t_max < 1) throw std::invalid_argument("scf_worst_case: t_max must be >= 1");
    return static_cast<double>(t_max) * per_trial_cc;
}

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::size_t node_cycles(const DecoderTree& tree, std::uint32_t id, std::size_t p) {
    const TreeNode& node = tree.nodes[id];
    const std::size_t w = node.width;
    switch (node.kind) {
        case NodeKind::Rate0: return 0;
        case NodeKind::Rate1:
        case NodeKind::Rep:
        case NodeKind::Birep: return ceil_div(w, p);
        case NodeKind::Spc: return ceil_div(w, p) + 1;
        case NodeKind::Branch: break;
    }
    const std::size_t half = w / 2;
    const auto& left = tree.nodes[static_cast<std::uint32_t>(node.left)];
    const auto& right = tree.nodes[static_cast<std::uint32_t>(node.right)];
    std::size_t cycles = 0;
    if (left.kind != NodeKind::Rate0) {
        cycles += ceil_div(half, p); // f
        cycles += node_cycles(tree, static_cast<std::uint32_t>(node.left), p);
    }
    if (right.kind != NodeKind::Rate0) {
        cycles += ceil_div(half, p); // g
        cycles += node_cycles(tree, static_cast<std::uint32_t>(node.right), p);
    }
    if (left.kind != NodeKind::Rate0 && right.kind != NodeKind::Rate0)
        cycles += ceil_div(half, p); // combine
    return cycles;
}

} // namespace

double fast_ssc_latency(const DecoderTree& tree, const HwParams& hw, double calibration) {
    if (tree.nodes.empty()) throw std::invalid_argument("fast_ssc_latency: empty tree");
    if (hw.p_lanes < 2 || !is_power_of_two(hw.p_lanes))
        throw std::invalid_argument("fast_ssc_latency: P must be a power of two >= 2");
    return calibration * static_cast<double>(node_cycles(tree, 0, hw.p_lanes));
}

MemoryEstimate memory_estimate(const PolarCode& code, const HwParams& hw) {
    if (hw.t_max < 2) throw std::invalid_argument("memory_estimate: t_max must be >= 2");
    if (hw.q_lambda < 1) throw std::invalid_argument("memory_estimate: q_lambda must be >= 1");
    MemoryEstimate mem;
    mem.lambda_bits = hw.q_lambda * (hw.t_max - 1);
    const auto log2k = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(code.k_info()))));
    mem.index_bits = (hw.t_max - 1) * log2k;
    return mem;
}

double average_execution(double avg_trials, double per_trial_cc) {
    if (avg_trials < 1.0) throw std::invalid_argument("average_execution: avg_trials must be >= 1");
    return avg_trials * per_trial_cc;
}

} // namespace polarflip
