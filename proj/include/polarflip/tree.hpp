#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "polarflip/code.hpp"

namespace polarflip {

enum class NodeKind : std::uint8_t { Rate0, Rate1, Rep, Birep, Spc, Branch };

const char* to_string(NodeKind kind);

/// Width caps and toggles for the pruned decoder tree. A cap of 0 means
/// unconstrained. Rate0/Rate1 and Rep leaves cannot be disabled, only
/// width-capped; width-1 subtrees always collapse to Rate0/Rate1.
struct NodeConstraints {
    std::size_t max_rate0 = 0;
    std::size_t max_rate1 = 0;
    std::size_t max_rep = 32;
    std::size_t max_birep = 64;
    std::size_t max_spc = 64;
    bool enable_birep = true;
    bool enable_spc = true;
};

struct TreeNode {
    NodeKind kind;
    std::uint32_t width;
    std::uint32_t u_lo;       // u-domain span is [u_lo, u_lo + width)
    std::int32_t left = -1;   // child indices, -1 for leaves
    std::int32_t right = -1;
    std::uint32_t k_v = 0;      // number of decisions this node contributes
    std::uint32_t info_base = 0; // global info ordinal of this node's first decision

    bool is_leaf() const { return left < 0; }
};

/// Pruned binary decoder tree with typed constituent-code leaves.
/// Node 0 is the root; leaf u-spans tile [0, N) in left-to-right order.
struct DecoderTree {
    std::size_t n_bits = 0;
    NodeConstraints constraints;
    std::vector<TreeNode> nodes;

    const TreeNode& root() const { return nodes.front(); }
};

DecoderTree build_decoder_tree(const PolarCode& code, const NodeConstraints& constraints = {});

/// Human-readable indented dump, one node per line.
std::string dump_tree(const DecoderTree& tree);

} // namespace polarflip
