#include "polarflip/tree.hpp"

#include <sstream>

namespace polarflip {

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Rate0: return "Rate0";
        case NodeKind::Rate1: return "Rate1";
        case NodeKind::Rep: return "Rep";
        case NodeKind::Birep: return "Birep";
        case NodeKind::Spc: return "Spc";
        case NodeKind::Branch: return "Branch";
    }
    return "?";
}

namespace {

std::size_t cap_or_max(std::size_t cap) {
    return cap == 0 ? std::numeric_limits<std::size_t>::max() : cap;
}

// Exact frozen-pattern classification in precedence order Rate0, Rate1,
// Rep, Birep, Spc; falls back to Branch when the pattern or the width
// constraints rule every leaf type out.
NodeKind classify(const std::vector<std::uint8_t>& frozen, std::size_t lo, std::size_t w,
                  const NodeConstraints& c) {
    std::size_t n_frozen = 0;
    for (std::size_t i = lo; i < lo + w; ++i) n_frozen += frozen[i];

    if (w == 1) return n_frozen ? NodeKind::Rate0 : NodeKind::Rate1;

    if (n_frozen == w && w <= cap_or_max(c.max_rate0)) return NodeKind::Rate0;
    if (n_frozen == 0 && w <= cap_or_max(c.max_rate1)) return NodeKind::Rate1;
    if (n_frozen == w - 1 && !frozen[lo + w - 1] && w <= cap_or_max(c.max_rep))
        return NodeKind::Rep;
    if (c.enable_birep && w >= 4 && n_frozen == w - 2 && !frozen[lo + w - 1] &&
        !frozen[lo + w - 2] && w <= cap_or_max(c.max_birep))
        return NodeKind::Birep;
    if (c.enable_spc && n_frozen == 1 && frozen[lo] && w <= cap_or_max(c.max_spc))
        return NodeKind::Spc;
    return NodeKind::Branch;
}

std::uint32_t leaf_kv(NodeKind kind, std::size_t w) {
    switch (kind) {
        case NodeKind::Rate0: return 0;
        case NodeKind::Rate1: return static_cast<std::uint32_t>(w);
        case NodeKind::Rep: return 1;
        case NodeKind::Birep: return 2;
        case NodeKind::Spc: return static_cast<std::uint32_t>(w - 1);
        case NodeKind::Branch: return 0;
    }
    return 0;
}

struct Builder {
    const PolarCode& code;
    const NodeConstraints& constraints;
    DecoderTree tree;
    std::vector<std::uint32_t> info_rank; // unfrozen positions before index i

    std::int32_t build(std::size_t lo, std::size_t w) {
        const NodeKind kind = classify(code.frozen_mask(), lo, w, constraints);
        const auto id = static_cast<std::int32_t>(tree.nodes.size());
        TreeNode node;
        node.kind = kind;
        node.width = static_cast<std::uint32_t>(w);
        node.u_lo = static_cast<std::uint32_t>(lo);
        node.k_v = leaf_kv(kind, w);
        node.info_base = info_rank[lo];
        tree.nodes.push_back(node);
        if (kind == NodeKind::Branch) {
            const auto l = build(lo, w / 2);
            const auto r = build(lo + w / 2, w / 2);
            tree.nodes[id].left = l;
            tree.nodes[id].right = r;
        }
        return id;
    }
};

void validate_constraints(const NodeConstraints& c) {
    for (std::size_t cap : {c.max_rate0, c.max_rate1, c.max_rep, c.max_birep, c.max_spc})
        if (cap != 0 && !is_power_of_two(cap))
            throw std::invalid_argument("build_decoder_tree: width caps must be powers of two");
}

} // namespace

DecoderTree build_decoder_tree(const PolarCode& code, const NodeConstraints& constraints) {
    validate_constraints(constraints);
    Builder b{code, constraints, {}, {}};
    b.tree.n_bits = code.n_bits();
    b.tree.constraints = constraints;
    b.info_rank.resize(code.n_bits() + 1, 0);
    for (std::size_t i = 0; i < code.n_bits(); ++i)
        b.info_rank[i + 1] = b.info_rank[i] + (code.is_frozen(i) ? 0 : 1);
    b.build(0, code.n_bits());
    b.tree.nodes.shrink_to_fit();
    return b.tree;
}

namespace {

void dump_node(const DecoderTree& tree, std::uint32_t id, unsigned indent, std::ostringstream& out) {
    const TreeNode& n = tree.nodes[id];
    for (unsigned i = 0; i < indent; ++i) out << "  ";
    out << to_string(n.kind) << " width=" << n.width << " span=[" << n.u_lo << ","
        << n.u_lo + n.width << ")";
    if (n.k_v > 0) out << " k_v=" << n.k_v;
    out << '\n';
    if (!n.is_leaf()) {
        dump_node(tree, static_cast<std::uint32_t>(n.left), indent + 1, out);
        dump_node(tree, static_cast<std::uint32_t>(n.right), indent + 1, out);
    }
}

} // namespace

std::string dump_tree(const DecoderTree& tree) {
    std::ostringstream out;
    dump_node(tree, 0, 0, out);
    return out.str();
}

} // namespace polarflip
