#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "polarflip/channel.hpp"
#include "polarflip/code.hpp"
#include "polarflip/crc.hpp"
#include "polarflip/fast_ssc.hpp"
#include "polarflip/latency.hpp"
#include "polarflip/sc.hpp"
#include "polarflip/sim.hpp"
#include "polarflip/tree.hpp"

namespace py = pybind11;
using namespace polarflip;

namespace {

std::optional<FlipTarget> make_flip(const std::optional<std::pair<std::uint32_t, std::uint32_t>>& t) {
    if (!t) return std::nullopt;
    return FlipTarget{t->first, t->second};
}

template <typename Fn>
std::pair<BitVec, std::vector<double>> run_leaf(Fn&& fn, const LlrVec& alpha) {
    BitVec beta(alpha.size());
    std::vector<double> lambdas;
    fn(beta, lambdas);
    return {std::move(beta), std::move(lambdas)};
}

} // namespace

PYBIND11_MODULE(polarflip, m) {
    m.doc() = "Polar-code codec with SC, SC-flip, fast-SSC and fast-SSC-flip decoders, "
              "an AWGN Monte-Carlo FER driver and a clock-cycle latency model";

    // --- code model ---
    py::class_<PolarCode>(m, "PolarCode")
        .def(py::init<std::size_t, std::size_t, std::vector<std::uint32_t>, std::size_t>(),
             py::arg("n_bits"), py::arg("k_info"), py::arg("frozen"), py::arg("crc_bits") = 0)
        .def_property_readonly("n_bits", &PolarCode::n_bits)
        .def_property_readonly("k_info", &PolarCode::k_info)
        .def_property_readonly("crc_bits", &PolarCode::crc_bits)
        .def_property_readonly("k_payload", &PolarCode::k_payload)
        .def_property_readonly("rate", &PolarCode::rate)
        .def_property_readonly("payload_rate", &PolarCode::payload_rate)
        .def_property_readonly("frozen", &PolarCode::frozen)
        .def_property_readonly("info_positions", &PolarCode::info_positions)
        .def_property_readonly("first_info_bit", &PolarCode::first_info_bit)
        .def("is_frozen", &PolarCode::is_frozen, py::arg("index"))
        .def("__repr__", [](const PolarCode& c) {
            return "PolarCode(N=" + std::to_string(c.n_bits()) + ", k=" + std::to_string(c.k_info()) +
                   ", crc=" + std::to_string(c.crc_bits()) + ")";
        });

    m.def("ga_bit_channel_means", &ga_bit_channel_means, py::arg("n_bits"), py::arg("sigma"));
    m.def("construct_frozen_set", &construct_frozen_set, py::arg("n_bits"), py::arg("k_info"),
          py::arg("design_ebn0_db"), py::arg("crc_bits") = 0);
    m.def("load_frozen_set", &load_frozen_set, py::arg("path"));
    m.def("save_frozen_set", &save_frozen_set, py::arg("code"), py::arg("path"));

    // --- decoder tree ---
    py::enum_<NodeKind>(m, "NodeKind")
        .value("Rate0", NodeKind::Rate0)
        .value("Rate1", NodeKind::Rate1)
        .value("Rep", NodeKind::Rep)
        .value("Birep", NodeKind::Birep)
        .value("Spc", NodeKind::Spc)
        .value("Branch", NodeKind::Branch);

    py::class_<NodeConstraints>(m, "NodeConstraints")
        .def(py::init<>())
        .def_readwrite("max_rate0", &NodeConstraints::max_rate0)
        .def_readwrite("max_rate1", &NodeConstraints::max_rate1)
        .def_readwrite("max_rep", &NodeConstraints::max_rep)
        .def_readwrite("max_birep", &NodeConstraints::max_birep)
        .def_readwrite("max_spc", &NodeConstraints::max_spc)
        .def_readwrite("enable_birep", &NodeConstraints::enable_birep)
        .def_readwrite("enable_spc", &NodeConstraints::enable_spc);

    py::class_<TreeNode>(m, "TreeNode")
        .def_readonly("kind", &TreeNode::kind)
        .def_readonly("width", &TreeNode::width)
        .def_readonly("u_lo", &TreeNode::u_lo)
        .def_readonly("left", &TreeNode::left)
        .def_readonly("right", &TreeNode::right)
        .def_readonly("k_v", &TreeNode::k_v)
        .def_readonly("info_base", &TreeNode::info_base)
        .def_property_readonly("is_leaf", &TreeNode::is_leaf);

    py::class_<DecoderTree>(m, "DecoderTree")
        .def_readonly("n_bits", &DecoderTree::n_bits)
        .def_readonly("nodes", &DecoderTree::nodes)
        .def("dump", [](const DecoderTree& t) { return dump_tree(t); })
        .def("__str__", [](const DecoderTree& t) { return dump_tree(t); });

    m.def("build_decoder_tree", &build_decoder_tree, py::arg("code"),
          py::arg("constraints") = NodeConstraints{});

    // --- encoding and CRC ---
    m.def("polar_transform", [](BitVec v) { return polar_transform(std::move(v)); }, py::arg("bits"));
    m.def("encode", [](const PolarCode& c, const BitVec& info) { return encode(c, info); },
          py::arg("code"), py::arg("info"));

    py::class_<CrcSpec>(m, "CrcSpec")
        .def(py::init<>())
        .def(py::init([](std::size_t width, std::uint64_t poly, std::uint64_t init, bool reflect,
                         std::uint64_t final_xor) {
                 return CrcSpec{width, poly, init, reflect, final_xor};
             }),
             py::arg("width"), py::arg("poly"), py::arg("init") = 0, py::arg("reflect") = false,
             py::arg("final_xor") = 0)
        .def_readwrite("width", &CrcSpec::width)
        .def_readwrite("poly", &CrcSpec::poly)
        .def_readwrite("init", &CrcSpec::init)
        .def_readwrite("reflect", &CrcSpec::reflect)
        .def_readwrite("final_xor", &CrcSpec::final_xor)
        .def_static("ccitt16", &CrcSpec::ccitt16)
        .def_static("none", &CrcSpec::none);

    m.def("crc_compute", [](const BitVec& bits, const CrcSpec& s) { return crc_compute(bits, s); },
          py::arg("bits"), py::arg("spec"));
    m.def("crc_attach", [](const BitVec& p, const CrcSpec& s) { return crc_attach(p, s); },
          py::arg("payload"), py::arg("spec"));
    m.def("crc_check", [](const BitVec& b, const CrcSpec& s) { return crc_check(b, s); },
          py::arg("block"), py::arg("spec"));

    // --- channel ---
    py::class_<FrameRng>(m, "FrameRng")
        .def(py::init<std::uint64_t, std::uint64_t, std::uint64_t>(), py::arg("seed"),
             py::arg("point"), py::arg("frame"))
        .def("bit", &FrameRng::bit)
        .def("uniform01", &FrameRng::uniform01)
        .def("gaussian", &FrameRng::gaussian);

    m.def("sigma_from_ebn0", &sigma_from_ebn0, py::arg("ebn0_db"), py::arg("rate"));
    m.def("modulate_bpsk", [](const BitVec& bits) { return modulate_bpsk(bits); }, py::arg("bits"));
    m.def("transmit_awgn",
          [](const LlrVec& symbols, double sigma, FrameRng& rng) {
              return transmit_awgn(symbols, sigma, rng);
          },
          py::arg("symbols"), py::arg("sigma"), py::arg("rng"));
    m.def("llr_from_channel", [](const LlrVec& y, double sigma) { return llr_from_channel(y, sigma); },
          py::arg("y"), py::arg("sigma"));

    // --- decoders ---
    m.def("f_minsum", &f_minsum, py::arg("a"), py::arg("b"));
    m.def("g_llr", &g_llr, py::arg("a"), py::arg("b"), py::arg("beta"));
    m.def("combine",
          [](const BitVec& l, const BitVec& r) { return combine(l, r); }, py::arg("beta_l"),
          py::arg("beta_r"));

    py::class_<DecodeResult>(m, "DecodeResult")
        .def_readonly("u_hat", &DecodeResult::u_hat)
        .def_readonly("info_hat", &DecodeResult::info_hat)
        .def_readonly("trials_used", &DecodeResult::trials_used)
        .def_readonly("crc_ok", &DecodeResult::crc_ok);

    m.def("sc_decode", [](const PolarCode& c, const LlrVec& a) { return sc_decode(c, a); },
          py::arg("code"), py::arg("alpha"));
    m.def("scf_decode",
          [](const PolarCode& c, const LlrVec& a, std::size_t t_max, const CrcSpec& crc) {
              return scf_decode(c, a, t_max, crc);
          },
          py::arg("code"), py::arg("alpha"), py::arg("t_max"), py::arg("crc"));

    m.def("decode_rate1",
          [](const LlrVec& a, std::optional<std::size_t> flip) {
              return run_leaf([&](BitVec& b, std::vector<double>& l) { decode_rate1(a, flip, b, &l); }, a);
          },
          py::arg("alpha"), py::arg("flip") = std::nullopt);
    m.def("decode_rep",
          [](const LlrVec& a, std::optional<std::size_t> flip) {
              return run_leaf([&](BitVec& b, std::vector<double>& l) { decode_rep(a, flip, b, &l); }, a);
          },
          py::arg("alpha"), py::arg("flip") = std::nullopt);
    m.def("decode_birep",
          [](const LlrVec& a, std::optional<std::size_t> flip) {
              return run_leaf([&](BitVec& b, std::vector<double>& l) { decode_birep(a, flip, b, &l); }, a);
          },
          py::arg("alpha"), py::arg("flip") = std::nullopt);
    m.def("decode_spc",
          [](const LlrVec& a, double s, std::optional<std::size_t> flip) {
              return run_leaf([&](BitVec& b, std::vector<double>& l) { decode_spc(a, s, flip, b, &l); }, a);
          },
          py::arg("alpha"), py::arg("s_factor") = 1.0, py::arg("flip") = std::nullopt);

    py::class_<DecisionEntry>(m, "DecisionEntry")
        .def_readonly("reliability", &DecisionEntry::lambda)
        .def_readonly("node_id", &DecisionEntry::node_id)
        .def_readonly("local_d", &DecisionEntry::local_d)
        .def_readonly("info_index", &DecisionEntry::info_index);

    py::class_<DecisionList>(m, "DecisionList")
        .def_property_readonly("capacity", &DecisionList::capacity)
        .def("__len__", &DecisionList::size)
        .def("__getitem__",
             [](const DecisionList& l, std::size_t i) {
                 if (i >= l.size()) throw py::index_error();
                 return l[i];
             })
        .def_property_readonly("entries", &DecisionList::entries);

    py::class_<FastDecodeOutput>(m, "FastDecodeOutput")
        .def_readonly("result", &FastDecodeOutput::result)
        .def_readonly("list", &FastDecodeOutput::list);

    m.def("fast_ssc_decode",
          [](const PolarCode& c, const DecoderTree& t, const LlrVec& a,
             std::optional<std::pair<std::uint32_t, std::uint32_t>> flip, double s,
             std::size_t t_max) { return fast_ssc_decode(c, t, a, make_flip(flip), s, t_max); },
          py::arg("code"), py::arg("tree"), py::arg("alpha"), py::arg("flip") = std::nullopt,
          py::arg("s_factor") = 1.0, py::arg("t_max") = 1);
    m.def("fast_ssc_flip_decode",
          [](const PolarCode& c, const DecoderTree& t, const LlrVec& a, std::size_t t_max, double s,
             const CrcSpec& crc) { return fast_ssc_flip_decode(c, t, a, t_max, s, crc); },
          py::arg("code"), py::arg("tree"), py::arg("alpha"), py::arg("t_max"), py::arg("s_factor"),
          py::arg("crc"));

    // --- latency model ---
    py::class_<HwParams>(m, "HwParams")
        .def(py::init([](std::size_t p, std::size_t q, std::size_t t) {
                 return HwParams{p, q, t};
             }),
             py::arg("p_lanes") = 64, py::arg("q_lambda") = 8, py::arg("t_max") = 8)
        .def_readwrite("p_lanes", &HwParams::p_lanes)
        .def_readwrite("q_lambda", &HwParams::q_lambda)
        .def_readwrite("t_max", &HwParams::t_max);

    py::class_<MemoryEstimate>(m, "MemoryEstimate")
        .def_readonly("lambda_bits", &MemoryEstimate::lambda_bits)
        .def_readonly("index_bits", &MemoryEstimate::index_bits);

    m.def("sc_latency_semiparallel", &sc_latency_semiparallel, py::arg("n_bits"),
          py::arg("b_first_info"));
    m.def("scf_worst_case", &scf_worst_case, py::arg("t_max"), py::arg("per_trial_cc"));
    m.def("fast_ssc_latency", &fast_ssc_latency, py::arg("tree"), py::arg("hw"),
          py::arg("calibration") = 1.0);
    m.def("memory_estimate", &memory_estimate, py::arg("code"), py::arg("hw"));
    m.def("average_execution", &average_execution, py::arg("avg_trials"), py::arg("per_trial_cc"));

    // --- simulation driver ---
    py::enum_<DecoderVariant>(m, "DecoderVariant")
        .value("Sc", DecoderVariant::Sc)
        .value("Scf", DecoderVariant::Scf)
        .value("FastSsc", DecoderVariant::FastSsc)
        .value("FastSscFlip", DecoderVariant::FastSscFlip);

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("frozen_file", &SweepConfig::frozen_file)
        .def_readwrite("n_bits", &SweepConfig::n_bits)
        .def_readwrite("k_info", &SweepConfig::k_info)
        .def_readwrite("crc_on_top", &SweepConfig::crc_on_top)
        .def_readwrite("design_ebn0_db", &SweepConfig::design_ebn0_db)
        .def_readwrite("crc", &SweepConfig::crc)
        .def_readwrite("variant", &SweepConfig::variant)
        .def_readwrite("t_max", &SweepConfig::t_max)
        .def_readwrite("s_factor", &SweepConfig::s_factor)
        .def_readwrite("constraints", &SweepConfig::constraints)
        .def_readwrite("ebn0_grid_db", &SweepConfig::ebn0_grid_db)
        .def_readwrite("min_frame_errors", &SweepConfig::min_frame_errors)
        .def_readwrite("max_frames", &SweepConfig::max_frames)
        .def_readwrite("seed", &SweepConfig::seed)
        .def_readwrite("workers", &SweepConfig::workers)
        .def_readwrite("p_lanes", &SweepConfig::p_lanes)
        .def_readwrite("q_lambda", &SweepConfig::q_lambda)
        .def("make_code", &SweepConfig::make_code);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("ebn0_db", &SweepRow::ebn0_db)
        .def_readonly("frames", &SweepRow::frames)
        .def_readonly("frame_errors", &SweepRow::frame_errors)
        .def_readonly("bit_errors", &SweepRow::bit_errors)
        .def_readonly("fer", &SweepRow::fer)
        .def_readonly("ber", &SweepRow::ber)
        .def_readonly("avg_trials", &SweepRow::avg_trials)
        .def_readonly("per_trial_cc", &SweepRow::per_trial_cc)
        .def_readonly("avg_cc", &SweepRow::avg_cc)
        .def_readonly("wc_cc", &SweepRow::wc_cc);

    m.def("run_sweep", &run_sweep, py::arg("config"), py::arg("progress") = ProgressFn{});
    m.def("format_csv", &format_csv, py::arg("rows"));
    m.def("emit_csv", &emit_csv, py::arg("rows"), py::arg("path"));
    m.def("parse_csv", &parse_csv, py::arg("path"));
    m.def("compare_runs",
          py::overload_cast<const std::vector<SweepRow>&, const std::vector<SweepRow>&, double>(
              &compare_runs),
          py::arg("baseline"), py::arg("candidate"), py::arg("target_fer") = 1e-3);
    m.def("compare_runs_csv",
          py::overload_cast<const std::filesystem::path&, const std::filesystem::path&, double>(
              &compare_runs),
          py::arg("baseline_csv"), py::arg("candidate_csv"), py::arg("target_fer") = 1e-3);
}
