// Acceptance suite: one criterion per invocation (or all), one PASS/FAIL
// line each. Exit code is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polarflip/channel.hpp"
#include "polarflip/fast_ssc.hpp"
#include "polarflip/latency.hpp"
#include "polarflip/sim.hpp"

using namespace polarflip;

namespace {

// The operating point used throughout: a (512,128) construction with a
// 16-bit CRC inside k, payload rate 112/512, and the reference node caps
// 32/64/64 at P = 64.
constexpr std::size_t kN = 512;
constexpr std::size_t kK = 128;
constexpr double kDesignEbn0 = 2.0;
constexpr std::size_t kPLanes = 64;

SweepConfig operating_point(DecoderVariant variant, std::size_t t_max, double s_factor,
                            bool with_spc) {
    SweepConfig cfg;
    cfg.n_bits = kN;
    cfg.k_info = kK;
    cfg.design_ebn0_db = kDesignEbn0;
    cfg.crc = CrcSpec::ccitt16();
    cfg.variant = variant;
    cfg.t_max = t_max;
    cfg.s_factor = s_factor;
    cfg.constraints.enable_spc = with_spc;
    cfg.p_lanes = kPLanes;
    cfg.workers = 2;
    return cfg;
}

void report_point(const char* label) {
    std::fprintf(stderr, "  [%s]\n", label);
}

ProgressFn point_progress() {
    return [](const SweepRow& r) {
        std::fprintf(stderr, "    EbN0 %.3f dB: FER %.4g (%llu/%llu) avg trials %.4g\n", r.ebn0_db,
                     r.fer, static_cast<unsigned long long>(r.frame_errors),
                     static_cast<unsigned long long>(r.frames), r.avg_trials);
    };
}

// --- criterion 1: fast-SSC output is bit-identical to SC ---------------

bool criterion1() {
    std::mt19937_64 gen(101);
    std::vector<PolarCode> codes;
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = std::size_t{8} << (gen() % 4);
        codes.push_back(oracle::random_code(gen, n));
    }
    codes.emplace_back(8, 5, std::vector<std::uint32_t>{0, 1, 4});

    std::uint64_t frames = 0, mismatches = 0;
    for (const auto& code : codes) {
        const DecoderTree tree = build_decoder_tree(code);
        FastSscDecoder fast(code, tree);
        ScDecoder sc(code);
        for (int f = 0; f < 10000; ++f) {
            const LlrVec alpha = oracle::random_llrs(gen, code.n_bits());
            mismatches += fast.decode(alpha).u_hat != sc.decode(alpha).u_hat;
            ++frames;
        }
    }
    std::printf("criterion 1 %s: fast-SSC vs SC bit-equivalence, %llu mismatches in %llu frames "
                "over %zu codes\n",
                mismatches == 0 ? "PASS" : "FAIL", static_cast<unsigned long long>(mismatches),
                static_cast<unsigned long long>(frames), codes.size());
    return mismatches == 0;
}

// --- criterion 2: t_max = 1 degenerates to the plain decoders ----------

bool criterion2() {
    const PolarCode code = construct_frozen_set(kN, kK, kDesignEbn0, 16);
    const DecoderTree tree = build_decoder_tree(code);
    const CrcSpec crc = CrcSpec::ccitt16();
    const double sigma = sigma_from_ebn0(2.5, code.payload_rate());

    ScDecoder sc(code);
    FastSscDecoder fast(code, tree, 0.5, 1);
    BitVec payload(code.k_payload());
    std::uint64_t mismatches = 0;
    for (std::uint64_t f = 0; f < 10000; ++f) {
        FrameRng rng(202, 0, f);
        for (auto& b : payload) b = rng.bit();
        const LlrVec y = transmit_awgn(modulate_bpsk(encode(code, crc_attach(payload, crc))), sigma, rng);
        const LlrVec alpha = llr_from_channel(y, sigma);

        const BitVec sc_hat = sc.decode(alpha).u_hat;
        const DecodeResult& scf = sc.scf_decode(alpha, 1, crc);
        mismatches += scf.u_hat != sc_hat || scf.trials_used != 1;

        const BitVec fast_hat = fast.decode(alpha).u_hat;
        const DecodeResult& flip = fast.flip_decode(alpha, crc);
        mismatches += flip.u_hat != fast_hat || flip.trials_used != 1;
    }
    std::printf("criterion 2 %s: t_max=1 equals the plain decoders, %llu mismatches in 10000 "
                "frames\n",
                mismatches == 0 ? "PASS" : "FAIL", static_cast<unsigned long long>(mismatches));
    return mismatches == 0;
}

// --- criterion 3: SPC outputs always satisfy the parity check ----------

bool criterion3() {
    std::mt19937_64 gen(303);
    std::uint64_t violations = 0, calls = 0;
    BitVec beta(64);
    while (calls < 1'000'000) {
        const std::size_t w = std::size_t{4} << (gen() % 5);
        const LlrVec alpha = oracle::random_llrs(gen, w);
        std::optional<std::size_t> flip;
        if (gen() & 1) flip = 1 + gen() % (w - 1);
        decode_spc(alpha, 0.5 + 0.5 * static_cast<double>(gen() & 1), flip,
                   std::span(beta.data(), w));
        std::uint8_t parity = 0;
        for (std::size_t i = 0; i < w; ++i) parity ^= beta[i];
        violations += parity != 0;
        ++calls;
    }
    std::printf("criterion 3 %s: SPC parity invariant, %llu violations in %llu decodes\n",
                violations == 0 ? "PASS" : "FAIL", static_cast<unsigned long long>(violations),
                static_cast<unsigned long long>(calls));
    return violations == 0;
}

// --- criterion 4: no-SPC fast-SSC-flip tracks SCF in FER ---------------

bool criterion4() {
    const std::vector<double> grid{2.5, 3.0};

    SweepConfig scf = operating_point(DecoderVariant::Scf, 8, 1.0, true);
    scf.ebn0_grid_db = grid;
    scf.min_frame_errors = 400;
    scf.max_frames = 2'000'000;
    scf.seed = 404;
    report_point("scf T=8");
    const auto scf_rows = run_sweep(scf, point_progress());

    SweepConfig fast = operating_point(DecoderVariant::FastSscFlip, 8, 1.0, false);
    fast.ebn0_grid_db = grid;
    fast.min_frame_errors = 400;
    fast.max_frames = 2'000'000;
    fast.seed = 405;
    report_point("fast-ssc-flip T=8 no SPC");
    const auto fast_rows = run_sweep(fast, point_progress());

    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ratio = fast_rows[i].fer / scf_rows[i].fer;
        ok = ok && scf_rows[i].frame_errors >= 100 && fast_rows[i].frame_errors >= 100;
        ok = ok && ratio >= 0.8 && ratio <= 1.25;
        char buf[64];
        std::snprintf(buf, sizeof buf, " %.3gdB:%.3f", grid[i], ratio);
        detail += buf;
    }
    std::printf("criterion 4 %s: FER ratio no-SPC/scf in [0.8,1.25] at%s\n", ok ? "PASS" : "FAIL",
                detail.c_str());
    return ok;
}

// --- criterion 5: the SPC approximation costs a bounded Eb/N0 gap ------

bool criterion5() {
    const std::vector<double> grid{2.25, 2.5, 2.75, 3.0, 3.25};

    auto run = [&](std::size_t t_max, double s, bool with_spc, std::uint64_t seed,
                   const char* label) {
        SweepConfig cfg = operating_point(DecoderVariant::FastSscFlip, t_max, s, with_spc);
        cfg.ebn0_grid_db = grid;
        cfg.min_frame_errors = 300;
        cfg.max_frames = 3'000'000;
        cfg.seed = seed;
        report_point(label);
        return run_sweep(cfg, point_progress());
    };

    const auto t8_nospc = run(8, 1.0, false, 501, "T=8 no SPC");
    const auto t8_s1 = run(8, 1.0, true, 502, "T=8 s=1");
    const auto t8_s05 = run(8, 0.5, true, 503, "T=8 s=0.5");
    const auto t16_nospc = run(16, 1.0, false, 504, "T=16 no SPC");
    const auto t16_s1 = run(16, 1.0, true, 505, "T=16 s=1");
    const auto t16_s05 = run(16, 0.5, true, 506, "T=16 s=0.5");

    bool ok = true;
    auto gap = [&](const std::vector<SweepRow>& base, const std::vector<SweepRow>& cand) {
        return compare_runs(base, cand, 1e-3);
    };
    double g8_s1 = 0, g8_s05 = 0, g16_s1 = 0, g16_s05 = 0;
    try {
        g8_s1 = gap(t8_nospc, t8_s1);
        g8_s05 = gap(t8_nospc, t8_s05);
        g16_s1 = gap(t16_nospc, t16_s1);
        g16_s05 = gap(t16_nospc, t16_s05);
    } catch (const std::exception& e) {
        std::printf("criterion 5 FAIL: interpolation failed: %s\n", e.what());
        return false;
    }
    ok = ok && g8_s1 >= 0.10 && g8_s1 <= 0.25;
    ok = ok && g8_s05 >= 0.05 && g8_s05 <= 0.18;
    ok = ok && g16_s1 <= 0.12 && g16_s05 <= 0.12;
    std::printf("criterion 5 %s: SPC gaps at FER 1e-3 (dB): T=8 s=1 %.3f (want [0.10,0.25]), "
                "T=8 s=0.5 %.3f (want [0.05,0.18]), T=16 s=1 %.3f, s=0.5 %.3f (want <= 0.12)\n",
                ok ? "PASS" : "FAIL", g8_s1, g8_s05, g16_s1, g16_s05);
    return ok;
}

// --- criterion 6: latency model anchors ---------------------------------

bool criterion6() {
    bool ok = true;
    const double sc785 = sc_latency_semiparallel(512, 127);
    ok = ok && sc785 == 785.0;
    ok = ok && scf_worst_case(8, sc785) == 6280.0;
    ok = ok && scf_worst_case(16, sc785) == 12560.0;

    const PolarCode code = construct_frozen_set(kN, kK, kDesignEbn0, 16);
    const DecoderTree tree = build_decoder_tree(code);
    const double per_trial = fast_ssc_latency(tree, {kPLanes, 8, 8});
    ok = ok && per_trial >= 0.75 * 114.0 && per_trial <= 1.25 * 114.0;
    ok = ok && scf_worst_case(8, per_trial) >= 0.75 * 912.0 &&
         scf_worst_case(8, per_trial) <= 1.25 * 912.0;
    ok = ok && scf_worst_case(16, per_trial) >= 0.75 * 1824.0 &&
         scf_worst_case(16, per_trial) <= 1.25 * 1824.0;
    std::printf("criterion 6 %s: SC per-trial %.0f (want 785), fast per-trial %.0f "
                "(want 114 +/-25%%), worst case %.0f/%.0f (want 912/1824 +/-25%%)\n",
                ok ? "PASS" : "FAIL", sc785, per_trial, scf_worst_case(8, per_trial),
                scf_worst_case(16, per_trial));
    return ok;
}

// --- criterion 7: near order-of-magnitude average speedup --------------

bool criterion7() {
    SweepConfig cfg = operating_point(DecoderVariant::FastSscFlip, 8, 0.5, true);
    cfg.ebn0_grid_db = {1.5, 2.0, 2.5, 3.0, 3.5};
    cfg.min_frame_errors = 50;
    cfg.max_frames = 20000;
    cfg.seed = 707;
    report_point("fast-ssc-flip T=8 s=0.5");
    const auto rows = run_sweep(cfg, point_progress());

    // The reference trial-loop decoder runs at the 785-cycle SC pass of the
    // (512, b=127) operating point; equal trial counts on both sides.
    const double ref_per_trial = sc_latency_semiparallel(512, 127);
    bool ok = true;
    std::string detail;
    for (const auto& r : rows) {
        const double ratio = average_execution(r.avg_trials, ref_per_trial) /
                             average_execution(r.avg_trials, r.per_trial_cc);
        ok = ok && ratio >= 5.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, " %.3g", ratio);
        detail += buf;
    }
    std::printf("criterion 7 %s: avg-cycle ratios%s (want every point >= 5)\n",
                ok ? "PASS" : "FAIL", detail.c_str());
    return ok;
}

// --- criterion 8: the decision list matches collect-then-sort ----------

bool criterion8() {
    std::mt19937_64 gen(808);
    const std::size_t t_max = 8;
    std::uint64_t frames = 0, mismatches = 0;
    for (int c = 0; c < 5; ++c) {
        const PolarCode code = oracle::random_code(gen, 64);
        const DecoderTree tree = build_decoder_tree(code);
        FastSscDecoder dec(code, tree, 1.0, t_max);
        oracle::FastRef ref{&tree, 1.0};
        for (int f = 0; f < 2000; ++f) {
            const LlrVec alpha = oracle::random_llrs(gen, 64);
            dec.decode(alpha);
            ref.run(alpha);
            std::stable_sort(ref.lambdas.begin(), ref.lambdas.end(),
                             [](const oracle::RefLambda& a, const oracle::RefLambda& b) {
                                 if (a.lambda != b.lambda) return a.lambda < b.lambda;
                                 return a.info_index < b.info_index;
                             });
            const DecisionList& list = dec.decision_list();
            const std::size_t expect = std::min(t_max - 1, ref.lambdas.size());
            bool same = list.size() == expect;
            for (std::size_t i = 0; same && i < expect; ++i)
                same = list[i].lambda == ref.lambdas[i].lambda &&
                       list[i].info_index == ref.lambdas[i].info_index;
            mismatches += !same;
            ++frames;
        }
    }
    std::printf("criterion 8 %s: decision-list oracle, %llu mismatches in %llu frames\n",
                mismatches == 0 ? "PASS" : "FAIL", static_cast<unsigned long long>(mismatches),
                static_cast<unsigned long long>(frames));
    return mismatches == 0;
}

// --- criterion 9: worker count cannot change the CSV -------------------

bool criterion9() {
    SweepConfig cfg = operating_point(DecoderVariant::FastSscFlip, 8, 0.5, true);
    cfg.ebn0_grid_db = {2.0, 2.5, 3.0};
    cfg.min_frame_errors = 50;
    cfg.max_frames = 20000;
    cfg.seed = 909;
    cfg.workers = 1;
    const std::string one = format_csv(run_sweep(cfg));
    cfg.workers = 8;
    const std::string eight = format_csv(run_sweep(cfg));
    const bool ok = one == eight;
    std::printf("criterion 9 %s: 3-point sweep CSV byte-identical for workers 1 and 8\n",
                ok ? "PASS" : "FAIL");
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

    int failures = 0;
    for (int id : selected) {
        bool ok = false;
        switch (id) {
            case 1: ok = criterion1(); break;
            case 2: ok = criterion2(); break;
            case 3: ok = criterion3(); break;
            case 4: ok = criterion4(); break;
            case 5: ok = criterion5(); break;
            case 6: ok = criterion6(); break;
            case 7: ok = criterion7(); break;
            case 8: ok = criterion8(); break;
            case 9: ok = criterion9(); break;
            default:
                std::fprintf(stderr, "unknown criterion %d\n", id);
                return 2;
        }
        failures += !ok;
    }
    return failures;
}
