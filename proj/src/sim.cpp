#include "polarflip/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "polarflip/fast_ssc.hpp"
#include "polarflip/sc.hpp"

namespace polarflip {

const char* to_string(DecoderVariant v) {
    switch (v) {
        case DecoderVariant::Sc: return "sc";
        case DecoderVariant::Scf: return "scf";
        case DecoderVariant::FastSsc: return "fast-ssc";
        case DecoderVariant::FastSscFlip: return "fast-ssc-flip";
    }
    return "?";
}

DecoderVariant variant_from_string(const std::string& name) {
    if (name == "sc") return DecoderVariant::Sc;
    if (name == "scf") return DecoderVariant::Scf;
    if (name == "fast-ssc") return DecoderVariant::FastSsc;
    if (name == "fast-ssc-flip") return DecoderVariant::FastSscFlip;
    throw std::invalid_argument("unknown decoder variant '" + name + "'");
}

void SweepConfig::validate() const {
    if (ebn0_grid_db.empty()) throw std::invalid_argument("sweep: Eb/N0 grid must be non-empty");
    if (min_frame_errors < 1) throw std::invalid_argument("sweep: min_frame_errors must be >= 1");
    if (max_frames < 1) throw std::invalid_argument("sweep: max_frames must be >= 1");
    if (t_max < 1) throw std::invalid_argument("sweep: t_max must be >= 1");
    if (workers < 1) throw std::invalid_argument("sweep: workers must be >= 1");
}

PolarCode SweepConfig::make_code() const {
    if (!frozen_file.empty()) {
        // The configured CRC spec governs; the file's crc field is a default.
        PolarCode loaded = load_frozen_set(frozen_file);
        return PolarCode(loaded.n_bits(), loaded.k_info(), loaded.frozen(), crc.width);
    }
    const std::size_t k = crc_on_top ? k_info + crc.width : k_info;
    return construct_frozen_set(n_bits, k, design_ebn0_db, crc.width);
}

namespace {

struct FrameOutcome {
    std::uint32_t bit_errors = 0;
    std::uint32_t trials = 1;
    bool frame_error = false;
};

// Decodes frames [first, last) of one grid point into `out`. Every frame is
// a pure function of (seed, point, index), so scheduling cannot change it.
class PointWorker {
public:
    PointWorker(const SweepConfig& cfg, const PolarCode& code, const DecoderTree* tree)
        : cfg_(&cfg), code_(&code) {
        switch (cfg.variant) {
            case DecoderVariant::Sc:
            case DecoderVariant::Scf:
                sc_ = std::make_unique<ScDecoder>(code);
                break;
            case DecoderVariant::FastSsc:
            case DecoderVariant::FastSscFlip:
                fast_ = std::make_unique<FastSscDecoder>(code, *tree, cfg.s_factor, cfg.t_max);
                break;
        }
        payload_.resize(code.k_payload());
    }

    void run(std::uint64_t point, double sigma, std::uint64_t first, std::uint64_t last,
             std::span<FrameOutcome> out) {
        for (std::uint64_t idx = first; idx < last; ++idx)
            out[idx - first] = frame(point, sigma, idx);
    }

private:
    FrameOutcome frame(std::uint64_t point, double sigma, std::uint64_t index) {
        FrameRng rng(cfg_->seed, point, index);
        for (auto& b : payload_) b = rng.bit();
        const BitVec block = crc_attach(payload_, cfg_->crc);
        const BitVec x = encode(*code_, block);
        const LlrVec symbols = modulate_bpsk(x);
        const LlrVec y = transmit_awgn(symbols, sigma, rng);
        const LlrVec alpha = llr_from_channel(y, sigma);

        const DecodeResult* res = nullptr;
        switch (cfg_->variant) {
            case DecoderVariant::Sc: res = &sc_->decode(alpha); break;
            case DecoderVariant::Scf: res = &sc_->scf_decode(alpha, cfg_->t_max, cfg_->crc); break;
            case DecoderVariant::FastSsc: res = &fast_->decode(alpha); break;
            case DecoderVariant::FastSscFlip: res = &fast_->flip_decode(alpha, cfg_->crc); break;
        }

        FrameOutcome o;
        o.trials = static_cast<std::uint32_t>(res->trials_used);
        for (std::size_t i = 0; i < payload_.size(); ++i)
            o.bit_errors += payload_[i] != res->info_hat[i];
        o.frame_error = o.bit_errors > 0;
        return o;
    }

    const SweepConfig* cfg_;
    const PolarCode* code_;
    std::unique_ptr<ScDecoder> sc_;
    std::unique_ptr<FastSscDecoder> fast_;
    BitVec payload_;
};

constexpr std::uint64_t kFramesPerTask = 512;

} // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config, const ProgressFn& progress) {
    config.validate();
    const PolarCode code = config.make_code();
    if (config.crc.width > 0 && code.k_info() <= config.crc.width)
        throw std::invalid_argument("sweep: k must exceed the CRC width");

    DecoderTree tree;
    const bool needs_tree =
        config.variant == DecoderVariant::FastSsc || config.variant == DecoderVariant::FastSscFlip;
    if (needs_tree) tree = build_decoder_tree(code, config.constraints);

    const HwParams hw{config.p_lanes, config.q_lambda, config.t_max};
    const double per_trial_cc = needs_tree
        ? fast_ssc_latency(tree, hw)
        : sc_latency_semiparallel(code.n_bits(), code.first_info_bit());

    std::vector<PointWorker> workers;
    workers.reserve(config.workers);
    for (unsigned w = 0; w < config.workers; ++w)
        workers.emplace_back(config, code, needs_tree ? &tree : nullptr);

    std::vector<SweepRow> rows;
    rows.reserve(config.ebn0_grid_db.size());

    for (std::size_t point = 0; point < config.ebn0_grid_db.size(); ++point) {
        const double ebn0 = config.ebn0_grid_db[point];
        const double sigma = sigma_from_ebn0(ebn0, code.payload_rate());

        std::uint64_t frames = 0, frame_errors = 0, bit_errors = 0, trial_sum = 0;
        std::vector<FrameOutcome> wave(config.workers * kFramesPerTask);

        std::uint64_t next_frame = 0;
        bool done = false;
        while (!done && next_frame < config.max_frames) {
            const std::uint64_t wave_len =
                std::min<std::uint64_t>(wave.size(), config.max_frames - next_frame);
            const std::uint64_t per_worker = (wave_len + config.workers - 1) / config.workers;

            auto run_slice = [&](unsigned w) {
                const std::uint64_t first = next_frame + w * per_worker;
                const std::uint64_t last = std::min(next_frame + wave_len, first + per_worker);
                if (first >= last) return;
                workers[w].run(point, sigma, first, last,
                               std::span(wave).subspan(first - next_frame, last - first));
            };

            if (config.workers == 1) {
                run_slice(0);
            } else {
                std::vector<std::thread> pool;
                pool.reserve(config.workers - 1);
                for (unsigned w = 1; w < config.workers; ++w) pool.emplace_back(run_slice, w);
                run_slice(0);
                for (auto& t : pool) t.join();
            }

            // Frames count in index order: the stop rule fires at the exact
            // frame where min_frame_errors is reached.
            for (std::uint64_t i = 0; i < wave_len; ++i) {
                const FrameOutcome& o = wave[i];
                ++frames;
                frame_errors += o.frame_error;
                bit_errors += o.bit_errors;
                trial_sum += o.trials;
                if (frame_errors >= config.min_frame_errors) {
                    done = true;
                    break;
                }
            }
            next_frame += wave_len;
        }

        SweepRow row;
        row.ebn0_db = ebn0;
        row.frames = frames;
        row.frame_errors = frame_errors;
        row.bit_errors = bit_errors;
        row.fer = frames ? static_cast<double>(frame_errors) / static_cast<double>(frames) : 0.0;
        row.ber = frames ? static_cast<double>(bit_errors) /
                               (static_cast<double>(frames) * static_cast<double>(code.k_payload()))
                         : 0.0;
        row.avg_trials = frames ? static_cast<double>(trial_sum) / static_cast<double>(frames) : 1.0;
        row.per_trial_cc = per_trial_cc;
        row.avg_cc = row.avg_trials * per_trial_cc;
        row.wc_cc = scf_worst_case(config.t_max, per_trial_cc);
        rows.push_back(row);
        if (progress) progress(row);
    }
    return rows;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::string format_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "EbN0dB,frames,frameErrors,bitErrors,FER,BER,avgTrials,perTrialCC,avgCC,wcCC\n";
    for (const auto& r : rows) {
        out << fmt_double(r.ebn0_db) << ',' << r.frames << ',' << r.frame_errors << ','
            << r.bit_errors << ',' << fmt_double(r.fer) << ',' << fmt_double(r.ber) << ','
            << fmt_double(r.avg_trials) << ',' << fmt_double(r.per_trial_cc) << ','
            << fmt_double(r.avg_cc) << ',' << fmt_double(r.wc_cc) << '\n';
    }
    return out.str();
}

void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path.string());
    out << format_csv(rows);
    if (!out) throw std::runtime_error("emit_csv: write failed for " + path.string());
}

std::vector<SweepRow> parse_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("parse_csv: empty file " + path.string());

    std::vector<SweepRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 10)
            throw std::runtime_error("parse_csv: expected 10 fields on line " + std::to_string(lineno));
        SweepRow r;
        r.ebn0_db = std::stod(fields[0]);
        r.frames = std::stoull(fields[1]);
        r.frame_errors = std::stoull(fields[2]);
        r.bit_errors = std::stoull(fields[3]);
        r.fer = std::stod(fields[4]);
        r.ber = std::stod(fields[5]);
        r.avg_trials = std::stod(fields[6]);
        r.per_trial_cc = std::stod(fields[7]);
        r.avg_cc = std::stod(fields[8]);
        r.wc_cc = std::stod(fields[9]);
        rows.push_back(r);
    }
    return rows;
}

namespace {

// Eb/N0 at `target` by log-linear interpolation between the first pair of
// grid-adjacent points whose FERs straddle it. Zero-FER rows terminate the
// usable range.
double interpolate_ebn0(const std::vector<SweepRow>& rows, double target) {
    if (target <= 0.0) throw std::invalid_argument("compare_runs: target FER must be positive");
    std::vector<std::pair<double, double>> curve;
    for (const auto& r : rows) {
        if (r.fer <= 0.0) break;
        curve.emplace_back(r.ebn0_db, r.fer);
    }
    if (curve.size() < 2) throw std::runtime_error("compare_runs: curve has fewer than two usable points");
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const auto [x1, y1] = curve[i];
        const auto [x2, y2] = curve[i + 1];
        const bool straddles = (y1 >= target && target >= y2) || (y2 >= target && target >= y1);
        if (!straddles) continue;
        if (y1 == y2) return x1;
        const double t = (std::log(target) - std::log(y1)) / (std::log(y2) - std::log(y1));
        return x1 + t * (x2 - x1);
    }
    throw std::runtime_error("compare_runs: target FER outside the curve's range");
}

} // namespace

double compare_runs(const std::vector<SweepRow>& baseline, const std::vector<SweepRow>& candidate,
                    double target_fer) {
    return interpolate_ebn0(candidate, target_fer) - interpolate_ebn0(baseline, target_fer);
}

double compare_runs(const std::filesystem::path& baseline_csv,
                    const std::filesystem::path& candidate_csv, double target_fer) {
    return compare_runs(parse_csv(baseline_csv), parse_csv(candidate_csv), target_fer);
}

} // namespace polarflip
