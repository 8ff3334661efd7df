#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polarflip/channel.hpp"
#include "polarflip/code.hpp"
#include "polarflip/crc.hpp"
#include "polarflip/latency.hpp"
#include "polarflip/tree.hpp"

namespace polarflip {

enum class DecoderVariant { Sc, Scf, FastSsc, FastSscFlip };

const char* to_string(DecoderVariant v);
DecoderVariant variant_from_string(const std::string& name);

struct SweepConfig {
    // Code source: a frozen-set file wins over construction.
    std::string frozen_file;
    std::size_t n_bits = 512;
    std::size_t k_info = 128;        // unfrozen positions, CRC included
    bool crc_on_top = false;         // add crc.width unfrozen positions on top of k_info
    double design_ebn0_db = 2.0;

    CrcSpec crc = CrcSpec::ccitt16();
    DecoderVariant variant = DecoderVariant::FastSscFlip;
    std::size_t t_max = 8;
    double s_factor = 0.5;
    NodeConstraints constraints;

    std::vector<double> ebn0_grid_db;
    std::uint64_t min_frame_errors = 100;
    std::uint64_t max_frames = 10'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::size_t p_lanes = 64;
    std::size_t q_lambda = 8;

    void validate() const;
    PolarCode make_code() const;
};

struct SweepRow {
    double ebn0_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t bit_errors = 0;
    double fer = 0.0;
    double ber = 0.0;
    double avg_trials = 1.0;
    double per_trial_cc = 0.0;
    double avg_cc = 0.0;
    double wc_cc = 0.0;
};

using ProgressFn = std::function<void(const SweepRow&)>;

/// Monte-Carlo FER sweep over the Eb/N0 grid. Each grid point runs until
/// min_frame_errors or max_frames, counting frames in index order so the
/// outcome is a pure function of (config, seed) regardless of worker count.
/// A frame is in error iff the decoded payload differs from the transmitted
/// one; CRC bits are excluded from FER/BER accounting.
std::vector<SweepRow> run_sweep(const SweepConfig& config, const ProgressFn& progress = {});

void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);
std::string format_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_csv(const std::filesystem::path& path);

/// Eb/N0 gap in dB between two FER curves at `target_fer`, measured by
/// log-linear interpolation on each curve: candidate minus baseline.
/// Throws if the target is outside either curve's range.
double compare_runs(const std::vector<SweepRow>& baseline, const std::vector<SweepRow>& candidate,
                    double target_fer = 1e-3);
double compare_runs(const std::filesystem::path& baseline_csv,
                    const std::filesystem::path& candidate_csv, double target_fer = 1e-3);

} // namespace polarflip
