// polarsim: Monte-Carlo FER sweeps and latency reports for polar-code
// decoders (SC, SC-flip, fast-SSC, fast-SSC-flip).

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "polarflip/fast_ssc.hpp"
#include "polarflip/latency.hpp"
#include "polarflip/sim.hpp"

using namespace polarflip;

namespace {

// Flat key=value config file; keys are the long option names without the
// leading dashes. Explicit command-line flags win over file entries.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw std::runtime_error("config value '" + v + "' is not a boolean");
}

// Applies file entries for options the user did not pass explicitly.
void merge_config(const CLI::App& cmd, const std::map<std::string, std::string>& kv,
                  const std::map<std::string, std::function<void(const std::string&)>>& setters) {
    for (const auto& [key, value] : kv) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw std::runtime_error("unknown config key '" + key + "'");
        if (cmd.count("--" + key) > 0) continue;
        it->second(value);
    }
}

struct CodeOptions {
    std::string frozen_file;
    std::size_t n_bits = 512;
    std::size_t k_info = 128;
    double design_ebn0 = 2.0;
    bool crc_on_top = false;
    std::size_t crc_bits = 16;
    std::string crc_poly = "0x1021";
    std::string crc_init = "0x0";
    bool crc_reflect = false;
    std::string crc_xorout = "0x0";
    NodeConstraints constraints;
    bool no_spc = false;
    bool no_birep = false;

    CrcSpec crc_spec() const {
        CrcSpec spec;
        spec.width = crc_bits;
        spec.poly = std::stoull(crc_poly, nullptr, 0);
        spec.init = std::stoull(crc_init, nullptr, 0);
        spec.reflect = crc_reflect;
        spec.final_xor = std::stoull(crc_xorout, nullptr, 0);
        return spec;
    }

    NodeConstraints node_constraints() const {
        NodeConstraints c = constraints;
        c.enable_spc = !no_spc;
        c.enable_birep = !no_birep;
        return c;
    }

    SweepConfig base_config() const {
        SweepConfig cfg;
        cfg.frozen_file = frozen_file;
        cfg.n_bits = n_bits;
        cfg.k_info = k_info;
        cfg.crc_on_top = crc_on_top;
        cfg.design_ebn0_db = design_ebn0;
        cfg.crc = crc_spec();
        cfg.constraints = node_constraints();
        return cfg;
    }
};

void add_code_options(CLI::App& app, CodeOptions& opt) {
    app.add_option("--frozen-file", opt.frozen_file, "Frozen-set file; overrides construction");
    app.add_option("--n", opt.n_bits, "Code length N (power of two)")->capture_default_str();
    app.add_option("--k", opt.k_info, "Unfrozen positions, CRC included")->capture_default_str();
    app.add_option("--design-ebn0", opt.design_ebn0, "Construction design point in dB")
        ->capture_default_str();
    app.add_flag("--crc-on-top", opt.crc_on_top, "Treat --k as payload only and add the CRC width");
    app.add_option("--crc-bits", opt.crc_bits, "CRC width in bits, 0 disables")->capture_default_str();
    app.add_option("--crc-poly", opt.crc_poly, "CRC generator polynomial")->capture_default_str();
    app.add_option("--crc-init", opt.crc_init, "CRC initial register")->capture_default_str();
    app.add_flag("--crc-reflect", opt.crc_reflect, "Reverse the emitted checksum bit order");
    app.add_option("--crc-xorout", opt.crc_xorout, "CRC final XOR value")->capture_default_str();
    app.add_option("--max-rate0", opt.constraints.max_rate0, "Rate-0 leaf width cap (0 = none)")
        ->capture_default_str();
    app.add_option("--max-rate1", opt.constraints.max_rate1, "Rate-1 leaf width cap (0 = none)")
        ->capture_default_str();
    app.add_option("--max-rep", opt.constraints.max_rep, "Repetition leaf width cap")
        ->capture_default_str();
    app.add_option("--max-birep", opt.constraints.max_birep, "Birepetition leaf width cap")
        ->capture_default_str();
    app.add_option("--max-spc", opt.constraints.max_spc, "SPC leaf width cap")->capture_default_str();
    app.add_flag("--no-spc", opt.no_spc, "Disable SPC leaves");
    app.add_flag("--no-birep", opt.no_birep, "Disable birepetition leaves");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar-code codec and Monte-Carlo FER simulator"};
    app.require_subcommand(1);

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "Run a seeded FER sweep and emit CSV");
    CodeOptions sweep_code;
    add_code_options(*sweep, sweep_code);
    std::string variant = "fast-ssc-flip";
    std::size_t t_max = 8;
    double scale = 0.5;
    std::vector<double> ebn0;
    std::uint64_t min_errors = 100, max_frames = 10'000'000, seed = 1;
    unsigned workers = 1;
    std::size_t p_lanes = 64, q_lambda = 8;
    std::string out_path;
    bool quiet = false;
    sweep->add_option("--variant", variant, "sc, scf, fast-ssc or fast-ssc-flip")
        ->capture_default_str();
    sweep->add_option("--tmax", t_max, "Maximum decoding trials")->capture_default_str();
    sweep->add_option("--scale", scale, "SPC reliability scaling factor s")->capture_default_str();
    sweep->add_option("--ebn0", ebn0, "Eb/N0 grid in dB")->expected(-1);
    sweep->add_option("--min-errors", min_errors, "Frame errors to stop a grid point")
        ->capture_default_str();
    sweep->add_option("--max-frames", max_frames, "Frame cap per grid point")->capture_default_str();
    sweep->add_option("--seed", seed, "Simulation seed")->capture_default_str();
    sweep->add_option("--workers", workers, "Worker threads")->capture_default_str();
    sweep->add_option("--p-lanes", p_lanes, "LLRs per cycle in the latency model")
        ->capture_default_str();
    sweep->add_option("--q-lambda", q_lambda, "Decision-LLR quantization bits")
        ->capture_default_str();
    sweep->add_option("--out", out_path, "Output CSV path (stdout when omitted)");
    sweep->add_flag("--quiet", quiet, "Suppress per-point progress on stderr");
    std::string config_path;
    sweep->add_option("--config", config_path, "Flat key=value config file; flags override it");

    // --- tree-dump ---
    auto* tree_cmd = app.add_subcommand("tree-dump", "Print the pruned decoder tree");
    CodeOptions tree_code;
    add_code_options(*tree_cmd, tree_code);

    // --- latency ---
    auto* lat_cmd = app.add_subcommand("latency", "Print the clock-cycle and memory model");
    CodeOptions lat_code;
    add_code_options(*lat_cmd, lat_code);
    std::size_t lat_tmax = 8, lat_p = 64, lat_q = 8;
    double avg_trials = 1.0;
    lat_cmd->add_option("--tmax", lat_tmax, "Maximum decoding trials")->capture_default_str();
    lat_cmd->add_option("--p-lanes", lat_p, "LLRs per cycle")->capture_default_str();
    lat_cmd->add_option("--q-lambda", lat_q, "Decision-LLR quantization bits")->capture_default_str();
    lat_cmd->add_option("--avg-trials", avg_trials, "Average trials for the mean execution time")
        ->capture_default_str();

    // --- compare ---
    auto* cmp_cmd = app.add_subcommand("compare", "Eb/N0 gap between two sweep CSVs at a target FER");
    std::string baseline_csv, candidate_csv;
    double target_fer = 1e-3;
    cmp_cmd->add_option("--baseline", baseline_csv, "Baseline CSV")->required();
    cmp_cmd->add_option("--candidate", candidate_csv, "Candidate CSV")->required();
    cmp_cmd->add_option("--target-fer", target_fer, "FER level to interpolate at")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            if (!config_path.empty()) {
                const auto kv = read_config_file(config_path);
                std::map<std::string, std::function<void(const std::string&)>> set;
                set["frozen-file"] = [&](const std::string& v) { sweep_code.frozen_file = v; };
                set["n"] = [&](const std::string& v) { sweep_code.n_bits = std::stoull(v); };
                set["k"] = [&](const std::string& v) { sweep_code.k_info = std::stoull(v); };
                set["design-ebn0"] = [&](const std::string& v) { sweep_code.design_ebn0 = std::stod(v); };
                set["crc-on-top"] = [&](const std::string& v) { sweep_code.crc_on_top = parse_bool(v); };
                set["crc-bits"] = [&](const std::string& v) { sweep_code.crc_bits = std::stoull(v); };
                set["crc-poly"] = [&](const std::string& v) { sweep_code.crc_poly = v; };
                set["crc-init"] = [&](const std::string& v) { sweep_code.crc_init = v; };
                set["crc-reflect"] = [&](const std::string& v) { sweep_code.crc_reflect = parse_bool(v); };
                set["crc-xorout"] = [&](const std::string& v) { sweep_code.crc_xorout = v; };
                set["max-rate0"] = [&](const std::string& v) { sweep_code.constraints.max_rate0 = std::stoull(v); };
                set["max-rate1"] = [&](const std::string& v) { sweep_code.constraints.max_rate1 = std::stoull(v); };
                set["max-rep"] = [&](const std::string& v) { sweep_code.constraints.max_rep = std::stoull(v); };
                set["max-birep"] = [&](const std::string& v) { sweep_code.constraints.max_birep = std::stoull(v); };
                set["max-spc"] = [&](const std::string& v) { sweep_code.constraints.max_spc = std::stoull(v); };
                set["no-spc"] = [&](const std::string& v) { sweep_code.no_spc = parse_bool(v); };
                set["no-birep"] = [&](const std::string& v) { sweep_code.no_birep = parse_bool(v); };
                set["variant"] = [&](const std::string& v) { variant = v; };
                set["tmax"] = [&](const std::string& v) { t_max = std::stoull(v); };
                set["scale"] = [&](const std::string& v) { scale = std::stod(v); };
                set["ebn0"] = [&](const std::string& v) {
                    ebn0.clear();
                    std::string item;
                    std::istringstream vs(v);
                    while (std::getline(vs, item, ','))
                        for (std::istringstream is(item); is >> item;) ebn0.push_back(std::stod(item));
                };
                set["min-errors"] = [&](const std::string& v) { min_errors = std::stoull(v); };
                set["max-frames"] = [&](const std::string& v) { max_frames = std::stoull(v); };
                set["seed"] = [&](const std::string& v) { seed = std::stoull(v); };
                set["workers"] = [&](const std::string& v) { workers = static_cast<unsigned>(std::stoul(v)); };
                set["p-lanes"] = [&](const std::string& v) { p_lanes = std::stoull(v); };
                set["q-lambda"] = [&](const std::string& v) { q_lambda = std::stoull(v); };
                set["out"] = [&](const std::string& v) { out_path = v; };
                set["quiet"] = [&](const std::string& v) { quiet = parse_bool(v); };
                merge_config(*sweep, kv, set);
            }
            SweepConfig cfg = sweep_code.base_config();
            cfg.variant = variant_from_string(variant);
            cfg.t_max = t_max;
            cfg.s_factor = scale;
            cfg.ebn0_grid_db = ebn0;
            cfg.min_frame_errors = min_errors;
            cfg.max_frames = max_frames;
            cfg.seed = seed;
            cfg.workers = workers;
            cfg.p_lanes = p_lanes;
            cfg.q_lambda = q_lambda;
            ProgressFn progress;
            if (!quiet)
                progress = [](const SweepRow& r) {
                    std::fprintf(stderr, "EbN0 %.3f dB: FER %.4g (%llu/%llu), avg trials %.4g\n",
                                 r.ebn0_db, r.fer, static_cast<unsigned long long>(r.frame_errors),
                                 static_cast<unsigned long long>(r.frames), r.avg_trials);
                };
            const auto rows = run_sweep(cfg, progress);
            if (out_path.empty())
                std::cout << format_csv(rows);
            else
                emit_csv(rows, out_path);
        } else if (tree_cmd->parsed()) {
            const PolarCode code = tree_code.base_config().make_code();
            const DecoderTree tree = build_decoder_tree(code, tree_code.node_constraints());
            std::cout << dump_tree(tree);
            std::map<std::string, std::size_t> counts;
            for (const auto& node : tree.nodes) ++counts[to_string(node.kind)];
            std::cout << "# " << tree.nodes.size() << " nodes:";
            for (const auto& [kind, count] : counts) std::cout << ' ' << kind << '=' << count;
            std::cout << '\n';
        } else if (lat_cmd->parsed()) {
            const PolarCode code = lat_code.base_config().make_code();
            const DecoderTree tree = build_decoder_tree(code, lat_code.node_constraints());
            const HwParams hw{lat_p, lat_q, lat_tmax};
            const double fast = fast_ssc_latency(tree, hw);
            const double sc = sc_latency_semiparallel(code.n_bits(), code.first_info_bit());
            std::printf("fast-ssc per-trial CCs:      %.6g\n", fast);
            std::printf("fast-ssc worst case (T=%zu): %.6g\n", lat_tmax,
                        scf_worst_case(lat_tmax, fast));
            std::printf("fast-ssc average:            %.6g\n", average_execution(avg_trials, fast));
            std::printf("semi-parallel SC per-trial:  %.6g\n", sc);
            std::printf("SCF worst case (T=%zu):      %.6g\n", lat_tmax,
                        scf_worst_case(lat_tmax, sc));
            if (lat_tmax >= 2) {
                const MemoryEstimate mem = memory_estimate(code, hw);
                std::printf("decision-LLR memory:         %zu bits\n", mem.lambda_bits);
                std::printf("decision-index memory:       %zu bits\n", mem.index_bits);
            }
        } else if (cmp_cmd->parsed()) {
            const double gap = compare_runs(std::filesystem::path(baseline_csv),
                                            std::filesystem::path(candidate_csv), target_fer);
            std::printf("gap at FER %g: %.6g dB\n", target_fer, gap);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
