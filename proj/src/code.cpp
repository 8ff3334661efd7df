#include "polarflip/code.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "polarflip/channel.hpp"

namespace polarflip {

PolarCode::PolarCode(std::size_t n_bits, std::size_t k_info, std::vector<std::uint32_t> frozen,
                     std::size_t crc_bits)
    : n_bits_(n_bits), k_info_(k_info), crc_bits_(crc_bits), frozen_(std::move(frozen)) {
    if (!is_power_of_two(n_bits_) || n_bits_ < 2)
        throw std::invalid_argument("PolarCode: N must be a power of two >= 2");
    if (k_info_ > n_bits_) throw std::invalid_argument("PolarCode: k exceeds N");
    std::sort(frozen_.begin(), frozen_.end());
    frozen_.erase(std::unique(frozen_.begin(), frozen_.end()), frozen_.end());
    if (!frozen_.empty() && frozen_.back() >= n_bits_)
        throw std::invalid_argument("PolarCode: frozen index out of range");
    if (frozen_.size() != n_bits_ - k_info_)
        throw std::invalid_argument("PolarCode: |frozen| must equal N - k");
    if (crc_bits_ > 0 && k_info_ <= crc_bits_)
        throw std::invalid_argument("PolarCode: k must exceed the CRC width");

    frozen_mask_.assign(n_bits_, 0);
    for (auto i : frozen_) frozen_mask_[i] = 1;
    info_positions_.reserve(k_info_);
    for (std::uint32_t i = 0; i < n_bits_; ++i)
        if (!frozen_mask_[i]) info_positions_.push_back(i);
}

namespace {

// Two-piece fit of the Gaussian-approximation phi function and its inverse,
// standard constants.
constexpr double kAlpha = -0.4527;
constexpr double kBeta = 0.0218;
constexpr double kGamma = 0.8600;
constexpr double kPhiPivot = 0.867861;
constexpr double kPhiInvPivot = 0.6845772418;

double phi(double t) {
    if (t < kPhiPivot) return std::exp(0.0564 * t * t - 0.48560 * t);
    return std::exp(kAlpha * std::pow(t, kGamma) + kBeta);
}

double phi_inv(double t) {
    if (t > kPhiInvPivot) return 4.304964539 * (1.0 - std::sqrt(1.0 + 0.9567131408 * std::log(t)));
    return std::pow((std::log(t) - kBeta) / kAlpha, 1.0 / kGamma);
}

double check_update(double m) {
    const double v = phi_inv(1.0 - (1.0 - phi(m)) * (1.0 - phi(m)));
    if (std::isfinite(v)) return v;
    // Asymptotic branch when phi underflows.
    return m + std::log(2.0) / (kAlpha * kGamma);
}

} // namespace

std::vector<double> ga_bit_channel_means(std::size_t n_bits, double sigma) {
    if (!is_power_of_two(n_bits)) throw std::invalid_argument("ga_bit_channel_means: N must be a power of two");
    if (sigma <= 0.0) throw std::invalid_argument("ga_bit_channel_means: sigma must be positive");
    const unsigned n = log2_exact(n_bits);
    std::vector<double> m(n_bits, 2.0 / (sigma * sigma));
    for (unsigned level = 1; level <= n; ++level) {
        const std::size_t stride = n_bits >> (level - 1);
        const std::size_t half = stride / 2;
        for (std::size_t t = 0; t < (std::size_t{1} << (level - 1)); ++t) {
            const double v = m[t * stride];
            m[t * stride] = check_update(v);
            m[t * stride + half] = 2.0 * v;
        }
    }
    return m;
}

PolarCode construct_frozen_set(std::size_t n_bits, std::size_t k_info, double design_ebn0_db,
                               std::size_t crc_bits) {
    if (!is_power_of_two(n_bits) || n_bits < 2)
        throw std::invalid_argument("construct_frozen_set: N must be a power of two >= 2");
    if (k_info == 0 || k_info >= n_bits)
        throw std::invalid_argument("construct_frozen_set: k must satisfy 0 < k < N");

    const double rate = static_cast<double>(k_info) / static_cast<double>(n_bits);
    const auto means = ga_bit_channel_means(n_bits, sigma_from_ebn0(design_ebn0_db, rate));

    std::vector<std::uint32_t> order(n_bits);
    std::iota(order.begin(), order.end(), 0);
    // Ascending reliability; equal means freeze the lower index first.
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (means[a] != means[b]) return means[a] < means[b];
        return a < b;
    });
    std::vector<std::uint32_t> frozen(order.begin(), order.begin() + (n_bits - k_info));
    return PolarCode(n_bits, k_info, std::move(frozen), crc_bits);
}

PolarCode load_frozen_set(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_frozen_set: cannot open " + path.string());

    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("load_frozen_set: missing header");
    std::size_t n = 0, k = 0, crc = 0;
    {
        std::istringstream hs(header);
        std::string tok;
        bool have_n = false, have_k = false;
        while (hs >> tok) {
            if (tok.rfind("N=", 0) == 0) { n = std::stoull(tok.substr(2)); have_n = true; }
            else if (tok.rfind("k=", 0) == 0) { k = std::stoull(tok.substr(2)); have_k = true; }
            else if (tok.rfind("crc=", 0) == 0) { crc = std::stoull(tok.substr(4)); }
            else throw std::runtime_error("load_frozen_set: malformed header token '" + tok + "'");
        }
        if (!have_n || !have_k) throw std::runtime_error("load_frozen_set: header must contain N= and k=");
    }

    std::vector<std::uint32_t> frozen;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(line, &pos);
        } catch (const std::exception&) {
            throw std::runtime_error("load_frozen_set: malformed line " + std::to_string(lineno));
        }
        if (pos != line.size())
            throw std::runtime_error("load_frozen_set: malformed line " + std::to_string(lineno));
        if (v >= n)
            throw std::runtime_error("load_frozen_set: index " + std::to_string(v) +
                                     " out of range on line " + std::to_string(lineno));
        frozen.push_back(static_cast<std::uint32_t>(v));
    }
    return PolarCode(n, k, std::move(frozen), crc);
}

void save_frozen_set(const PolarCode& code, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_frozen_set: cannot open " + path.string());
    out << "N=" << code.n_bits() << " k=" << code.k_info() << " crc=" << code.crc_bits() << '\n';
    for (auto i : code.frozen()) out << i << '\n';
    if (!out) throw std::runtime_error("save_frozen_set: write failed for " + path.string());
}

BitVec encode(const PolarCode& code, std::span<const std::uint8_t> info) {
    if (info.size() != code.k_info()) throw std::invalid_argument("encode: info length must be k");
    BitVec u(code.n_bits(), 0);
    const auto& pos = code.info_positions();
    for (std::size_t d = 0; d < info.size(); ++d) u[pos[d]] = info[d] & 1;
    polar_transform_inplace(u);
    return u;
}

} // namespace polarflip
