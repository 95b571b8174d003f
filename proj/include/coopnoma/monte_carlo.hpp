#pragma once

#include "coopnoma/model.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace coopnoma {

/// Approximate sets the relay-to-user distance to the BS-to-user distance d_j;
/// Exact applies the law of cosines with both users on one ray from the BS.
enum class DistanceMode { Exact, Approximate };

std::string_view to_string(DistanceMode mode) noexcept;
std::optional<DistanceMode> parse_distance_mode(std::string_view text) noexcept;

/// Deterministic substream keyed by (seed, stream index).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Exponential with the given mean, by inversion.
    double exponential(double mean) noexcept { return -mean * std::log1p(-uniform()); }

private:
    std::mt19937_64 engine_;
};

struct NetworkRealization {
    std::vector<double> r;       // relay radius, density 2r / R_D^2
    std::vector<double> theta;   // relay polar angle relative to the user ray
    std::vector<double> g_sr;
    std::vector<double> g_rd1;
    std::vector<double> g_rd2;
    std::vector<double> g_li;    // drawn in both duplex modes, ignored for HD
    std::vector<double> d_rd1;
    std::vector<double> d_rd2;
    std::size_t random_pick = 0;  // relay used by the RRS benchmarks

    std::size_t size() const noexcept { return g_sr.size(); }
};

/// Per-relay SINRs, plus interference-free per-hop SNRs for the OMA baseline.
struct SinrSet {
    std::vector<double> relay_x2;  // x2 decoded at the relay, x1 as interference
    std::vector<double> relay_x1;  // x1 at the relay after SIC
    std::vector<double> d1_x2;     // x2 at D1 before SIC
    std::vector<double> d1_x1;     // x1 at D1 after SIC
    std::vector<double> d2_x2;     // x2 at D2
    std::vector<double> snr_sr;
    std::vector<double> snr_rd1;
    std::vector<double> snr_rd2;

    std::size_t size() const noexcept { return relay_x2.size(); }
    void resize(std::size_t k);
};

struct OutageEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;  // sqrt(p_hat (1 - p_hat) / trials)
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
    Scheme scheme = Scheme::SRS;
    DuplexMode duplex = DuplexMode::FullDuplex;
    double snr_db = 0.0;
};

struct McOptions {
    unsigned threads = 1;
    /// Trials per substream. Estimates depend on this, never on the thread count.
    std::uint64_t chunk_size = 1u << 16;
};

void sample_realization(RngStream& rng, const SystemConfig& config, DistanceMode mode, NetworkRealization& out);
NetworkRealization sample_realization(RngStream& rng, const SystemConfig& config, DistanceMode mode);

void compute_sinrs(const NetworkRealization& real, const SystemConfig& config, SinrSet& out);
SinrSet compute_sinrs(const NetworkRealization& real, const SystemConfig& config);

/// argmax_i min(relay_x2, d1_x2, d2_x2); lowest index on ties.
std::size_t select_srs(const SinrSet& sinrs);

/// Stage 1 keeps relays whose three x2 SINRs reach gamma_th2; stage 2 takes the
/// argmax of min(relay_x1, d1_x1) among them. Empty stage 1 gives nullopt.
std::optional<std::size_t> select_trs(const SinrSet& sinrs, const DerivedThresholds& thresholds);

/// Relays admitted by the first TRS stage, in index order.
std::vector<std::size_t> trs_first_stage(const SinrSet& sinrs, const DerivedThresholds& thresholds);

/// Largest OMA end-to-end margin; outage iff it is below 1.
std::size_t select_oma(const SinrSet& sinrs, const OmaThresholds& thresholds);

bool trial_outage(Scheme scheme,
                  const NetworkRealization& real,
                  const SinrSet& sinrs,
                  const SystemConfig& config,
                  const DerivedThresholds& thresholds);
bool trial_outage(Scheme scheme,
                  const NetworkRealization& real,
                  const SystemConfig& config,
                  const DerivedThresholds& thresholds);

OutageEstimate estimate_outage(Scheme scheme,
                               const SystemConfig& config,
                               std::uint64_t trials,
                               std::uint64_t seed,
                               DistanceMode mode = DistanceMode::Approximate,
                               const McOptions& options = {});

/// Several schemes counted on the same draws. Each scheme's estimate equals
/// what estimate_outage() returns for it alone with the same arguments.
std::vector<OutageEstimate> estimate_outages(std::span<const Scheme> schemes,
                                             const SystemConfig& config,
                                             std::uint64_t trials,
                                             std::uint64_t seed,
                                             DistanceMode mode = DistanceMode::Approximate,
                                             const McOptions& options = {});

}  // namespace coopnoma
