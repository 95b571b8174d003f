#include "coopnoma/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace coopnoma {

std::string_view to_string(DistanceMode mode) noexcept
{
    return mode == DistanceMode::Exact ? "exact" : "approx";
}

std::optional<DistanceMode> parse_distance_mode(std::string_view text) noexcept
{
    if (text == "exact" || text == "Exact") {
        return DistanceMode::Exact;
    }
    if (text == "approx" || text == "approximate" || text == "Approximate") {
        return DistanceMode::Approximate;
    }
    return std::nullopt;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
    engine_.seed(seq);
}

void SinrSet::resize(std::size_t k)
{
    for (auto* v : {&relay_x2, &relay_x1, &d1_x2, &d1_x1, &d2_x2, &snr_sr, &snr_rd1, &snr_rd2}) {
        v->resize(k);
    }
}

namespace {

double path_loss(double distance, double alpha)
{
    return 1.0 + (alpha == 2.0 ? distance * distance : std::pow(distance, alpha));
}

double min3(double a, double b, double c)
{
    return std::min(a, std::min(b, c));
}

double srs_metric(const SinrSet& s, std::size_t i)
{
    return min3(s.relay_x2[i], s.d1_x2[i], s.d2_x2[i]);
}

double trs_metric(const SinrSet& s, std::size_t i)
{
    return std::min(s.relay_x1[i], s.d1_x1[i]);
}

bool passes_first_stage(const SinrSet& s, std::size_t i, double gamma_th2)
{
    return s.relay_x2[i] >= gamma_th2 && s.d1_x2[i] >= gamma_th2 && s.d2_x2[i] >= gamma_th2;
}

double oma_margin(const SinrSet& s, std::size_t i, const OmaThresholds& t)
{
    const double to_d1 = std::min(s.snr_sr[i], s.snr_rd1[i]) / t.gamma_d1;
    const double to_d2 = std::min(s.snr_sr[i], s.snr_rd2[i]) / t.gamma_d2;
    return std::min(to_d1, to_d2);
}

bool single_relay_outage(Scheme base, const SinrSet& s, std::size_t i, const DerivedThresholds& t)
{
    if (!passes_first_stage(s, i, t.gamma_th2)) {
        return true;
    }
    return base == Scheme::TRS && trs_metric(s, i) < t.gamma_th1;
}

bool outage_with(Scheme scheme,
                 const NetworkRealization& real,
                 const SinrSet& sinrs,
                 const DerivedThresholds& thresholds,
                 const OmaThresholds& oma)
{
    switch (scheme) {
    case Scheme::SRS: return single_relay_outage(Scheme::SRS, sinrs, select_srs(sinrs), thresholds);
    case Scheme::TRS: {
        const auto chosen = select_trs(sinrs, thresholds);
        return !chosen || trs_metric(sinrs, *chosen) < thresholds.gamma_th1;
    }
    case Scheme::RRS_SRS:
    case Scheme::RRS_TRS: return single_relay_outage(base_scheme(scheme), sinrs, real.random_pick, thresholds);
    case Scheme::OMA: return oma_margin(sinrs, select_oma(sinrs, oma), oma) < 1.0;
    }
    return true;
}

OutageEstimate finish(Scheme scheme, const SystemConfig& config, std::uint64_t trials, std::uint64_t outages)
{
    OutageEstimate e;
    e.scheme = scheme;
    e.duplex = config.duplex;
    e.snr_db = config.snr_db;
    e.trials = trials;
    e.outages = outages;
    e.p_hat = static_cast<double>(outages) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
    return e;
}

}  // namespace

void sample_realization(RngStream& rng, const SystemConfig& config, DistanceMode mode, NetworkRealization& out)
{
    const auto k = static_cast<std::size_t>(config.num_relays);
    for (auto* v : {&out.r, &out.theta, &out.g_sr, &out.g_rd1, &out.g_rd2, &out.g_li, &out.d_rd1, &out.d_rd2}) {
        v->resize(k);
    }
    const double omega = config.omega_li();
    for (std::size_t i = 0; i < k; ++i) {
        out.r[i] = config.disc_radius * std::sqrt(rng.uniform());
        out.theta[i] = 2.0 * std::numbers::pi * rng.uniform();
        out.g_sr[i] = rng.exponential(1.0);
        out.g_rd1[i] = rng.exponential(1.0);
        out.g_rd2[i] = rng.exponential(1.0);
        out.g_li[i] = rng.exponential(omega);
        if (mode == DistanceMode::Exact) {
            const double r = out.r[i];
            const double cos_t = std::cos(out.theta[i]);
            out.d_rd1[i] = std::sqrt(std::max(0.0, r * r + config.d1 * config.d1 - 2.0 * r * config.d1 * cos_t));
            out.d_rd2[i] = std::sqrt(std::max(0.0, r * r + config.d2 * config.d2 - 2.0 * r * config.d2 * cos_t));
        } else {
            out.d_rd1[i] = config.d1;
            out.d_rd2[i] = config.d2;
        }
    }
    out.random_pick = std::min(k - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(k)));
}

NetworkRealization sample_realization(RngStream& rng, const SystemConfig& config, DistanceMode mode)
{
    NetworkRealization out;
    sample_realization(rng, config, mode, out);
    return out;
}

void compute_sinrs(const NetworkRealization& real, const SystemConfig& config, SinrSet& out)
{
    const std::size_t k = real.size();
    out.resize(k);
    const double rho = config.rho();
    const double varpi = config.varpi();
    const double a1 = config.a1;
    const double a2 = config.a2;
    for (std::size_t i = 0; i < k; ++i) {
        const double x = real.g_sr[i] / path_loss(real.r[i], config.alpha);
        const double y1 = real.g_rd1[i] / path_loss(real.d_rd1[i], config.alpha);
        const double y2 = real.g_rd2[i] / path_loss(real.d_rd2[i], config.alpha);
        const double li = rho * varpi * real.g_li[i] + 1.0;
        out.snr_sr[i] = rho * x;
        out.snr_rd1[i] = rho * y1;
        out.snr_rd2[i] = rho * y2;
        out.relay_x2[i] = rho * x * a2 / (rho * x * a1 + li);
        out.relay_x1[i] = rho * x * a1 / li;
        out.d1_x2[i] = rho * y1 * a2 / (rho * y1 * a1 + 1.0);
        out.d1_x1[i] = rho * y1 * a1;
        out.d2_x2[i] = rho * y2 * a2 / (rho * y2 * a1 + 1.0);
    }
}

SinrSet compute_sinrs(const NetworkRealization& real, const SystemConfig& config)
{
    SinrSet out;
    compute_sinrs(real, config, out);
    return out;
}

std::size_t select_srs(const SinrSet& sinrs)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < sinrs.size(); ++i) {
        if (srs_metric(sinrs, i) > srs_metric(sinrs, best)) {
            best = i;
        }
    }
    return best;
}

std::optional<std::size_t> select_trs(const SinrSet& sinrs, const DerivedThresholds& thresholds)
{
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < sinrs.size(); ++i) {
        if (!passes_first_stage(sinrs, i, thresholds.gamma_th2)) {
            continue;
        }
        if (!best || trs_metric(sinrs, i) > trs_metric(sinrs, *best)) {
            best = i;
        }
    }
    return best;
}

std::vector<std::size_t> trs_first_stage(const SinrSet& sinrs, const DerivedThresholds& thresholds)
{
    std::vector<std::size_t> admitted;
    for (std::size_t i = 0; i < sinrs.size(); ++i) {
        if (passes_first_stage(sinrs, i, thresholds.gamma_th2)) {
            admitted.push_back(i);
        }
    }
    return admitted;
}

std::size_t select_oma(const SinrSet& sinrs, const OmaThresholds& thresholds)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < sinrs.size(); ++i) {
        if (oma_margin(sinrs, i, thresholds) > oma_margin(sinrs, best, thresholds)) {
            best = i;
        }
    }
    return best;
}

bool trial_outage(Scheme scheme,
                  const NetworkRealization& real,
                  const SinrSet& sinrs,
                  const SystemConfig& config,
                  const DerivedThresholds& thresholds)
{
    return outage_with(scheme, real, sinrs, thresholds, compute_oma_thresholds(config));
}

bool trial_outage(Scheme scheme,
                  const NetworkRealization& real,
                  const SystemConfig& config,
                  const DerivedThresholds& thresholds)
{
    return trial_outage(scheme, real, compute_sinrs(real, config), config, thresholds);
}

std::vector<OutageEstimate> estimate_outages(std::span<const Scheme> schemes,
                                             const SystemConfig& config,
                                             std::uint64_t trials,
                                             std::uint64_t seed,
                                             DistanceMode mode,
                                             const McOptions& options)
{
    if (trials < 1) {
        throw std::invalid_argument("estimate_outage needs at least one trial");
    }
    if (options.chunk_size < 1) {
        throw std::invalid_argument("chunk_size must be >= 1");
    }
    if (auto problems = validate_config(config); !problems.empty()) {
        throw std::invalid_argument("invalid config: " + problems.front());
    }

    const DerivedThresholds thresholds = compute_thresholds(config);
    const OmaThresholds oma = compute_oma_thresholds(config);
    const std::size_t n_schemes = schemes.size();
    const std::uint64_t n_chunks = (trials + options.chunk_size - 1) / options.chunk_size;
    std::vector<std::uint64_t> counts(n_chunks * n_schemes, 0);
    std::atomic<std::uint64_t> next_chunk{0};

    auto worker = [&] {
        NetworkRealization real;
        SinrSet sinrs;
        for (std::uint64_t chunk = next_chunk++; chunk < n_chunks; chunk = next_chunk++) {
            RngStream rng(seed, chunk);
            const std::uint64_t begin = chunk * options.chunk_size;
            const std::uint64_t end = std::min(trials, begin + options.chunk_size);
            std::uint64_t* row = counts.data() + chunk * n_schemes;
            for (std::uint64_t t = begin; t < end; ++t) {
                sample_realization(rng, config, mode, real);
                compute_sinrs(real, config, sinrs);
                for (std::size_t s = 0; s < n_schemes; ++s) {
                    row[s] += outage_with(schemes[s], real, sinrs, thresholds, oma) ? 1 : 0;
                }
            }
        }
    };

    const auto n_threads =
        static_cast<std::size_t>(std::clamp<std::uint64_t>(options.threads, 1, std::max<std::uint64_t>(n_chunks, 1)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i) {
            pool.emplace_back(worker);
        }
    }

    std::vector<OutageEstimate> out;
    out.reserve(n_schemes);
    for (std::size_t s = 0; s < n_schemes; ++s) {
        std::uint64_t outages = 0;
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            outages += counts[c * n_schemes + s];
        }
        out.push_back(finish(schemes[s], config, trials, outages));
    }
    return out;
}

OutageEstimate estimate_outage(Scheme scheme,
                               const SystemConfig& config,
                               std::uint64_t trials,
                               std::uint64_t seed,
                               DistanceMode mode,
                               const McOptions& options)
{
    const Scheme one[] = {scheme};
    return estimate_outages(one, config, trials, seed, mode, options).front();
}

}  // namespace coopnoma
