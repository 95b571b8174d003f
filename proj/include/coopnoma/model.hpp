#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coopnoma {

enum class DuplexMode { FullDuplex, HalfDuplex };

// Five relay-selection strategies. RRS_* pick one relay uniformly at random and
// then behave like the base scheme with a single candidate.
enum class Scheme { SRS, TRS, RRS_SRS, RRS_TRS, OMA };

/// Loop-interference switch: 1 for full duplex, 0 for half duplex.
constexpr double switching_factor(DuplexMode mode) noexcept
{
    return mode == DuplexMode::FullDuplex ? 1.0 : 0.0;
}

std::string_view to_string(DuplexMode mode) noexcept;
std::string_view to_string(Scheme scheme) noexcept;
std::optional<DuplexMode> parse_duplex(std::string_view text) noexcept;
std::optional<Scheme> parse_scheme(std::string_view text) noexcept;

bool is_random_selection(Scheme scheme) noexcept;
/// SRS for RRS_SRS, TRS for RRS_TRS; identity otherwise.
Scheme base_scheme(Scheme scheme) noexcept;

double db_to_linear(double db) noexcept;

/// Scenario parameters. Defaults reproduce the reference parameter table
/// (a1 = 0.2, a2 = 0.8, R_D1 = 1, R_D2 = 0.1 BPCU, alpha = 2, R_D = 2 m,
/// d1 = 10 m, d2 = 12 m, N = 15).
///
/// SNR and loop-interference power are stored in dB and converted once through
/// rho() / omega_li(); everything downstream works on linear values.
struct SystemConfig {
    double snr_db = 30.0;
    double a1 = 0.2;
    double a2 = 0.8;
    double rate_d1 = 1.0;
    double rate_d2 = 0.1;
    double alpha = 2.0;
    double disc_radius = 2.0;
    double d1 = 10.0;
    double d2 = 12.0;
    double omega_li_db = -10.0;
    int num_relays = 2;
    DuplexMode duplex = DuplexMode::FullDuplex;
    int quad_order = 15;

    double rho() const noexcept { return db_to_linear(snr_db); }
    double omega_li() const noexcept { return db_to_linear(omega_li_db); }
    double varpi() const noexcept { return switching_factor(duplex); }
    /// 1 + d_j^alpha, the rate of the relay->user exponential gain after path loss.
    double user_path_gain_inverse(int user) const noexcept;

    bool operator==(const SystemConfig&) const = default;
};

/// Every violated invariant, one human-readable line each. Empty means valid.
std::vector<std::string> validate_config(const SystemConfig& config);

struct DerivedThresholds {
    double gamma_th1 = 0.0;
    double gamma_th2 = 0.0;
    double tau = 0.0;    // tau (FD) or tau1 (HD); +inf when infeasible
    double xi = 0.0;     // xi (FD) or xi1 (HD)
    double theta = 0.0;  // max(tau, xi); +inf when infeasible
    bool feasible = false;
};

/// 2^R - 1 for full duplex, 2^(2R) - 1 for half duplex.
double rate_threshold(double rate, DuplexMode mode) noexcept;

/// Thresholds of the active duplex mode. When a2 <= a1 * gamma_th2 the message
/// of D2 can never be decoded through SIC; feasible is false and tau/theta are
/// set to +inf so that every outage expression evaluates to 1.
DerivedThresholds compute_thresholds(const SystemConfig& config);

/// Per-slot SNR thresholds of the four-slot orthogonal baseline, 2^(4R) - 1.
struct OmaThresholds {
    double gamma_d1 = 0.0;
    double gamma_d2 = 0.0;
};
OmaThresholds compute_oma_thresholds(const SystemConfig& config) noexcept;

}  // namespace coopnoma
