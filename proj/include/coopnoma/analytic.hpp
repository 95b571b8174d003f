#pragma once

#include "coopnoma/model.hpp"

#include <string>
#include <utility>

namespace coopnoma {

/// Pieces of the conditional probability that a relay admitted by the first TRS
/// stage fails the second stage: theta1 = (m1 + m2 + m3) / xi2.
///
/// m1 covers the window where the relay's own decoding of x1 is the bottleneck
/// and D1's link exceeds max(tau, xi); m2 the window tau < Y1 < xi where the
/// relay is still the bottleneck; m3 the part where D1's link is the bottleneck.
/// The exponential-integral terms appear with opposite signs in m2 and m3.
struct Theta1Breakdown {
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double xi2 = 0.0;     // probability that a relay passes the first stage on the X/Y1 links
    double theta1 = 0.0;  // clamped to [0, 1]
};

struct AnalyticPoint {
    double p_exact = 1.0;
    double p_asymptotic = 1.0;
    /// How far the unclamped closed form left [0, 1] before clamping.
    double clamp_excursion = 0.0;
    Scheme scheme = Scheme::SRS;
    DuplexMode duplex = DuplexMode::FullDuplex;
    double snr_db = 0.0;
};

struct DiversityEstimate {
    double slope = 0.0;
    bool usable = false;
    std::string note;
};

double srs_outage(const SystemConfig& config);
double trs_outage(const SystemConfig& config);
Theta1Breakdown theta1_conditional(const SystemConfig& config);
/// base must be SRS or TRS (the RRS_* aliases are accepted too).
double rrs_outage(const SystemConfig& config, Scheme base);

/// Closed form for any non-OMA scheme. Throws std::invalid_argument for OMA.
double exact_outage(const SystemConfig& config, Scheme scheme);

/// 1 - outage, computed from the per-relay success probability so that outage
/// values indistinguishable from 1 in double precision still order correctly.
double exact_success(const SystemConfig& config, Scheme scheme);

/// TRS outage through the collapsed product form (1 - q)^K, q being the
/// probability that one relay passes both stages. Algebraically identical to
/// the binomial sum in trs_outage().
double trs_outage_product_form(const SystemConfig& config);

/// High-SNR expression for the scheme. Full-duplex forms keep their rho
/// dependence and approach the loop-interference floor; half-duplex forms are
/// first-order expansions in 1/rho.
double asymptotic_outage(const SystemConfig& config, Scheme scheme);

/// -delta log10(P) / delta log10(rho) of the closed form over the window.
DiversityEstimate diversity_order_estimate(const SystemConfig& config,
                                           Scheme scheme,
                                           std::pair<double, double> snr_window_db);

/// Delay-limited throughput (1 - P) R_D1 + (1 - P) R_D2 in BPCU.
double throughput(double outage, double rate_d1, double rate_d2);

AnalyticPoint analytic_point(const SystemConfig& config, Scheme scheme);

}  // namespace coopnoma
