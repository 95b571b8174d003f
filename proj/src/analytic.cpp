#include "coopnoma/analytic.hpp"

#include "coopnoma/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coopnoma {

namespace {

double clamp01(double p)
{
    if (std::isnan(p)) {
        return 1.0;
    }
    return std::clamp(p, 0.0, 1.0);
}

double ipow(double base, int exponent)
{
    double result = 1.0;
    for (int i = 0; i < exponent; ++i) {
        result *= base;
    }
    return result;
}

double binomial(int n, int k)
{
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

// sum_k C(K, k) a^k fail^(K-k) (1 - fail)^k
double binomial_mixture(int relays, double a, double fail)
{
    double total = 0.0;
    for (int k = 0; k <= relays; ++k) {
        total += binomial(relays, k) * ipow(a, k) * ipow(fail, relays - k) * ipow(1.0 - fail, k);
    }
    return total;
}

// Everything the closed forms need, evaluated once per configuration.
struct Model {
    explicit Model(const SystemConfig& config)
        : relays(config.num_relays),
          thresholds(compute_thresholds(config)),
          table(build_quadrature(config.quad_order, config.disc_radius, config.alpha)),
          rho(config.rho()),
          omega(config.omega_li()),
          varpi(config.varpi()),
          lambda1(config.user_path_gain_inverse(1)),
          lambda2(config.user_path_gain_inverse(2))
    {
    }

    bool has_loop_interference() const { return varpi * omega > 0.0; }

    // 1 / (1 + varpi rho x c Omega): E_Z[exp(-c x rho varpi Z)] for Z ~ Exp(Omega).
    double li_factor(double x, double c) const { return 1.0 / (1.0 + varpi * rho * x * c * omega); }

    // Pr(X > x (rho varpi Z + 1)) averaged over the relay position and Z.
    double relay_survival(double x) const
    {
        return 1.0 - table.sum([&](double c) { return 1.0 - std::exp(-c * x) * li_factor(x, c); });
    }

    // Probability that a single relay passes the first TRS stage / the SRS test.
    double stage1_success() const
    {
        const double tau = thresholds.tau;
        return relay_survival(tau) * std::exp(-(lambda1 + lambda2) * tau);
    }

    // Probability that a single relay passes both TRS stages.
    double both_stages_success() const
    {
        const double tau = thresholds.tau;
        const double theta = thresholds.theta;
        return relay_survival(theta) * std::exp(-lambda1 * theta - lambda2 * tau);
    }

    int relays;
    DerivedThresholds thresholds;
    QuadratureTable table;
    double rho;
    double omega;
    double varpi;
    double lambda1;
    double lambda2;
};

// 1 - (1 - q)^K without cancellation.
double complement_of_power(double q, int relays)
{
    return -std::expm1(relays * std::log1p(-q));
}

double raw_srs(const Model& m)
{
    if (!m.thresholds.feasible) {
        return 1.0;
    }
    return ipow(1.0 - m.stage1_success(), m.relays);
}

Theta1Breakdown raw_theta1(const Model& m)
{
    Theta1Breakdown out;
    if (!m.thresholds.feasible) {
        out.theta1 = 1.0;
        return out;
    }
    const double tau = m.thresholds.tau;
    // Upper end of the (tau, xi) windows; when xi <= tau they are empty.
    const double xi = m.thresholds.theta;
    const double l1 = m.lambda1;
    const double d1_window = std::exp(-l1 * tau) - std::exp(-l1 * xi);

    // Contribution of the D1-link window that moves between m2 and m3:
    // -lambda1 * integral_tau^xi e^{-(lambda1 + c) y} / (1 + rho c Omega y) dy.
    auto window_tail = [&](double c) {
        if (!m.has_loop_interference()) {
            return -l1 / (l1 + c) * (std::exp(-(l1 + c) * tau) - std::exp(-(l1 + c) * xi));
        }
        const double rho_c_omega = m.rho * c * m.omega;
        const double zeta = (c + l1) / (m.rho * c);
        const double chi = m.li_factor(tau, c);
        const double psi = m.li_factor(xi, c);
        const double big_t = l1 * std::exp(-(c + l1) * xi) / rho_c_omega;
        const double big_phi = l1 * std::exp(-(c + l1) * tau) / rho_c_omega;
        return big_phi * scaled_exp_integral_ei(zeta / (m.omega * chi)) -
               big_t * scaled_exp_integral_ei(zeta / (m.omega * psi));
    };

    out.m1 = std::exp(-l1 * xi) * m.table.sum([&](double c) {
        return m.li_factor(tau, c) * std::exp(-c * tau) - m.li_factor(xi, c) * std::exp(-c * xi);
    });
    out.m2 = m.table.sum([&](double c) {
        return m.li_factor(tau, c) * std::exp(-c * tau) * d1_window + window_tail(c);
    });
    out.m3 = d1_window - m.table.sum([&](double c) { return d1_window + window_tail(c); });
    out.xi2 = std::exp(-l1 * tau) * m.relay_survival(tau);

    if (out.xi2 > 0.0 && std::isfinite(out.xi2)) {
        out.theta1 = (out.m1 + out.m2 + out.m3) / out.xi2;
    } else {
        // No relay can pass the first stage; the conditional is never used.
        out.theta1 = 1.0;
    }
    return out;
}

double raw_trs(const Model& m)
{
    if (!m.thresholds.feasible) {
        return 1.0;
    }
    const double theta1 = raw_theta1(m).theta1;
    const double p = m.stage1_success();
    double total = 0.0;
    for (int k = 0; k <= m.relays; ++k) {
        total += binomial(m.relays, k) * ipow(theta1, k) * ipow(p, k) * ipow(1.0 - p, m.relays - k);
    }
    return total;
}

double raw_exact(const SystemConfig& config, Scheme scheme)
{
    switch (scheme) {
    case Scheme::SRS: return raw_srs(Model(config));
    case Scheme::TRS: return raw_trs(Model(config));
    case Scheme::RRS_SRS:
    case Scheme::RRS_TRS: {
        SystemConfig single = config;
        single.num_relays = 1;
        return raw_exact(single, base_scheme(scheme));
    }
    case Scheme::OMA: break;
    }
    throw std::invalid_argument("no closed-form outage for the OMA baseline");
}

double asymptotic_srs(const Model& m)
{
    const double tau = m.thresholds.tau;
    if (m.varpi > 0.0) {
        const double floor = m.table.sum([&](double c) {
            const double x = m.rho * tau * c * m.omega;
            return x / (1.0 + x);
        });
        return ipow(floor, m.relays);
    }
    const double mean_c = m.table.sum([](double c) { return c; });
    const double fail = 1.0 - (1.0 - tau * mean_c) * (1.0 - (m.lambda1 + m.lambda2) * tau);
    return ipow(fail, m.relays);
}

double asymptotic_trs(const Model& m)
{
    const double tau = m.thresholds.tau;
    const double xi = m.thresholds.theta;
    if (m.varpi > 0.0) {
        const double stage1_fail = m.table.sum([&](double c) { return 1.0 - m.li_factor(tau, c); });
        const double window = m.table.sum([&](double c) { return m.li_factor(tau, c) - m.li_factor(xi, c); });
        return binomial_mixture(m.relays, window / (1.0 - stage1_fail), stage1_fail);
    }
    const double l1 = m.lambda1;
    const double delta = m.table.delta();
    const double mean_c = m.table.sum([](double c) { return c; });
    const double numerator = mean_c * (xi - tau) + l1 * xi - (l1 * tau + delta * (l1 * xi - l1 * tau)) -
                             delta * l1 * (tau - xi);
    const double relay_stage = 1.0 - tau * mean_c;
    const double stage1_fail = 1.0 - relay_stage * (1.0 - (l1 + m.lambda2) * tau);
    return binomial_mixture(m.relays, numerator / relay_stage, stage1_fail);
}

double raw_asymptotic(const SystemConfig& config, Scheme scheme)
{
    switch (scheme) {
    case Scheme::SRS:
    case Scheme::TRS: {
        const Model m(config);
        if (!m.thresholds.feasible) {
            return 1.0;
        }
        return scheme == Scheme::SRS ? asymptotic_srs(m) : asymptotic_trs(m);
    }
    case Scheme::RRS_SRS:
    case Scheme::RRS_TRS: {
        SystemConfig single = config;
        single.num_relays = 1;
        return raw_asymptotic(single, base_scheme(scheme));
    }
    case Scheme::OMA: break;
    }
    throw std::invalid_argument("no asymptotic outage for the OMA baseline");
}

}  // namespace

double srs_outage(const SystemConfig& config)
{
    return clamp01(raw_srs(Model(config)));
}

double trs_outage(const SystemConfig& config)
{
    return clamp01(raw_trs(Model(config)));
}

double trs_outage_product_form(const SystemConfig& config)
{
    const Model m(config);
    if (!m.thresholds.feasible) {
        return 1.0;
    }
    return clamp01(ipow(1.0 - m.both_stages_success(), m.relays));
}

Theta1Breakdown theta1_conditional(const SystemConfig& config)
{
    Theta1Breakdown out = raw_theta1(Model(config));
    out.theta1 = clamp01(out.theta1);
    return out;
}

double rrs_outage(const SystemConfig& config, Scheme base)
{
    const Scheme b = base_scheme(base);
    if (b != Scheme::SRS && b != Scheme::TRS) {
        throw std::invalid_argument("random relay selection needs an SRS or TRS base");
    }
    SystemConfig single = config;
    single.num_relays = 1;
    return b == Scheme::SRS ? srs_outage(single) : trs_outage(single);
}

double exact_outage(const SystemConfig& config, Scheme scheme)
{
    return clamp01(raw_exact(config, scheme));
}

double exact_success(const SystemConfig& config, Scheme scheme)
{
    if (scheme == Scheme::OMA) {
        throw std::invalid_argument("no closed-form outage for the OMA baseline");
    }
    SystemConfig effective = config;
    if (is_random_selection(scheme)) {
        effective.num_relays = 1;
    }
    const Model m(effective);
    if (!m.thresholds.feasible) {
        return 0.0;
    }
    const double q = base_scheme(scheme) == Scheme::SRS ? m.stage1_success() : m.both_stages_success();
    return clamp01(complement_of_power(q, m.relays));
}

double asymptotic_outage(const SystemConfig& config, Scheme scheme)
{
    return clamp01(raw_asymptotic(config, scheme));
}

DiversityEstimate diversity_order_estimate(const SystemConfig& config,
                                           Scheme scheme,
                                           std::pair<double, double> snr_window_db)
{
    constexpr double floor = 1e-12;
    DiversityEstimate out;
    const auto [lo, hi] = snr_window_db;
    if (!(hi != lo)) {
        out.note = "empty SNR window";
        return out;
    }
    SystemConfig at_lo = config;
    SystemConfig at_hi = config;
    at_lo.snr_db = lo;
    at_hi.snr_db = hi;
    const double p_lo = exact_outage(at_lo, scheme);
    const double p_hi = exact_outage(at_hi, scheme);
    if (!(p_lo > floor) || !(p_hi > floor)) {
        out.note = "outage below numerical floor 1e-12 inside the window";
        return out;
    }
    out.slope = -(std::log10(p_hi) - std::log10(p_lo)) / ((hi - lo) / 10.0);
    out.usable = true;
    return out;
}

double throughput(double outage, double rate_d1, double rate_d2)
{
    return (1.0 - outage) * (rate_d1 + rate_d2);
}

AnalyticPoint analytic_point(const SystemConfig& config, Scheme scheme)
{
    AnalyticPoint point;
    point.scheme = scheme;
    point.duplex = config.duplex;
    point.snr_db = config.snr_db;
    const double raw = raw_exact(config, scheme);
    point.p_exact = clamp01(raw);
    point.clamp_excursion = std::isnan(raw) ? 1.0 : std::max({0.0, raw - 1.0, -raw});
    point.p_asymptotic = asymptotic_outage(config, scheme);
    return point;
}

}  // namespace coopnoma
