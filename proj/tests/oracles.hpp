#pragma once

// Reference computations that share no code with the library under test.

#include "coopnoma/model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <optional>
#include <vector>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

/// Ei(x), x < 0, from the first 200 series terms in 50-digit arithmetic.
inline double ei(double x)
{
    const big bx(x);
    big term = 1;
    big sum = 0;
    for (int k = 1; k <= 200; ++k) {
        term *= bx / k;
        sum += term / k;
    }
    const big euler("0.57721566490153286060651209008240243104215933593992");
    return static_cast<double>(euler + log(-bx) + sum);
}

/// E_r[f(1 + r^alpha)] for r with density 2r/R^2, by adaptive integration.
template <class F>
double disc_average(F f, double disc_radius, double alpha)
{
    auto integrand = [&](double r) { return 2.0 * r / (disc_radius * disc_radius) * f(1.0 + std::pow(r, alpha)); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, disc_radius, 12, 1e-12);
}

template <class F>
double integrate(F f, double a, double b)
{
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-12);
}

struct Thresholds {
    double g1, g2, tau, xi;
    bool feasible;
};

inline Thresholds thresholds(const coopnoma::SystemConfig& c)
{
    const double slots = c.duplex == coopnoma::DuplexMode::FullDuplex ? 1.0 : 2.0;
    const double rho = std::pow(10.0, c.snr_db / 10.0);
    Thresholds t{};
    t.g1 = std::pow(2.0, slots * c.rate_d1) - 1.0;
    t.g2 = std::pow(2.0, slots * c.rate_d2) - 1.0;
    t.feasible = c.a2 > c.a1 * t.g2;
    t.tau = t.g2 / (rho * (c.a2 - c.a1 * t.g2));
    t.xi = t.g1 / (rho * c.a1);
    return t;
}

/// Probability that one relay passes the x2 tests at threshold x on the relay
/// link and tau on the user links, integrating the disc exactly.
inline double relay_pass(const coopnoma::SystemConfig& c, double x_relay, double x_d1, double x_d2)
{
    const double rho = std::pow(10.0, c.snr_db / 10.0);
    const double omega = std::pow(10.0, c.omega_li_db / 10.0);
    const double varpi = c.duplex == coopnoma::DuplexMode::FullDuplex ? 1.0 : 0.0;
    const double l1 = 1.0 + std::pow(c.d1, c.alpha);
    const double l2 = 1.0 + std::pow(c.d2, c.alpha);
    const double relay = disc_average(
        [&](double cn) { return std::exp(-cn * x_relay) / (1.0 + varpi * rho * x_relay * cn * omega); }, c.disc_radius,
        c.alpha);
    return relay * std::exp(-l1 * x_d1 - l2 * x_d2);
}

/// SRS outage with the disc average done by adaptive quadrature instead of Chebyshev.
inline double srs_outage(const coopnoma::SystemConfig& c)
{
    const auto t = thresholds(c);
    if (!t.feasible) {
        return 1.0;
    }
    return std::pow(1.0 - relay_pass(c, t.tau, t.tau, t.tau), c.num_relays);
}

/// TRS outage: every relay independently passes both stages with probability
/// q = Pr(X > theta (rho varpi Z + 1), Y1 > theta, Y2 > tau); outage iff none does.
inline double trs_outage(const coopnoma::SystemConfig& c)
{
    const auto t = thresholds(c);
    if (!t.feasible) {
        return 1.0;
    }
    const double theta = std::max(t.tau, t.xi);
    return std::pow(1.0 - relay_pass(c, theta, theta, t.tau), c.num_relays);
}

/// -lambda1 * integral_tau^xi e^{-(lambda1 + c) y} / (1 + rho c omega y) dy by direct quadrature.
inline double window_tail(double c, double lambda1, double rho, double omega, double tau, double xi)
{
    if (!(xi > tau)) {
        return 0.0;
    }
    return -lambda1 * integrate(
        [&](double y) { return std::exp(-(lambda1 + c) * y) / (1.0 + rho * c * omega * y); }, tau, xi);
}

/// Brute-force selectors, written without the library helpers.
struct Relay {
    double relay_x2, relay_x1, d1_x2, d1_x1, d2_x2;
};

inline std::size_t srs_pick(const std::vector<Relay>& relays)
{
    std::size_t best = 0;
    double best_value = -1.0;
    for (std::size_t i = 0; i < relays.size(); ++i) {
        const auto& r = relays[i];
        const double v = std::min({r.relay_x2, r.d1_x2, r.d2_x2});
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    return best;
}

inline std::optional<std::size_t> trs_pick(const std::vector<Relay>& relays, double g2)
{
    std::vector<std::size_t> admitted;
    for (std::size_t i = 0; i < relays.size(); ++i) {
        const auto& r = relays[i];
        if (r.relay_x2 >= g2 && r.d1_x2 >= g2 && r.d2_x2 >= g2) {
            admitted.push_back(i);
        }
    }
    if (admitted.empty()) {
        return std::nullopt;
    }
    std::size_t best = admitted.front();
    for (std::size_t i : admitted) {
        const double v = std::min(relays[i].relay_x1, relays[i].d1_x1);
        if (v > std::min(relays[best].relay_x1, relays[best].d1_x1)) {
            best = i;
        }
    }
    return best;
}

}  // namespace oracle
