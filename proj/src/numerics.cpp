#include "coopnoma/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace coopnoma {

namespace {

constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kSeriesLimit = 1.0;

// gamma + ln(y) + sum_k (-y)^k / (k k!), i.e. Ei(-y) for 0 < y <= 1.
double ei_series(double y)
{
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= -y / k;
        const double contribution = term / k;
        sum += contribution;
        if (std::abs(contribution) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return kEulerGamma + std::log(y) + sum;
}

// e^y E1(y) by the modified Lentz continued fraction; converges fast for y > 1.
double scaled_e1_continued_fraction(double y)
{
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    double b = y + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps) {
            break;
        }
    }
    return h;
}

}  // namespace

QuadratureTable::QuadratureTable(std::vector<QuadratureNode> nodes, double prefactor)
    : nodes_(std::move(nodes)), prefactor_(prefactor)
{
    double acc = 0.0;
    for (const auto& node : nodes_) {
        acc += node.weight_factor;
    }
    delta_ = prefactor_ * acc;
}

QuadratureTable build_quadrature(int order, double disc_radius, double alpha)
{
    if (order < 1) {
        throw std::invalid_argument("quadrature order must be >= 1, got " + std::to_string(order));
    }
    std::vector<QuadratureNode> nodes;
    nodes.reserve(static_cast<std::size_t>(order));
    for (int n = 1; n <= order; ++n) {
        QuadratureNode node;
        node.phi = std::cos((2.0 * n - 1.0) * std::numbers::pi / (2.0 * order));
        node.weight_factor = std::sqrt(1.0 - node.phi * node.phi) * (node.phi + 1.0);
        node.c = 1.0 + std::pow(disc_radius / 2.0 * (node.phi + 1.0), alpha);
        nodes.push_back(node);
    }
    return QuadratureTable(std::move(nodes), std::numbers::pi / (2.0 * order));
}

double disc_cdf_exact(double x, double disc_radius, double alpha)
{
    if (x <= 0.0) {
        return 0.0;
    }
    const double scale = 2.0 / (disc_radius * disc_radius);
    auto integrand = [=](double r) {
        return scale * r * -std::expm1(-(1.0 + std::pow(r, alpha)) * x);
    };
    using Integrator = boost::math::quadrature::gauss_kronrod<double, 15>;
    return Integrator::integrate(integrand, 0.0, disc_radius, 15, 1e-11);
}

double disc_cdf_alpha2(double x, double disc_radius)
{
    if (x <= 0.0) {
        return 0.0;
    }
    const double area = x * disc_radius * disc_radius;
    return 1.0 + std::exp(-x) * std::expm1(-area) / area;
}

double disc_cdf_chebyshev(double x, const QuadratureTable& table)
{
    return table.sum([x](double c) { return -std::expm1(-c * x); });
}

double exp_integral_ei(double x)
{
    if (!(x < 0.0)) {
        throw std::domain_error("exp_integral_ei: argument must be negative, got " + std::to_string(x));
    }
    const double y = -x;
    if (y <= kSeriesLimit) {
        return ei_series(y);
    }
    return -std::exp(-y) * scaled_e1_continued_fraction(y);
}

double scaled_exp_integral_ei(double y)
{
    if (!(y > 0.0)) {
        throw std::domain_error("scaled_exp_integral_ei: argument must be positive, got " + std::to_string(y));
    }
    if (std::isinf(y)) {
        return 0.0;
    }
    if (y <= kSeriesLimit) {
        return std::exp(y) * ei_series(y);
    }
    return -scaled_e1_continued_fraction(y);
}

}  // namespace coopnoma
