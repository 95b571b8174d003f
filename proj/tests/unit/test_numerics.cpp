#include "coopnoma/numerics.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace coopnoma;

namespace {

std::vector<double> log_grid(double lo, double hi, int points)
{
    std::vector<double> xs;
    for (int i = 0; i < points; ++i) {
        xs.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
    }
    return xs;
}

double max_cdf_error(int order)
{
    const auto table = build_quadrature(order, 2.0, 2.0);
    double worst = 0.0;
    for (double x : log_grid(1e-4, 10.0, 200)) {
        worst = std::max(worst, std::abs(disc_cdf_chebyshev(x, table) - disc_cdf_exact(x, 2.0, 2.0)));
    }
    return worst;
}

}  // namespace

TEST_SUITE("numerics")
{
    TEST_CASE("single node table")
    {
        const auto t = build_quadrature(1, 2.0, 2.0);
        REQUIRE(t.order() == 1);
        CHECK(t.nodes()[0].phi == doctest::Approx(0.0));
        CHECK(t.nodes()[0].weight_factor == doctest::Approx(1.0));
        CHECK(t.nodes()[0].c == doctest::Approx(2.0));
        CHECK(t.prefactor() == doctest::Approx(std::numbers::pi / 2.0));
    }

    TEST_CASE("fifteen node table")
    {
        const auto t = build_quadrature(15, 2.0, 2.0);
        REQUIRE(t.order() == 15);
        CHECK(t.nodes()[0].phi == doctest::Approx(std::cos(std::numbers::pi / 30.0)));
        for (std::size_t n = 1; n < t.order(); ++n) {
            CHECK(t.nodes()[n].phi < t.nodes()[n - 1].phi);
        }
        for (const auto& node : t.nodes()) {
            CHECK(node.c > 1.0);
            CHECK(node.c <= 1.0 + 4.0);
        }
    }

    TEST_CASE("weight sum")
    {
        CHECK(build_quadrature(15, 2.0, 2.0).delta() == doctest::Approx(1.00183).epsilon(1e-5));
        CHECK(std::abs(build_quadrature(201, 2.0, 2.0).delta() - 1.0) < 1e-3);
        CHECK(std::abs(build_quadrature(201, 2.0, 2.0).delta() - 1.0) < std::abs(build_quadrature(51, 2.0, 2.0).delta() - 1.0));
        CHECK_THROWS_AS(build_quadrature(0, 2.0, 2.0), std::invalid_argument);
    }

    TEST_CASE("disc cdf endpoints")
    {
        CHECK(disc_cdf_exact(0.0, 2.0, 2.0) == 0.0);
        CHECK(disc_cdf_exact(1e6, 2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(disc_cdf_chebyshev(0.0, build_quadrature(15, 2.0, 2.0)) == 0.0);
    }

    TEST_CASE("adaptive integration matches the alpha = 2 antiderivative")
    {
        const double expected = 1.0 - std::exp(-0.5) * (1.0 - std::exp(-2.0)) / 2.0;
        CHECK(disc_cdf_alpha2(0.5, 2.0) == doctest::Approx(expected).epsilon(1e-15));
        for (double x : log_grid(1e-4, 10.0, 60)) {
            CHECK(std::abs(disc_cdf_exact(x, 2.0, 2.0) - disc_cdf_alpha2(x, 2.0)) < 1e-10);
        }
    }

    TEST_CASE("adaptive integration for alpha = 3 matches an independent quadrature")
    {
        for (double x : {0.01, 0.3, 2.0}) {
            const double ref = oracle::disc_average([x](double c) { return -std::expm1(-c * x); }, 2.0, 3.0);
            CHECK(std::abs(disc_cdf_exact(x, 2.0, 3.0) - ref) < 1e-10);
        }
    }

    TEST_CASE("chebyshev cdf error at N = 15")
    {
        // The 15-node sum over-weights the disc by 0.18 %, which shows up as an
        // absolute error of 1.68e-3 at x = 0.5 and ~1.8e-3 for large x.
        const auto table = build_quadrature(15, 2.0, 2.0);
        const double err = disc_cdf_chebyshev(0.5, table) - disc_cdf_exact(0.5, 2.0, 2.0);
        CHECK(err == doctest::Approx(1.6828e-3).epsilon(1e-3));
        CHECK(max_cdf_error(15) < 2e-3);
    }

    TEST_CASE("chebyshev cdf converges with order")
    {
        const double e5 = max_cdf_error(5);
        const double e15 = max_cdf_error(15);
        const double e51 = max_cdf_error(51);
        CHECK(e15 < e5);
        CHECK(e51 < e15);
        CHECK(max_cdf_error(201) < 1e-4);
    }

    TEST_CASE("N = 15 against N = 201 self-convergence")
    {
        const auto t15 = build_quadrature(15, 2.0, 2.0);
        const auto t201 = build_quadrature(201, 2.0, 2.0);
        for (double x : {0.01, 0.1, 1.0}) {
            const double rel = std::abs(disc_cdf_chebyshev(x, t15) / disc_cdf_chebyshev(x, t201) - 1.0);
            CHECK(rel < 3.1e-3);
            CHECK(rel > 1.5e-3);
        }
    }

    TEST_CASE("cdf is monotone and bounded")
    {
        const auto table = build_quadrature(15, 2.0, 2.0);
        double prev_exact = 0.0;
        double prev_cheb = 0.0;
        for (double x : log_grid(1e-6, 50.0, 300)) {
            const double e = disc_cdf_exact(x, 2.0, 2.0);
            const double c = disc_cdf_chebyshev(x, table);
            CHECK(e >= prev_exact);
            CHECK(c >= prev_cheb);
            CHECK(e <= 1.0);
            CHECK(e >= 0.0);
            prev_exact = e;
            prev_cheb = c;
        }
    }

    TEST_CASE("Ei reference values")
    {
        CHECK(std::abs(exp_integral_ei(-1.0) - (-0.21938393439552)) < 1e-10);
        CHECK(std::abs(exp_integral_ei(-1.0) - oracle::ei(-1.0)) < 1e-14);
        CHECK(std::abs(exp_integral_ei(-20.0) - (-9.8355252906e-11)) < 1e-15);
        CHECK(std::abs(exp_integral_ei(-30.0)) < std::abs(exp_integral_ei(-20.0)));
        CHECK(exp_integral_ei(-30.0) < 0.0);
    }

    TEST_CASE("Ei against the extended-precision series")
    {
        double worst = 0.0;
        for (double t : log_grid(1e-3, 30.0, 400)) {
            worst = std::max(worst, std::abs(exp_integral_ei(-t) - oracle::ei(-t)));
        }
        CHECK(worst < 1e-10);
    }

    TEST_CASE("Ei branches agree across the switchover")
    {
        for (double t = 0.5; t <= 12.0; t += 0.05) {
            const double ref = oracle::ei(-t);
            CHECK(std::abs(exp_integral_ei(-t) - ref) < 1e-10);
            CHECK(std::abs(scaled_exp_integral_ei(t) - ref * std::exp(t)) < 1e-10 * std::exp(t) * std::abs(ref));
        }
    }

    TEST_CASE("Ei rejects non-negative arguments")
    {
        CHECK_THROWS_AS(exp_integral_ei(0.0), std::domain_error);
        CHECK_THROWS_AS(exp_integral_ei(1.0), std::domain_error);
        CHECK_THROWS_AS(scaled_exp_integral_ei(0.0), std::domain_error);
        CHECK_THROWS_AS(scaled_exp_integral_ei(-1.0), std::domain_error);
    }

    TEST_CASE("scaled Ei stays finite and tends to -1/y")
    {
        for (double y : log_grid(1e-3, 700.0, 200)) {
            const double v = scaled_exp_integral_ei(y);
            CHECK(std::isfinite(v));
            CHECK(v < 0.0);
        }
        CHECK(scaled_exp_integral_ei(1e6) == doctest::Approx(-1e-6).epsilon(1e-5));
        CHECK(scaled_exp_integral_ei(INFINITY) == 0.0);
        for (double y : {0.01, 0.7, 3.0, 9.9, 10.1, 25.0}) {
            CHECK(scaled_exp_integral_ei(y) == doctest::Approx(std::exp(y) * oracle::ei(-y)).epsilon(1e-12));
        }
    }
}
