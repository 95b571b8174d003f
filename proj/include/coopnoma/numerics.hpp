#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coopnoma {

struct QuadratureNode {
    double phi = 0.0;            // cos((2n - 1) pi / 2N)
    double weight_factor = 0.0;  // sqrt(1 - phi^2) (phi + 1)
    double c = 0.0;              // 1 + ((R_D / 2)(phi + 1))^alpha
};

/// Gauss-Chebyshev nodes for averaging over a relay placed uniformly on a disc.
///
/// The uniform-disc radial density 2r/R_D^2 is mapped onto [-1, 1] with
/// r = (R_D / 2)(phi + 1). Node n then carries the quadrature weight
/// prefactor * weight_factor and the path-loss factor c_n = 1 + r_n^alpha,
/// so E[g(1 + r^alpha)] ~= sum_n weight(n) g(c_n).
class QuadratureTable {
public:
    QuadratureTable() = default;
    QuadratureTable(std::vector<QuadratureNode> nodes, double prefactor);

    std::span<const QuadratureNode> nodes() const noexcept { return nodes_; }
    std::size_t order() const noexcept { return nodes_.size(); }
    double prefactor() const noexcept { return prefactor_; }
    double weight(std::size_t n) const noexcept { return prefactor_ * nodes_[n].weight_factor; }
    /// Sum of all weights. Tends to 1 as the order grows; exceeds 1 slightly at
    /// finite order (1.00183 at N = 15).
    double delta() const noexcept { return delta_; }

    /// sum_n weight(n) * f(c_n)
    template <class F>
    double sum(F&& f) const
    {
        double acc = 0.0;
        for (const auto& node : nodes_) {
            acc += node.weight_factor * f(node.c);
        }
        return prefactor_ * acc;
    }

private:
    std::vector<QuadratureNode> nodes_;
    double prefactor_ = 0.0;
    double delta_ = 0.0;
};

QuadratureTable build_quadrature(int order, double disc_radius, double alpha);

/// CDF of X = |h|^2 / (1 + r^alpha) with |h|^2 ~ Exp(1) and r uniform on a disc
/// of radius disc_radius, by adaptive Gauss-Kronrod integration (1e-10 absolute).
double disc_cdf_exact(double x, double disc_radius, double alpha);

/// Closed antiderivative of the same CDF, valid only for alpha = 2.
double disc_cdf_alpha2(double x, double disc_radius);

/// Gauss-Chebyshev approximation of the disc CDF.
double disc_cdf_chebyshev(double x, const QuadratureTable& table);

/// Exponential integral Ei(x) for x < 0. Throws std::domain_error otherwise.
///
/// |x| <= 1 uses the power series gamma + ln|x| + sum x^k / (k k!); beyond that
/// a continued fraction for E1(-x) = -Ei(x).
double exp_integral_ei(double x);

/// e^y Ei(-y) for y > 0, evaluated without forming e^y or Ei(-y) separately.
/// Finite for every positive y (tends to -1/y for large y).
double scaled_exp_integral_ei(double y);

}  // namespace coopnoma
