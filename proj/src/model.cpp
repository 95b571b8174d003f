#include "coopnoma/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace coopnoma {

std::string_view to_string(DuplexMode mode) noexcept
{
    return mode == DuplexMode::FullDuplex ? "FD" : "HD";
}

std::string_view to_string(Scheme scheme) noexcept
{
    switch (scheme) {
    case Scheme::SRS: return "SRS";
    case Scheme::TRS: return "TRS";
    case Scheme::RRS_SRS: return "RRS_SRS";
    case Scheme::RRS_TRS: return "RRS_TRS";
    case Scheme::OMA: return "OMA";
    }
    return "?";
}

std::optional<DuplexMode> parse_duplex(std::string_view text) noexcept
{
    if (text == "FD" || text == "fd" || text == "FullDuplex" || text == "full") {
        return DuplexMode::FullDuplex;
    }
    if (text == "HD" || text == "hd" || text == "HalfDuplex" || text == "half") {
        return DuplexMode::HalfDuplex;
    }
    return std::nullopt;
}

std::optional<Scheme> parse_scheme(std::string_view text) noexcept
{
    for (Scheme s : {Scheme::SRS, Scheme::TRS, Scheme::RRS_SRS, Scheme::RRS_TRS, Scheme::OMA}) {
        if (text == to_string(s)) {
            return s;
        }
    }
    return std::nullopt;
}

bool is_random_selection(Scheme scheme) noexcept
{
    return scheme == Scheme::RRS_SRS || scheme == Scheme::RRS_TRS;
}

Scheme base_scheme(Scheme scheme) noexcept
{
    switch (scheme) {
    case Scheme::RRS_SRS: return Scheme::SRS;
    case Scheme::RRS_TRS: return Scheme::TRS;
    default: return scheme;
    }
}

double db_to_linear(double db) noexcept
{
    return std::pow(10.0, db / 10.0);
}

double SystemConfig::user_path_gain_inverse(int user) const noexcept
{
    return 1.0 + std::pow(user == 1 ? d1 : d2, alpha);
}

std::vector<std::string> validate_config(const SystemConfig& c)
{
    std::vector<std::string> out;
    auto fail = [&out](auto&&... parts) {
        std::ostringstream os;
        (os << ... << parts);
        out.push_back(os.str());
    };

    if (!(c.a1 > 0.0)) {
        fail("a1 must be positive (got ", c.a1, ")");
    }
    if (!(c.a1 <= c.a2)) {
        fail("a1 <= a2 violated (a1 = ", c.a1, ", a2 = ", c.a2, ")");
    }
    if (!(std::abs(c.a1 + c.a2 - 1.0) <= 1e-9)) {
        fail("a1 + a2 must equal 1 (got ", c.a1 + c.a2, ")");
    }
    if (!(c.rate_d1 > 0.0)) {
        fail("rate_d1 must be positive (got ", c.rate_d1, ")");
    }
    if (!(c.rate_d2 > 0.0)) {
        fail("rate_d2 must be positive (got ", c.rate_d2, ")");
    }
    if (!(c.alpha >= 2.0)) {
        fail("alpha must be >= 2 (got ", c.alpha, ")");
    }
    if (!(c.disc_radius > 0.0)) {
        fail("disc_radius must be positive (got ", c.disc_radius, ")");
    }
    if (!(c.d1 > 0.0)) {
        fail("d1 must be positive (got ", c.d1, ")");
    }
    if (!(c.d2 > 0.0)) {
        fail("d2 must be positive (got ", c.d2, ")");
    }
    if (c.num_relays < 1) {
        fail("num_relays must be >= 1 (got ", c.num_relays, ")");
    }
    if (c.quad_order < 1) {
        fail("quad_order must be >= 1 (got ", c.quad_order, ")");
    }
    if (!std::isfinite(c.snr_db)) {
        fail("snr_db must be finite");
    }
    if (!std::isfinite(c.omega_li_db)) {
        fail("omega_li_db must be finite");
    }
    return out;
}

double rate_threshold(double rate, DuplexMode mode) noexcept
{
    const double slots = mode == DuplexMode::FullDuplex ? 1.0 : 2.0;
    return std::exp2(slots * rate) - 1.0;
}

DerivedThresholds compute_thresholds(const SystemConfig& c)
{
    DerivedThresholds t;
    const double rho = c.rho();
    t.gamma_th1 = rate_threshold(c.rate_d1, c.duplex);
    t.gamma_th2 = rate_threshold(c.rate_d2, c.duplex);
    t.xi = t.gamma_th1 / (rho * c.a1);

    const double margin = c.a2 - c.a1 * t.gamma_th2;
    t.feasible = margin > 0.0;
    if (t.feasible) {
        t.tau = t.gamma_th2 / (rho * margin);
        t.theta = std::max(t.tau, t.xi);
    } else {
        t.tau = std::numeric_limits<double>::infinity();
        t.theta = std::numeric_limits<double>::infinity();
    }
    return t;
}

OmaThresholds compute_oma_thresholds(const SystemConfig& c) noexcept
{
    return {std::exp2(4.0 * c.rate_d1) - 1.0, std::exp2(4.0 * c.rate_d2) - 1.0};
}

}  // namespace coopnoma
