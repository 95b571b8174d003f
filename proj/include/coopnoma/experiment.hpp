#pragma once

#include "coopnoma/model.hpp"
#include "coopnoma/monte_carlo.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coopnoma {

/// Cartesian sweep over SNR, relay count, LI power and duplex mode. OMA, which
/// has no duplex variant, yields one row per (snr, K, LI) cell.
struct SweepSpec {
    SystemConfig base;
    std::vector<double> snr_grid_db;
    std::vector<Scheme> schemes;
    std::vector<int> k_values;
    std::vector<double> li_values_db;
    std::vector<DuplexMode> duplex_modes;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    DistanceMode distance_mode = DistanceMode::Approximate;
};

/// Thrown for a malformed spec; the message starts with the offending field.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Every violated invariant, each prefixed with the field name ("schemes: ...").
std::vector<std::string> validate_spec(const SweepSpec& spec);

struct RunOptions {
    /// Worker threads for the sweep pool. Output never depends on it.
    unsigned threads = 1;
    std::uint64_t chunk_size = 1u << 16;
};

struct SweepRow {
    double snr_db = 0.0;
    Scheme scheme = Scheme::SRS;
    DuplexMode duplex = DuplexMode::FullDuplex;
    int k = 1;
    double omega_li_db = 0.0;
    DistanceMode distance_mode = DistanceMode::Approximate;
    double p_mc = 0.0;
    double p_mc_stderr = 0.0;
    std::optional<double> p_analytic;
    std::optional<double> p_asymptotic;
    double throughput_mc = 0.0;
    std::optional<double> throughput_analytic;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double clamp_excursion = 0.0;
};

/// Configuration of a single row, reconstructed from the spec base.
SystemConfig row_config(const SweepSpec& spec, const SweepRow& row);

/// Rows in spec order. Throws SpecError if validate_spec() reports anything.
std::vector<SweepRow> evaluate_sweep(const SweepSpec& spec, const RunOptions& options = {});

extern const std::vector<std::string_view> kCsvColumns;

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SweepRow& row);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Fixed notation with 10 significant digits; values below 1e-12 print as 0.
/// Used for every probability and throughput column.
std::string format_probability(double p);

/// Evaluates the sweep and writes the CSV to output_path ("-" for stdout).
/// Returns the number of data rows. Throws std::runtime_error on I/O failure.
std::size_t run_sweep(const SweepSpec& spec, const std::string& output_path, const RunOptions& options = {});

class PrecisionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ValidateOptions {
    double tolerance = 0.01;
    /// Added to every analytic value before comparison. Test hook only.
    double analytic_bias = 0.0;
    RunOptions run;
};

struct ValidationCell {
    SweepRow row;
    double abs_diff = 0.0;
    double allowed = 0.0;
    bool pass = false;
};

struct SchemeSummary {
    Scheme scheme = Scheme::SRS;
    double max_abs_diff = 0.0;
    std::size_t cells = 0;
    std::size_t failures = 0;
};

struct ValidationReport {
    std::vector<ValidationCell> cells;
    std::vector<SchemeSummary> per_scheme;
    bool all_pass = true;
};

/// Largest binomial standard error any cell can have at this trial count.
double worst_case_stderr(std::uint64_t trials);

/// Monte Carlo against closed form on every non-OMA cell. A cell passes iff
/// |p_mc - p_analytic| <= max(tolerance, 3 stderr). Throws PrecisionError when
/// worst_case_stderr(trials) >= 0.005.
ValidationReport validate(const SweepSpec& spec, const ValidateOptions& options = {});
void write_report(std::ostream& out, const ValidationReport& report);

std::vector<std::string_view> figure_preset_names();
/// Throws std::invalid_argument listing the valid names for an unknown preset.
SweepSpec figure_preset(std::string_view name);

/// Config plus optional sweep axes from a JSON document. Keys mirror the
/// SystemConfig field names; a "sweep" object may hold the SweepSpec axes.
/// Unknown keys and wrongly typed values throw SpecError.
SweepSpec sweep_spec_from_json(std::string_view text);
SweepSpec load_sweep_spec(const std::string& path);

/// DerivedThresholds as a JSON object; non-finite values become null.
std::string thresholds_json(const SystemConfig& config);

}  // namespace coopnoma
