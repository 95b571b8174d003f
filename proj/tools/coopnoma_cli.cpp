// coopnoma: sweeps, Monte Carlo validation and figure data for cooperative NOMA relay selection.

#include "coopnoma/experiment.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitUsage = 2;

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> distance;
    unsigned threads = 1;
    std::uint64_t chunk_size = 1u << 16;
};

void add_run_flags(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per cell")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Base RNG seed");
    cmd->add_option("--threads", o.threads, "Worker threads (output does not depend on this)")
        ->check(CLI::Range(1u, 1024u));
    cmd->add_option("--chunk-size", o.chunk_size, "Trials per RNG substream")->check(CLI::PositiveNumber);
}

coopnoma::SweepSpec apply(coopnoma::SweepSpec spec, const Overrides& o)
{
    if (o.trials) {
        spec.trials = *o.trials;
    }
    if (o.seed) {
        spec.seed = *o.seed;
    }
    if (o.distance) {
        const auto mode = coopnoma::parse_distance_mode(*o.distance);
        if (!mode) {
            throw coopnoma::SpecError("distance: expected exact or approx, got '" + *o.distance + "'");
        }
        spec.distance_mode = *mode;
    }
    return spec;
}

coopnoma::SweepSpec load(const Overrides& o)
{
    coopnoma::SweepSpec spec = o.config_path.empty() ? coopnoma::sweep_spec_from_json("{}")
                                                     : coopnoma::load_sweep_spec(o.config_path);
    return apply(std::move(spec), o);
}

coopnoma::RunOptions run_options(const Overrides& o)
{
    return {o.threads, o.chunk_size};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cooperative NOMA relay selection: closed forms against Monte Carlo"};
    app.require_subcommand(1);

    Overrides sweep_o;
    std::string sweep_out = "-";
    auto* sweep = app.add_subcommand("sweep", "Write one CSV row per sweep cell");
    sweep->add_option("--config", sweep_o.config_path, "JSON config file")->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_out, "Output CSV path ('-' for stdout)");
    sweep->add_option("--distance", sweep_o.distance, "Relay-to-user distance model: exact or approx");
    add_run_flags(sweep, sweep_o);

    Overrides validate_o;
    double tolerance = 0.01;
    auto* validate = app.add_subcommand("validate", "Compare Monte Carlo with the closed forms");
    validate->add_option("--config", validate_o.config_path, "JSON config file")->check(CLI::ExistingFile);
    validate->add_option("--tolerance", tolerance, "Absolute tolerance floor")->check(CLI::NonNegativeNumber);
    validate->add_option("--distance", validate_o.distance, "Relay-to-user distance model: exact or approx");
    add_run_flags(validate, validate_o);

    Overrides figure_o;
    std::string figure_name;
    std::string figure_out = "-";
    auto* figure = app.add_subcommand("figure", "Write the CSV of a figure preset");
    figure->add_option("name", figure_name, "Preset name (fig2 .. fig10, trs_relays)")->required();
    figure->add_option("--out", figure_out, "Output CSV path ('-' for stdout)");
    figure->add_option("--distance", figure_o.distance, "Relay-to-user distance model: exact or approx");
    add_run_flags(figure, figure_o);

    Overrides thresholds_o;
    auto* thresholds = app.add_subcommand("thresholds", "Print the derived SNR thresholds as JSON");
    thresholds->add_option("--config", thresholds_o.config_path, "JSON config file")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sweep->parsed()) {
            const auto rows = coopnoma::run_sweep(load(sweep_o), sweep_out, run_options(sweep_o));
            if (sweep_out != "-") {
                std::cerr << "wrote " << rows << " rows to " << sweep_out << '\n';
            }
            return kExitOk;
        }
        if (validate->parsed()) {
            coopnoma::ValidateOptions options;
            options.tolerance = tolerance;
            options.run = run_options(validate_o);
            const auto report = coopnoma::validate(load(validate_o), options);
            coopnoma::write_report(std::cout, report);
            return report.all_pass ? kExitOk : kExitValidationFailed;
        }
        if (figure->parsed()) {
            const auto spec = apply(coopnoma::figure_preset(figure_name), figure_o);
            const auto rows = coopnoma::run_sweep(spec, figure_out, run_options(figure_o));
            if (figure_out != "-") {
                std::cerr << "wrote " << rows << " rows to " << figure_out << '\n';
            }
            return kExitOk;
        }
        if (thresholds->parsed()) {
            const auto spec = load(thresholds_o);
            if (auto problems = coopnoma::validate_config(spec.base); !problems.empty()) {
                throw coopnoma::SpecError("config: " + problems.front());
            }
            std::cout << coopnoma::thresholds_json(spec.base) << '\n';
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
