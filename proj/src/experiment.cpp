#include "coopnoma/experiment.hpp"

#include "coopnoma/analytic.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace coopnoma {

namespace {

using json = nlohmann::json;

struct Job {
    SystemConfig config;
    std::vector<Scheme> schemes;
    std::size_t first_row = 0;
};

std::vector<double> default_snr_grid()
{
    std::vector<double> grid;
    for (int snr = 0; snr <= 60; snr += 5) {
        grid.push_back(snr);
    }
    return grid;
}

std::string format_general(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string optional_probability(const std::optional<double>& v)
{
    return v ? format_probability(*v) : std::string();
}

// Runs fn(0..n-1) on at most `threads` workers pulling indices from a shared counter.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn)
{
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            fn(i);
        }
    };
    const std::size_t width = std::min<std::size_t>(std::max(1u, threads), n);
    if (width <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(width);
    for (std::size_t i = 0; i < width; ++i) {
        pool.emplace_back(worker);
    }
}

std::vector<Job> plan_jobs(const SweepSpec& spec)
{
    std::vector<Scheme> cooperative;
    bool with_oma = false;
    for (Scheme s : spec.schemes) {
        if (s == Scheme::OMA) {
            with_oma = true;
        } else {
            cooperative.push_back(s);
        }
    }

    std::vector<Job> jobs;
    std::size_t row = 0;
    auto add = [&](SystemConfig cfg, std::vector<Scheme> schemes) {
        const std::size_t n = schemes.size();
        jobs.push_back({std::move(cfg), std::move(schemes), row});
        row += n;
    };
    for (int k : spec.k_values) {
        for (double li : spec.li_values_db) {
            for (double snr : spec.snr_grid_db) {
                SystemConfig cfg = spec.base;
                cfg.num_relays = k;
                cfg.omega_li_db = li;
                cfg.snr_db = snr;
                if (!cooperative.empty()) {
                    for (DuplexMode duplex : spec.duplex_modes) {
                        cfg.duplex = duplex;
                        add(cfg, cooperative);
                    }
                }
                if (with_oma) {
                    cfg.duplex = DuplexMode::HalfDuplex;
                    add(cfg, {Scheme::OMA});
                }
            }
        }
    }
    return jobs;
}

void run_job(const Job& job, const SweepSpec& spec, McOptions mc, std::vector<SweepRow>& rows)
{
    const auto estimates = estimate_outages(job.schemes, job.config, spec.trials, spec.seed, spec.distance_mode, mc);
    for (std::size_t i = 0; i < job.schemes.size(); ++i) {
        SweepRow& r = rows[job.first_row + i];
        const OutageEstimate& e = estimates[i];
        r.snr_db = job.config.snr_db;
        r.scheme = job.schemes[i];
        r.duplex = job.config.duplex;
        r.k = job.config.num_relays;
        r.omega_li_db = job.config.omega_li_db;
        r.distance_mode = spec.distance_mode;
        r.p_mc = e.p_hat;
        r.p_mc_stderr = e.std_error;
        r.throughput_mc = throughput(e.p_hat, job.config.rate_d1, job.config.rate_d2);
        r.trials = spec.trials;
        r.seed = spec.seed;
        if (r.scheme != Scheme::OMA) {
            const AnalyticPoint point = analytic_point(job.config, r.scheme);
            r.p_analytic = point.p_exact;
            r.p_asymptotic = point.p_asymptotic;
            r.throughput_analytic = throughput(point.p_exact, job.config.rate_d1, job.config.rate_d2);
            r.clamp_excursion = point.clamp_excursion;
        }
    }
}

// ---- JSON ----

[[noreturn]] void bad_field(const std::string& field, const std::string& what)
{
    throw SpecError(field + ": " + what);
}

double get_number(const json& j, const std::string& field)
{
    if (!j.is_number()) {
        bad_field(field, "expected a number");
    }
    return j.get<double>();
}

std::int64_t get_integer(const json& j, const std::string& field)
{
    const double v = get_number(j, field);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) {
        bad_field(field, "expected an integer");
    }
    return static_cast<std::int64_t>(v);
}

std::string get_string(const json& j, const std::string& field)
{
    if (!j.is_string()) {
        bad_field(field, "expected a string");
    }
    return j.get<std::string>();
}

const json& get_array(const json& j, const std::string& field)
{
    if (!j.is_array()) {
        bad_field(field, "expected an array");
    }
    return j;
}

DuplexMode get_duplex(const json& j, const std::string& field)
{
    const std::string text = get_string(j, field);
    const auto mode = parse_duplex(text);
    if (!mode) {
        bad_field(field, "unknown duplex mode '" + text + "' (use FD or HD)");
    }
    return *mode;
}

void apply_config_key(SystemConfig& c, const std::string& key, const json& v)
{
    if (key == "snr_db") c.snr_db = get_number(v, key);
    else if (key == "a1") c.a1 = get_number(v, key);
    else if (key == "a2") c.a2 = get_number(v, key);
    else if (key == "rate_d1") c.rate_d1 = get_number(v, key);
    else if (key == "rate_d2") c.rate_d2 = get_number(v, key);
    else if (key == "alpha") c.alpha = get_number(v, key);
    else if (key == "disc_radius") c.disc_radius = get_number(v, key);
    else if (key == "d1") c.d1 = get_number(v, key);
    else if (key == "d2") c.d2 = get_number(v, key);
    else if (key == "omega_li_db") c.omega_li_db = get_number(v, key);
    else if (key == "num_relays") c.num_relays = static_cast<int>(get_integer(v, key));
    else if (key == "quad_order") c.quad_order = static_cast<int>(get_integer(v, key));
    else if (key == "duplex") c.duplex = get_duplex(v, key);
    else bad_field(key, "unknown configuration key");
}

void apply_sweep_key(SweepSpec& s, const std::string& key, const json& v)
{
    const std::string field = "sweep." + key;
    if (key == "snr_grid_db" || key == "li_values_db") {
        std::vector<double> values;
        for (const auto& item : get_array(v, field)) {
            values.push_back(get_number(item, field));
        }
        (key == "snr_grid_db" ? s.snr_grid_db : s.li_values_db) = std::move(values);
    } else if (key == "k_values") {
        s.k_values.clear();
        for (const auto& item : get_array(v, field)) {
            s.k_values.push_back(static_cast<int>(get_integer(item, field)));
        }
    } else if (key == "schemes") {
        s.schemes.clear();
        for (const auto& item : get_array(v, field)) {
            const std::string text = get_string(item, field);
            const auto scheme = parse_scheme(text);
            if (!scheme) {
                bad_field(field, "unknown scheme '" + text + "' (use SRS, TRS, RRS_SRS, RRS_TRS or OMA)");
            }
            s.schemes.push_back(*scheme);
        }
    } else if (key == "duplex_modes") {
        s.duplex_modes.clear();
        for (const auto& item : get_array(v, field)) {
            s.duplex_modes.push_back(get_duplex(item, field));
        }
    } else if (key == "trials") {
        const auto t = get_integer(v, field);
        if (t < 1) {
            bad_field(field, "must be >= 1");
        }
        s.trials = static_cast<std::uint64_t>(t);
    } else if (key == "seed") {
        const auto seed = get_integer(v, field);
        if (seed < 0) {
            bad_field(field, "must be non-negative");
        }
        s.seed = static_cast<std::uint64_t>(seed);
    } else if (key == "distance_mode") {
        const std::string text = get_string(v, field);
        const auto mode = parse_distance_mode(text);
        if (!mode) {
            bad_field(field, "unknown distance mode '" + text + "' (use exact or approx)");
        }
        s.distance_mode = *mode;
    } else {
        bad_field(field, "unknown sweep key");
    }
}

}  // namespace

std::vector<std::string> validate_spec(const SweepSpec& spec)
{
    std::vector<std::string> out;
    for (const auto& problem : validate_config(spec.base)) {
        out.push_back("base: " + problem);
    }
    if (spec.snr_grid_db.empty()) {
        out.emplace_back("snr_grid_db: must not be empty");
    }
    if (std::any_of(spec.snr_grid_db.begin(), spec.snr_grid_db.end(), [](double v) { return !std::isfinite(v); })) {
        out.emplace_back("snr_grid_db: values must be finite");
    }
    if (spec.schemes.empty()) {
        out.emplace_back("schemes: must not be empty");
    }
    if (spec.k_values.empty()) {
        out.emplace_back("k_values: must not be empty");
    }
    if (std::any_of(spec.k_values.begin(), spec.k_values.end(), [](int k) { return k < 1; })) {
        out.emplace_back("k_values: every relay count must be >= 1");
    }
    if (spec.li_values_db.empty()) {
        out.emplace_back("li_values_db: must not be empty");
    }
    if (std::any_of(spec.li_values_db.begin(), spec.li_values_db.end(), [](double v) { return !std::isfinite(v); })) {
        out.emplace_back("li_values_db: values must be finite");
    }
    if (spec.duplex_modes.empty()) {
        out.emplace_back("duplex_modes: must not be empty");
    }
    if (spec.trials < 1) {
        out.emplace_back("trials: must be >= 1");
    }
    return out;
}

SystemConfig row_config(const SweepSpec& spec, const SweepRow& row)
{
    SystemConfig cfg = spec.base;
    cfg.snr_db = row.snr_db;
    cfg.num_relays = row.k;
    cfg.omega_li_db = row.omega_li_db;
    cfg.duplex = row.duplex;
    return cfg;
}

std::vector<SweepRow> evaluate_sweep(const SweepSpec& spec, const RunOptions& options)
{
    if (auto problems = validate_spec(spec); !problems.empty()) {
        std::string message = problems.front();
        for (std::size_t i = 1; i < problems.size(); ++i) {
            message += "; " + problems[i];
        }
        throw SpecError(message);
    }
    const auto jobs = plan_jobs(spec);
    const std::size_t n_rows = jobs.empty() ? 0 : jobs.back().first_row + jobs.back().schemes.size();
    std::vector<SweepRow> rows(n_rows);

    // Few large jobs parallelise better inside the simulator than across jobs.
    McOptions mc;
    mc.chunk_size = options.chunk_size;
    unsigned pool = options.threads;
    if (jobs.size() < options.threads) {
        mc.threads = options.threads;
        pool = 1;
    }
    parallel_for(jobs.size(), pool, [&](std::size_t i) { run_job(jobs[i], spec, mc, rows); });
    return rows;
}

const std::vector<std::string_view> kCsvColumns = {
    "snr_db",       "scheme",         "duplex",       "k",
    "omega_li_db",  "distance_mode",  "p_mc",         "p_mc_stderr",
    "p_analytic",   "p_asymptotic",   "throughput_mc", "throughput_analytic",
    "trials",       "seed",
};

std::string format_probability(double p)
{
    if (std::isnan(p)) {
        return "nan";
    }
    if (p < 1e-12) {
        return "0";
    }
    const int magnitude = static_cast<int>(std::floor(std::log10(p)));
    const int decimals = std::max(0, 9 - magnitude);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, p);
    return buf;
}

void write_csv_header(std::ostream& out)
{
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        out << (i ? "," : "") << kCsvColumns[i];
    }
    out << '\n';
}

void write_csv_row(std::ostream& out, const SweepRow& r)
{
    out << format_general(r.snr_db) << ',' << to_string(r.scheme) << ',' << to_string(r.duplex) << ',' << r.k << ','
        << format_general(r.omega_li_db) << ',' << to_string(r.distance_mode) << ',' << format_probability(r.p_mc)
        << ',' << format_probability(r.p_mc_stderr) << ',' << optional_probability(r.p_analytic) << ','
        << optional_probability(r.p_asymptotic) << ',' << format_probability(r.throughput_mc) << ','
        << optional_probability(r.throughput_analytic) << ',' << r.trials << ','
        << r.seed << '\n';
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    write_csv_header(out);
    for (const auto& row : rows) {
        write_csv_row(out, row);
    }
}

std::size_t run_sweep(const SweepSpec& spec, const std::string& output_path, const RunOptions& options)
{
    const auto rows = evaluate_sweep(spec, options);
    if (output_path == "-") {
        write_csv(std::cout, rows);
        std::cout.flush();
        if (!std::cout) {
            throw std::runtime_error("failed writing CSV to stdout");
        }
        return rows.size();
    }
    std::ofstream file(output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open '" + output_path + "' for writing");
    }
    write_csv(file, rows);
    file.close();
    if (!file) {
        throw std::runtime_error("failed writing '" + output_path + "'");
    }
    return rows.size();
}

double worst_case_stderr(std::uint64_t trials)
{
    return trials == 0 ? 0.5 : 0.5 / std::sqrt(static_cast<double>(trials));
}

ValidationReport validate(const SweepSpec& spec, const ValidateOptions& options)
{
    const double worst = worst_case_stderr(spec.trials);
    if (!(worst < 0.005)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "trials = %llu gives a worst-case standard error of %.4g; validation needs < 0.005 "
                      "(more than 10000 trials)",
                      static_cast<unsigned long long>(spec.trials), worst);
        throw PrecisionError(buf);
    }

    SweepSpec cooperative = spec;
    std::erase(cooperative.schemes, Scheme::OMA);
    if (cooperative.schemes.empty()) {
        throw SpecError("schemes: validation needs at least one scheme with a closed form");
    }

    ValidationReport report;
    for (auto& row : evaluate_sweep(cooperative, options.run)) {
        ValidationCell cell;
        const double analytic = *row.p_analytic + options.analytic_bias;
        cell.abs_diff = std::abs(row.p_mc - analytic);
        cell.allowed = std::max(options.tolerance, 3.0 * row.p_mc_stderr);
        cell.pass = cell.abs_diff <= cell.allowed;
        cell.row = std::move(row);
        report.all_pass = report.all_pass && cell.pass;

        auto it = std::find_if(report.per_scheme.begin(), report.per_scheme.end(),
                               [&](const SchemeSummary& s) { return s.scheme == cell.row.scheme; });
        if (it == report.per_scheme.end()) {
            report.per_scheme.push_back({cell.row.scheme, 0.0, 0, 0});
            it = std::prev(report.per_scheme.end());
        }
        it->max_abs_diff = std::max(it->max_abs_diff, cell.abs_diff);
        ++it->cells;
        it->failures += cell.pass ? 0 : 1;
        report.cells.push_back(std::move(cell));
    }
    return report;
}

void write_report(std::ostream& out, const ValidationReport& report)
{
    char buf[256];
    for (const auto& s : report.per_scheme) {
        std::snprintf(buf, sizeof buf, "%-8s cells=%zu failures=%zu max|mc-analytic|=%.3e %s\n",
                      std::string(to_string(s.scheme)).c_str(), s.cells, s.failures, s.max_abs_diff,
                      s.failures == 0 ? "PASS" : "FAIL");
        out << buf;
    }
    for (const auto& c : report.cells) {
        if (c.pass) {
            continue;
        }
        const auto& r = c.row;
        std::snprintf(buf, sizeof buf,
                      "  failed: scheme=%s duplex=%s snr_db=%g k=%d omega_li_db=%g p_mc=%.6g stderr=%.3g "
                      "p_analytic=%.6g |diff|=%.3e allowed=%.3e\n",
                      std::string(to_string(r.scheme)).c_str(), std::string(to_string(r.duplex)).c_str(), r.snr_db,
                      r.k, r.omega_li_db, r.p_mc, r.p_mc_stderr, *r.p_analytic, c.abs_diff, c.allowed);
        out << buf;
    }
    out << (report.all_pass ? "validation PASS\n" : "validation FAIL\n");
}

std::vector<std::string_view> figure_preset_names()
{
    return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "trs_relays"};
}

SweepSpec figure_preset(std::string_view name)
{
    SweepSpec s;
    s.snr_grid_db = default_snr_grid();
    s.duplex_modes = {DuplexMode::FullDuplex, DuplexMode::HalfDuplex};
    s.seed = 20170901;

    if (name == "fig2") {
        s.schemes = {Scheme::SRS, Scheme::RRS_SRS, Scheme::OMA};
        s.k_values = {2};
        s.li_values_db = {-10};
    } else if (name == "fig3") {
        s.schemes = {Scheme::SRS};
        s.k_values = {2};
        s.li_values_db = {-10};
        s.base.rate_d1 = 1.5;
        s.base.rate_d2 = 0.5;
    } else if (name == "fig4") {
        s.schemes = {Scheme::SRS};
        s.k_values = {2, 3, 4};
        s.li_values_db = {-10};
    } else if (name == "fig5") {
        s.schemes = {Scheme::SRS};
        s.k_values = {3};
        s.li_values_db = {-10, -5, 0, 5};
    } else if (name == "fig6") {
        s.schemes = {Scheme::SRS, Scheme::OMA};
        s.k_values = {3};
        s.li_values_db = {-10, 5};
    } else if (name == "fig7") {
        s.schemes = {Scheme::TRS, Scheme::RRS_TRS, Scheme::OMA};
        s.k_values = {3};
        s.li_values_db = {-20};
    } else if (name == "fig8") {
        s.schemes = {Scheme::TRS};
        s.k_values = {3};
        s.li_values_db = {-20};
        s.base.rate_d1 = 0.5;
        s.base.rate_d2 = 0.05;
    } else if (name == "fig9") {
        s.schemes = {Scheme::TRS};
        s.k_values = {3};
        s.li_values_db = {-20, -10};
    } else if (name == "fig10") {
        s.schemes = {Scheme::TRS, Scheme::OMA};
        s.k_values = {2, 3, 4};
        s.li_values_db = {-20, -10};
    } else if (name == "trs_relays") {
        s.schemes = {Scheme::TRS};
        s.k_values = {2, 3, 4};
        s.li_values_db = {-20};
    } else {
        std::string valid;
        for (auto n : figure_preset_names()) {
            valid += valid.empty() ? "" : ", ";
            valid += n;
        }
        throw std::invalid_argument("unknown figure preset '" + std::string(name) + "'; valid presets: " + valid);
    }
    s.base.num_relays = s.k_values.front();
    s.base.omega_li_db = s.li_values_db.front();
    return s;
}

SweepSpec sweep_spec_from_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw SpecError("config: top level must be a JSON object");
    }

    SweepSpec spec;
    const json* sweep = nullptr;
    for (const auto& [key, value] : doc.items()) {
        if (key == "sweep") {
            if (!value.is_object()) {
                bad_field("sweep", "expected an object");
            }
            sweep = &value;
        } else {
            apply_config_key(spec.base, key, value);
        }
    }

    spec.snr_grid_db = {spec.base.snr_db};
    spec.schemes = {Scheme::SRS, Scheme::TRS};
    spec.k_values = {spec.base.num_relays};
    spec.li_values_db = {spec.base.omega_li_db};
    spec.duplex_modes = {spec.base.duplex};
    if (sweep) {
        for (const auto& [key, value] : sweep->items()) {
            apply_sweep_key(spec, key, value);
        }
    }
    return spec;
}

SweepSpec load_sweep_spec(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open config '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return sweep_spec_from_json(buffer.str());
}

std::string thresholds_json(const SystemConfig& config)
{
    const DerivedThresholds t = compute_thresholds(config);
    auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json doc = {
        {"duplex", std::string(to_string(config.duplex))},
        {"gamma_th1", finite_or_null(t.gamma_th1)},
        {"gamma_th2", finite_or_null(t.gamma_th2)},
        {"tau", finite_or_null(t.tau)},
        {"xi", finite_or_null(t.xi)},
        {"theta", finite_or_null(t.theta)},
        {"feasible", t.feasible},
    };
    return doc.dump(2);
}

}  // namespace coopnoma
