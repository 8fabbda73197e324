#include "mimod2d/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "mimod2d/coverage.hpp"
#include "mimod2d/errors.hpp"
#include "mimod2d/parallel.hpp"
#include "mimod2d/units.hpp"

namespace mimod2d {

using nlohmann::json;

const char* to_string(SweepMode mode)
{
    switch (mode) {
    case SweepMode::analytic: return "analytic";
    case SweepMode::montecarlo: return "mc";
    case SweepMode::both: return "both";
    }
    return "?";
}

SweepMode parse_sweep_mode(const std::string& text)
{
    if (text == "analytic") return SweepMode::analytic;
    if (text == "mc" || text == "montecarlo") return SweepMode::montecarlo;
    if (text == "both") return SweepMode::both;
    throw ConfigError("mode: expected analytic, mc or both, got '" + text + "'");
}

OutputUnits parse_units(const std::string& text)
{
    if (text == "si") return OutputUnits::si;
    if (text == "mbit") return OutputUnits::mbit;
    throw ConfigError("units: expected si or mbit, got '" + text + "'");
}

// ---------------------------------------------------------------- grids

namespace {

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) parts.push_back(item);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

double to_real(const std::string& text, const std::string& what)
{
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value))
        throw ConfigError(what + ": '" + text + "' is not a finite number");
    return value;
}

long to_integer(const std::string& text, const std::string& what)
{
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw ConfigError(what + ": '" + text + "' is not an integer");
    return value;
}

}  // namespace

std::vector<int> parse_int_grid(const std::string& text)
{
    const auto parts = split(text, ':');
    std::vector<int> out;
    if (parts.size() == 3) {
        const long start = to_integer(parts[0], "tc grid");
        const long stop = to_integer(parts[1], "tc grid");
        const long step = to_integer(parts[2], "tc grid");
        if (step <= 0) throw ConfigError("tc grid: step must be positive");
        if (stop < start) throw ConfigError("tc grid: stop below start");
        for (long v = start; v <= stop; v += step) out.push_back(static_cast<int>(v));
        return out;
    }
    if (parts.size() != 1) throw ConfigError("tc grid: expected start:stop:step or a list");
    for (const auto& item : split(text, ','))
        out.push_back(static_cast<int>(to_integer(item, "tc grid")));
    return out;
}

std::vector<double> parse_real_grid(const std::string& text)
{
    const auto parts = split(text, ':');
    std::vector<double> out;
    if (parts.size() == 3) {
        const double lo = to_real(parts[0], "grid");
        const double hi = to_real(parts[1], "grid");
        std::string count_text = parts[2];
        bool log_spaced = false;
        if (count_text.size() > 3 && count_text.ends_with("log")) {
            log_spaced = true;
            count_text.resize(count_text.size() - 3);
        } else if (count_text.size() > 3 && count_text.ends_with("lin")) {
            count_text.resize(count_text.size() - 3);
        }
        const long n = to_integer(count_text, "grid count");
        if (n < 1) throw ConfigError("grid: count must be >= 1");
        if (hi < lo) throw ConfigError("grid: stop below start");
        if (log_spaced && !(lo > 0.0)) throw ConfigError("grid: log spacing needs positive bounds");
        if (n == 1) return {lo};
        for (long i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n - 1);
            double v = log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                                  : lo + t * (hi - lo);
            if (i == 0) v = lo;
            if (i == n - 1) v = hi;
            out.push_back(v);
        }
        return out;
    }
    if (parts.size() != 1) throw ConfigError("grid: expected lo:hi:N[log|lin] or a list");
    for (const auto& item : split(text, ',')) out.push_back(to_real(item, "grid"));
    return out;
}

std::vector<double> parse_db_grid(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("beta grid: expected LO:HI:N in dB");
    const double lo = to_real(parts[0], "beta grid");
    const double hi = to_real(parts[1], "beta grid");
    const long n = to_integer(parts[2], "beta grid count");
    if (n < 1) throw ConfigError("beta grid: N must be >= 1");
    if (hi < lo) throw ConfigError("beta grid: HI below LO");
    std::vector<double> out;
    for (long i = 0; i < n; ++i)
        out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    return out;
}

std::vector<Violation> validate(const SweepGrid& grid, const SystemParams& base)
{
    std::vector<Violation> v;
    if (grid.tc_values.empty()) v.push_back({"sweep_tc", "nonempty"});
    if (grid.lambda_values.empty()) v.push_back({"sweep_lambda_d", "nonempty"});
    if (!std::is_sorted(grid.tc_values.begin(), grid.tc_values.end()))
        v.push_back({"sweep_tc", "sorted ascending"});
    if (!std::is_sorted(grid.lambda_values.begin(), grid.lambda_values.end()))
        v.push_back({"sweep_lambda_d", "sorted ascending"});
    for (int tc : grid.tc_values) {
        SystemParams p = base;
        p.t_c = tc;
        for (auto& item : validate(p))
            if (item.field == "u_c" || item.field == "t_c")
                v.push_back({"sweep_tc", item.rule + " (tc=" + std::to_string(tc) + ")"});
    }
    for (double lambda : grid.lambda_values) {
        SystemParams p = base;
        p.lambda_d = lambda;
        for (auto& item : validate(p))
            if (item.field == "lambda_d") v.push_back({"sweep_lambda_d", item.rule});
    }
    return v;
}

// --------------------------------------------------------------- config

RunConfig RunConfig::defaults()
{
    RunConfig c;
    c.grid.tc_values = parse_int_grid("4:100:4");
    c.grid.lambda_values = parse_real_grid("1e-8:1e-3:11log");
    c.grid.mode = SweepMode::analytic;
    c.resolve();
    return c;
}

void RunConfig::resolve()
{
    params.p_c = dbm_to_watt(p_c_dbm);
    params.p_d = dbm_to_watt(p_d_dbm);
    params.noise_power = dbm_to_watt(noise_power_dbm);
    params.a_c = pathloss_coefficient(a_c_db, convention);
    params.a_d = pathloss_coefficient(a_d_db, convention);
}

namespace {

std::string position_of(const std::string& text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <class T>
T get_field(const json& value, const std::string& key, const std::string& source)
{
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(source + ": field '" + key + "' has the wrong type (" +
                          std::string(value.type_name()) + ")");
    }
}

double get_number(const json& value, const std::string& key, const std::string& source)
{
    if (!value.is_number())
        throw ConfigError(source + ": field '" + key + "' must be a number");
    return value.get<double>();
}

long get_integer(const json& value, const std::string& key, const std::string& source)
{
    if (!value.is_number_integer())
        throw ConfigError(source + ": field '" + key + "' must be an integer");
    return value.get<long>();
}

std::string grid_text(const json& value, const std::string& key, const std::string& source)
{
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number()) return value.dump();
    if (value.is_array()) {
        std::string out;
        for (const auto& item : value) {
            if (!item.is_number())
                throw ConfigError(source + ": field '" + key + "' must list numbers");
            if (!out.empty()) out += ",";
            out += item.dump();
        }
        return out;
    }
    throw ConfigError(source + ": field '" + key + "' must be a grid string or a list");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ": parse error at " + position_of(text, e.byte) + ": " +
                          e.what());
    }
    if (!doc.is_object()) throw ConfigError(source + ": top level must be an object");

    RunConfig c = RunConfig::defaults();
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        try {
            if (key == "p_c_dbm") c.p_c_dbm = get_number(v, key, source);
            else if (key == "p_d_dbm") c.p_d_dbm = get_number(v, key, source);
            else if (key == "u_c") c.params.u_c = static_cast<int>(get_integer(v, key, source));
            else if (key == "t_c") c.params.t_c = static_cast<int>(get_integer(v, key, source));
            else if (key == "lambda_d") c.params.lambda_d = get_number(v, key, source);
            else if (key == "cell_radius") c.params.cell_radius = get_number(v, key, source);
            else if (key == "bandwidth") c.params.bandwidth = get_number(v, key, source);
            else if (key == "noise_power_dbm") c.noise_power_dbm = get_number(v, key, source);
            else if (key == "noise_figure_db") c.params.noise_figure_db = get_number(v, key, source);
            else if (key == "apply_noise_figure")
                c.params.apply_noise_figure = get_field<bool>(v, key, source);
            else if (key == "d2d_distance") c.params.d2d_distance = get_number(v, key, source);
            else if (key == "alpha_c") c.params.alpha_c = get_number(v, key, source);
            else if (key == "alpha_d") c.params.alpha_d = get_number(v, key, source);
            else if (key == "a_c_db") c.a_c_db = get_number(v, key, source);
            else if (key == "a_d_db") c.a_d_db = get_number(v, key, source);
            else if (key == "pathloss_convention") {
                const auto name = get_field<std::string>(v, key, source);
                if (name == "gain") c.convention = PathlossConvention::gain;
                else if (name == "loss") c.convention = PathlossConvention::loss;
                else throw ConfigError(source + ": pathloss_convention must be gain or loss");
            }
            else if (key == "eta") c.power.eta = get_number(v, key, source);
            else if (key == "c0") c.power.c0 = get_number(v, key, source);
            else if (key == "c1") c.power.c1 = get_number(v, key, source);
            else if (key == "c2") c.power.c2 = get_number(v, key, source);
            else if (key == "trials") c.sim.trials = get_integer(v, key, source);
            else if (key == "seed") c.sim.master_seed = get_field<std::uint64_t>(v, key, source);
            else if (key == "window_factor") c.sim.window_factor = get_number(v, key, source);
            else if (key == "chunk_size")
                c.sim.chunk_size = static_cast<int>(get_integer(v, key, source));
            else if (key == "threads") c.sim.threads = static_cast<int>(get_integer(v, key, source));
            else if (key == "tail_correction")
                c.sim.tail_correction = get_field<bool>(v, key, source);
            else if (key == "d2d_bs_placement") {
                const auto name = get_field<std::string>(v, key, source);
                if (name == "uniform_disc") c.sim.d2d_bs_placement = BsPlacement::uniform_disc;
                else if (name == "cell_edge") c.sim.d2d_bs_placement = BsPlacement::cell_edge;
                else throw ConfigError(source + ": d2d_bs_placement must be uniform_disc or cell_edge");
            }
            else if (key == "sweep_tc")
                c.grid.tc_values = parse_int_grid(grid_text(v, key, source));
            else if (key == "sweep_lambda_d")
                c.grid.lambda_values = parse_real_grid(grid_text(v, key, source));
            else if (key == "sweep_mode")
                c.grid.mode = parse_sweep_mode(get_field<std::string>(v, key, source));
            else throw ConfigError(source + ": unknown field '" + key + "'");
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            if (msg.rfind(source, 0) == 0) throw;
            throw ConfigError(source + ": field '" + key + "': " + msg);
        }
    }
    c.resolve();
    require_valid(c);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

void require_valid(const RunConfig& config)
{
    std::vector<Violation> all = validate(config.params);
    for (auto& v : validate(config.power)) all.push_back(v);
    for (auto& v : validate(config.sim)) all.push_back(v);
    for (auto& v : validate(config.grid, config.params)) all.push_back(v);
    if (!all.empty()) throw ConfigError(describe(all));
}

std::string config_to_json(const RunConfig& c)
{
    json j;
    j["p_c_dbm"] = c.p_c_dbm;
    j["p_d_dbm"] = c.p_d_dbm;
    j["u_c"] = c.params.u_c;
    j["t_c"] = c.params.t_c;
    j["lambda_d"] = c.params.lambda_d;
    j["cell_radius"] = c.params.cell_radius;
    j["bandwidth"] = c.params.bandwidth;
    j["noise_power_dbm"] = c.noise_power_dbm;
    j["noise_figure_db"] = c.params.noise_figure_db;
    j["apply_noise_figure"] = c.params.apply_noise_figure;
    j["d2d_distance"] = c.params.d2d_distance;
    j["alpha_c"] = c.params.alpha_c;
    j["alpha_d"] = c.params.alpha_d;
    j["a_c_db"] = c.a_c_db;
    j["a_d_db"] = c.a_d_db;
    j["pathloss_convention"] = c.convention == PathlossConvention::gain ? "gain" : "loss";
    j["eta"] = c.power.eta;
    j["c0"] = c.power.c0;
    j["c1"] = c.power.c1;
    j["c2"] = c.power.c2;
    j["trials"] = c.sim.trials;
    j["seed"] = c.sim.master_seed;
    j["window_factor"] = c.sim.window_factor;
    j["chunk_size"] = c.sim.chunk_size;
    j["tail_correction"] = c.sim.tail_correction;
    j["d2d_bs_placement"] =
        c.sim.d2d_bs_placement == BsPlacement::uniform_disc ? "uniform_disc" : "cell_edge";
    j["sweep_tc"] = c.grid.tc_values;
    j["sweep_lambda_d"] = c.grid.lambda_values;
    j["sweep_mode"] = to_string(c.grid.mode);
    return j.dump(2);
}

// ---------------------------------------------------------------- sweep

namespace {

SweepRow finish_row(const SystemParams& params, const PowerModel& power, SweepRow row)
{
    const NetworkMetrics m = network_metrics(params, power, row.rate_cue, row.rate_d2d);
    row.asr = m.asr;
    row.total_power = m.total_power;
    row.ee = m.ee;
    return row;
}

}  // namespace

SweepRow analytic_row(const SystemParams& params, const PowerModel& power,
                      const RateSearch& search)
{
    SweepRow row;
    row.tc = params.t_c;
    row.lambda_d = params.lambda_d;
    row.mode = SweepMode::analytic;
    const auto d2d = average_rate([&](double b) { return d2d_coverage(params, b); },
                                  params.bandwidth, search);
    const CueCoverage cue_model(params);
    const auto cue = average_rate([&](double b) { return cue_model(b); }, params.bandwidth, search);
    row.beta_star_d2d = d2d.beta_star;
    row.beta_star_cue = cue.beta_star;
    row.rate_d2d = d2d.rate;
    row.rate_cue = cue.rate;
    return finish_row(params, power, row);
}

SweepRow montecarlo_row(const SystemParams& params, const PowerModel& power,
                        const SimConfig& sim, const RateSearch& search)
{
    SweepRow row;
    row.tc = params.t_c;
    row.lambda_d = params.lambda_d;
    row.mode = SweepMode::montecarlo;
    const EmpiricalCoverage d2d_curve(simulate_d2d_sinr(params, sim));
    const EmpiricalCoverage cue_curve(simulate_cue_sinr(params, sim));
    const auto d2d = average_rate([&](double b) { return d2d_curve(b); }, params.bandwidth, search);
    const auto cue = average_rate([&](double b) { return cue_curve(b); }, params.bandwidth, search);
    row.beta_star_d2d = d2d.beta_star;
    row.beta_star_cue = cue.beta_star;
    row.rate_d2d = d2d.rate;
    row.rate_cue = cue.rate;
    row = finish_row(params, power, row);

    // Delta method at the selected thresholds; the two batches use separate
    // random streams.
    const double se_d2d =
        params.bandwidth * std::log2(1.0 + d2d.beta_star) * d2d_curve.std_err(d2d.beta_star);
    const double se_cue =
        params.bandwidth * std::log2(1.0 + cue.beta_star) * cue_curve.std_err(cue.beta_star);
    const double d2d_weight = params.mean_d2d_count();
    const double se = std::hypot(params.u_c * se_cue, d2d_weight * se_d2d);
    row.asr_stderr = se;
    row.ee_stderr = se / row.total_power;
    return row;
}

std::vector<SweepRow> run_sweep(const RunConfig& config, const SweepOptions& options)
{
    require_valid(config);
    struct Task {
        int tc;
        double lambda;
        SweepMode mode;
    };
    std::vector<Task> tasks;
    for (int tc : config.grid.tc_values)
        for (double lambda : config.grid.lambda_values) {
            if (config.grid.mode != SweepMode::montecarlo)
                tasks.push_back({tc, lambda, SweepMode::analytic});
            if (config.grid.mode != SweepMode::analytic)
                tasks.push_back({tc, lambda, SweepMode::montecarlo});
        }

    const int workers = resolve_threads(options.threads);
    SimConfig sim = config.sim;
    // Rows already keep every worker busy; a lone row gets them all.
    sim.threads = tasks.size() >= static_cast<std::size_t>(workers) ? 1 : workers;

    std::vector<SweepRow> rows(tasks.size());
    std::mutex progress_mutex;
    std::size_t done = 0;
    parallel_for(tasks.size(), workers, [&](std::size_t i) {
        const Task& t = tasks[i];
        SystemParams params = config.params;
        params.t_c = t.tc;
        params.lambda_d = t.lambda;
        SweepRow& row = rows[i];
        try {
            row = t.mode == SweepMode::analytic ? analytic_row(params, config.power, options.search)
                                                : montecarlo_row(params, config.power, sim,
                                                                 options.search);
        } catch (const NumericalFailure& e) {
            if (t.mode == SweepMode::analytic && options.fallback_mc) {
                row = montecarlo_row(params, config.power, sim, options.search);
                row.fallback = true;
                row.failure = e.what();
            } else {
                row = SweepRow{};
                row.tc = t.tc;
                row.lambda_d = t.lambda;
                row.mode = t.mode;
                row.failed = true;
                row.failure = e.what();
            }
        }
        if (options.progress) {
            std::lock_guard lock(progress_mutex);
            options.progress(++done, tasks.size());
        }
    });
    return rows;
}

// ------------------------------------------------------------------ csv

const std::string& csv_header(OutputUnits units)
{
    static const std::string si =
        "tc,lambda_d,mode,beta_star_d2d,beta_star_cue,rate_d2d_bps,rate_cue_bps,asr_bps,"
        "total_power_w,ee_bits_per_joule,asr_stderr,ee_stderr";
    static const std::string mbit =
        "tc,lambda_d,mode,beta_star_d2d,beta_star_cue,rate_d2d_mbps,rate_cue_mbps,asr_mbps,"
        "total_power_w,ee_mbit_per_joule,asr_stderr,ee_stderr";
    return units == OutputUnits::si ? si : mbit;
}

namespace {

std::string number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

std::string optional_number(const std::optional<double>& v)
{
    return v ? number(*v) : std::string();
}

}  // namespace

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out, OutputUnits units)
{
    const double scale = units == OutputUnits::mbit ? 1e-6 : 1.0;
    out << csv_header(units) << '\n';
    for (const auto& r : rows) {
        out << r.tc << ',' << number(r.lambda_d) << ',' << to_string(r.mode);
        if (r.failed) {
            out << ",,,,,,,,,\n";
            continue;
        }
        out << ',' << number(r.beta_star_d2d) << ',' << number(r.beta_star_cue) << ','
            << number(r.rate_d2d * scale) << ',' << number(r.rate_cue * scale) << ','
            << number(r.asr * scale) << ',' << number(r.total_power) << ','
            << number(r.ee * scale) << ','
            << optional_number(r.asr_stderr ? std::optional(*r.asr_stderr * scale) : std::nullopt)
            << ','
            << optional_number(r.ee_stderr ? std::optional(*r.ee_stderr * scale) : std::nullopt)
            << '\n';
    }
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path, OutputUnits units)
{
    if (path == "-") {
        emit_csv(rows, std::cout, units);
        std::cout.flush();
        if (!std::cout) throw FileError("failed writing to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot open '" + path + "' for writing");
    emit_csv(rows, out, units);
    out.close();
    if (!out) throw FileError("failed writing '" + path + "'");
}

std::vector<SweepRow> parse_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != csv_header(OutputUnits::si))
        throw ConfigError("csv: unexpected header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 12) throw ConfigError("csv: expected 12 fields in '" + line + "'");
        SweepRow r;
        r.tc = static_cast<int>(to_integer(f[0], "tc"));
        r.lambda_d = to_real(f[1], "lambda_d");
        r.mode = parse_sweep_mode(f[2]);
        if (f[3].empty()) {
            r.failed = true;
            rows.push_back(r);
            continue;
        }
        r.beta_star_d2d = to_real(f[3], "beta_star_d2d");
        r.beta_star_cue = to_real(f[4], "beta_star_cue");
        r.rate_d2d = to_real(f[5], "rate_d2d_bps");
        r.rate_cue = to_real(f[6], "rate_cue_bps");
        r.asr = to_real(f[7], "asr_bps");
        r.total_power = to_real(f[8], "total_power_w");
        r.ee = to_real(f[9], "ee_bits_per_joule");
        if (!f[10].empty()) r.asr_stderr = to_real(f[10], "asr_stderr");
        if (!f[11].empty()) r.ee_stderr = to_real(f[11], "ee_stderr");
        rows.push_back(r);
    }
    return rows;
}

void emit_json(const std::vector<SweepRow>& rows, const RunConfig& config, std::ostream& out,
               OutputUnits units)
{
    const double scale = units == OutputUnits::mbit ? 1e-6 : 1.0;
    json doc;
    doc["meta"] = json::parse(config_to_json(config));
    doc["meta"]["units"] = units == OutputUnits::si ? "si" : "mbit";
    json list = json::array();
    for (const auto& r : rows) {
        json j;
        j["tc"] = r.tc;
        j["lambda_d"] = r.lambda_d;
        j["mode"] = to_string(r.mode);
        if (r.failed) {
            j["failed"] = true;
            j["failure"] = r.failure;
            list.push_back(j);
            continue;
        }
        if (r.fallback) {
            j["fallback"] = true;
            j["failure"] = r.failure;
        }
        j["beta_star_d2d"] = r.beta_star_d2d;
        j["beta_star_cue"] = r.beta_star_cue;
        j["rate_d2d"] = r.rate_d2d * scale;
        j["rate_cue"] = r.rate_cue * scale;
        j["asr"] = r.asr * scale;
        j["total_power_w"] = r.total_power;
        j["ee"] = r.ee * scale;
        j["asr_stderr"] = r.asr_stderr ? json(*r.asr_stderr * scale) : json(nullptr);
        j["ee_stderr"] = r.ee_stderr ? json(*r.ee_stderr * scale) : json(nullptr);
        list.push_back(j);
    }
    doc["rows"] = list;
    out << doc.dump(2) << '\n';
}

// ----------------------------------------------------------- validation

bool ValidationReport::all_pass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

std::size_t ValidationReport::failures() const
{
    return std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.pass; });
}

std::size_t ValidationReport::numerical_failures() const
{
    return std::count_if(rows.begin(), rows.end(),
                         [](const auto& r) { return r.numerical_failure; });
}

ValidationReport validate_coverage(const SystemParams& params, const SimConfig& sim,
                                   const std::vector<double>& beta_db, double analytic_offset)
{
    if (params.t_c < params.u_c) throw ConfigError("validate: need t_c ≥ u_c");
    std::vector<double> betas;
    for (double db : beta_db) betas.push_back(db_to_linear(db));
    std::vector<double> sorted = betas;
    std::sort(sorted.begin(), sorted.end());

    ValidationReport report;
    const CueCoverage cue_model(params);
    for (UserType type : {UserType::d2d, UserType::cellular}) {
        const SinrBatch batch =
            type == UserType::d2d ? simulate_d2d_sinr(params, sim) : simulate_cue_sinr(params, sim);
        const auto estimates = empirical_coverage(batch, sorted);
        for (const auto& e : estimates) {
            ValidationRow row;
            row.user_type = type;
            row.beta = e.beta;
            row.empirical = e.p_hat;
            row.std_err = e.std_err;
            try {
                row.analytic = (type == UserType::d2d ? d2d_coverage(params, e.beta)
                                                      : cue_model(e.beta)) +
                               analytic_offset;
                row.pass = std::fabs(row.analytic - row.empirical) <=
                           std::max(3.0 * row.std_err, 0.005);
            } catch (const NumericalFailure& err) {
                row.numerical_failure = true;
                row.note = err.what();
                row.pass = false;
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

void emit_report(const ValidationReport& report, std::ostream& out)
{
    out << "user_type,beta_db,analytic,empirical,std_err,result\n";
    for (const auto& r : report.rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%.3f,%.6f,%.6f,%.6f,", to_string(r.user_type),
                      10.0 * std::log10(r.beta), r.analytic, r.empirical, r.std_err);
        out << buf << (r.numerical_failure ? "numerical-failure" : (r.pass ? "pass" : "FAIL"))
            << '\n';
    }
    out << "# " << report.rows.size() - report.failures() << "/" << report.rows.size()
        << " rows pass\n";
}

}  // namespace mimod2d
