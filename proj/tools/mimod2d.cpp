// Command-line front end: coverage curves, rate search, sweeps, analytic
// vs Monte Carlo validation and the power breakdown.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mimod2d/coverage.hpp"
#include "mimod2d/errors.hpp"
#include "mimod2d/metrics.hpp"
#include "mimod2d/montecarlo.hpp"
#include "mimod2d/sweep.hpp"
#include "mimod2d/units.hpp"

using namespace mimod2d;

namespace {

constexpr int exit_usage = 1;
constexpr int exit_validation = 2;
constexpr int exit_numerical = 3;

struct Options {
    std::string config_path;
    std::string tc;
    std::string lambda_d;
    std::string mode;
    std::optional<long> trials;
    std::optional<std::uint64_t> seed;
    std::string beta_db = "-10:20:13";
    std::string out = "-";
    std::string units = "si";
    std::string format = "csv";
    std::string user_type = "both";
    std::optional<bool> apply_noise_figure;
    bool fallback_mc = false;
    bool progress = false;
    std::optional<int> threads;
    double analytic_offset = 0.0;
};

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("--config", o.config_path, "JSON configuration file");
    cmd->add_option("--tc", o.tc, "BS antennas: N, list, or start:stop:step");
    cmd->add_option("--lambda-d", o.lambda_d, "D2D density: x, list, or lo:hi:Nlog");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--apply-noise-figure", o.apply_noise_figure, "true/false");
    cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    cmd->add_option("--out", o.out, "output path, - for stdout");
}

RunConfig resolve(const Options& o, bool grid_flags)
{
    RunConfig c = o.config_path.empty() ? RunConfig::defaults() : load_config(o.config_path);
    if (o.trials) c.sim.trials = *o.trials;
    if (o.seed) c.sim.master_seed = *o.seed;
    if (o.threads) c.sim.threads = *o.threads;
    if (o.apply_noise_figure) c.params.apply_noise_figure = *o.apply_noise_figure;
    if (!o.mode.empty()) c.grid.mode = parse_sweep_mode(o.mode);
    if (grid_flags) {
        if (!o.tc.empty()) c.grid.tc_values = parse_int_grid(o.tc);
        if (!o.lambda_d.empty()) c.grid.lambda_values = parse_real_grid(o.lambda_d);
    } else {
        if (!o.tc.empty()) {
            const auto v = parse_int_grid(o.tc);
            if (v.size() != 1) throw ConfigError("--tc: expected a single value");
            c.params.t_c = v.front();
        }
        if (!o.lambda_d.empty()) {
            const auto v = parse_real_grid(o.lambda_d);
            if (v.size() != 1) throw ConfigError("--lambda-d: expected a single value");
            c.params.lambda_d = v.front();
        }
        // The grid is irrelevant here; keep it consistent with the point.
        c.grid.tc_values = {c.params.t_c};
        c.grid.lambda_values = {c.params.lambda_d};
    }
    require_valid(c);
    return c;
}

// Opens --out, or stdout for "-".
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw FileError("cannot open '" + path + "' for writing");
        path_ = path;
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void close()
    {
        stream().flush();
        if (!stream()) throw FileError("failed writing '" + (path_.empty() ? "stdout" : path_) + "'");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::string path_;
};

std::string fmt(const char* pattern, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

bool wants(const std::string& type, UserType t)
{
    if (type == "both") return true;
    if (type == "d2d") return t == UserType::d2d;
    if (type == "cue" || type == "cellular") return t == UserType::cellular;
    throw ConfigError("--type: expected d2d, cue or both");
}

int run_coverage(const Options& o)
{
    const RunConfig c = resolve(o, false);
    const auto beta_db = parse_db_grid(o.beta_db);
    std::vector<double> betas;
    for (double db : beta_db) betas.push_back(db_to_linear(db));
    Output out(o.out);
    auto& s = out.stream();
    s << "user_type,mode,beta_db,beta,probability,std_err\n";
    for (UserType type : {UserType::d2d, UserType::cellular}) {
        if (!wants(o.user_type, type)) continue;
        if (c.grid.mode != SweepMode::montecarlo) {
            const CueCoverage cue(c.params);
            for (std::size_t i = 0; i < betas.size(); ++i) {
                const double p = type == UserType::d2d ? d2d_coverage(c.params, betas[i])
                                                       : cue(betas[i]);
                s << to_string(type) << ",analytic," << fmt("%.17e", beta_db[i]) << ','
                  << fmt("%.17e", betas[i]) << ',' << fmt("%.17e", p) << ",\n";
            }
        }
        if (c.grid.mode != SweepMode::analytic) {
            const SinrBatch batch = type == UserType::d2d ? simulate_d2d_sinr(c.params, c.sim)
                                                          : simulate_cue_sinr(c.params, c.sim);
            const auto est = empirical_coverage(batch, betas);
            for (std::size_t i = 0; i < est.size(); ++i)
                s << to_string(type) << ",mc," << fmt("%.17e", beta_db[i]) << ','
                  << fmt("%.17e", est[i].beta) << ',' << fmt("%.17e", est[i].p_hat) << ','
                  << fmt("%.17e", est[i].std_err) << '\n';
        }
    }
    out.close();
    return 0;
}

int run_rate(const Options& o)
{
    const RunConfig c = resolve(o, false);
    Output out(o.out);
    auto& s = out.stream();
    const double scale = parse_units(o.units) == OutputUnits::mbit ? 1e-6 : 1.0;
    s << "user_type,mode,beta_star,beta_star_db,rate,coverage_at_star,boundary_warning,"
         "evaluations\n";
    auto line = [&](UserType type, const char* mode, const RateResult& r) {
        s << to_string(type) << ',' << mode << ',' << fmt("%.17e", r.beta_star) << ','
          << fmt("%.6f", 10.0 * std::log10(r.beta_star)) << ',' << fmt("%.17e", r.rate * scale)
          << ',' << fmt("%.17e", r.coverage_at_star) << ','
          << (r.boundary_warning ? "true" : "false") << ',' << r.evaluations << '\n';
        if (r.boundary_warning)
            std::cerr << "warning: " << to_string(type)
                      << " rate objective still rising at the search boundary\n";
    };
    if (c.grid.mode != SweepMode::montecarlo) {
        const CueCoverage cue(c.params);
        line(UserType::d2d, "analytic",
             average_rate([&](double b) { return d2d_coverage(c.params, b); }, c.params.bandwidth));
        line(UserType::cellular, "analytic",
             average_rate([&](double b) { return cue(b); }, c.params.bandwidth));
    }
    if (c.grid.mode != SweepMode::analytic) {
        const EmpiricalCoverage d2d(simulate_d2d_sinr(c.params, c.sim));
        const EmpiricalCoverage cue(simulate_cue_sinr(c.params, c.sim));
        line(UserType::d2d, "mc", average_rate([&](double b) { return d2d(b); }, c.params.bandwidth));
        line(UserType::cellular, "mc",
             average_rate([&](double b) { return cue(b); }, c.params.bandwidth));
    }
    out.close();
    return 0;
}

int run_sweep_command(const Options& o)
{
    const RunConfig c = resolve(o, true);
    SweepOptions options;
    options.fallback_mc = o.fallback_mc;
    options.threads = c.sim.threads;
    if (o.progress)
        options.progress = [](std::size_t done, std::size_t total) {
            std::cerr << "\rrow " << done << "/" << total << std::flush;
            if (done == total) std::cerr << '\n';
        };
    const auto rows = run_sweep(c, options);
    const OutputUnits units = parse_units(o.units);
    Output out(o.out);
    if (o.format == "json") emit_json(rows, c, out.stream(), units);
    else if (o.format == "csv") emit_csv(rows, out.stream(), units);
    else throw ConfigError("--format: expected csv or json");
    out.close();

    int failed = 0;
    for (const auto& r : rows) {
        if (r.failed) {
            ++failed;
            std::cerr << "row tc=" << r.tc << " lambda_d=" << r.lambda_d << " failed: " << r.failure
                      << '\n';
        } else if (r.fallback) {
            std::cerr << "row tc=" << r.tc << " lambda_d=" << r.lambda_d
                      << " used Monte Carlo fallback: " << r.failure << '\n';
        }
    }
    return failed > 0 ? exit_numerical : 0;
}

int run_validate(const Options& o)
{
    const RunConfig c = resolve(o, false);
    const auto report = validate_coverage(c.params, c.sim, parse_db_grid(o.beta_db),
                                          o.analytic_offset);
    Output out(o.out);
    emit_report(report, out.stream());
    out.close();
    return report.all_pass() ? 0 : exit_validation;
}

int run_power(const Options& o)
{
    const RunConfig c = resolve(o, false);
    const SystemParams& p = c.params;
    const PowerModel& m = c.power;
    const double n_d2d = p.mean_d2d_count();
    Output out(o.out);
    auto& s = out.stream();
    s << "component,watts\n";
    s << "bs_amplifier," << fmt("%.17e", p.p_c / m.eta) << '\n';
    s << "d2d_amplifiers," << fmt("%.17e", n_d2d * p.p_d / m.eta) << '\n';
    s << "bs_fixed," << fmt("%.17e", m.c0) << '\n';
    s << "bs_antennas," << fmt("%.17e", p.t_c * m.c1) << '\n';
    s << "handsets," << fmt("%.17e", (p.u_c + 2.0 * n_d2d) * m.c2) << '\n';
    s << "total," << fmt("%.17e", total_power(p, m)) << '\n';
    out.close();
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Massive MIMO downlink with a D2D underlay: coverage, rates and energy efficiency"};
    app.require_subcommand(1);
    Options o;

    auto* coverage = app.add_subcommand("coverage", "coverage probability against threshold");
    add_common(coverage, o);
    coverage->add_option("--beta-db", o.beta_db, "threshold grid LO:HI:N in dB");
    coverage->add_option("--mode", o.mode, "analytic, mc or both");
    coverage->add_option("--type", o.user_type, "d2d, cue or both");

    auto* rate = app.add_subcommand("rate", "rate-maximizing threshold search diagnostics");
    add_common(rate, o);
    rate->add_option("--mode", o.mode, "analytic, mc or both");
    rate->add_option("--units", o.units, "si or mbit");

    auto* sweep = app.add_subcommand("sweep", "run a (t_c, lambda_d) grid");
    add_common(sweep, o);
    sweep->add_option("--mode", o.mode, "analytic, mc or both");
    sweep->add_option("--units", o.units, "si or mbit");
    sweep->add_option("--format", o.format, "csv or json");
    sweep->add_flag("--fallback-mc", o.fallback_mc, "use Monte Carlo for failed analytic rows");
    sweep->add_flag("--progress", o.progress, "report progress on stderr");

    auto* validate = app.add_subcommand("validate", "analytic against Monte Carlo coverage");
    add_common(validate, o);
    validate->add_option("--beta-db", o.beta_db, "threshold grid LO:HI:N in dB");
    validate->add_option("--analytic-offset", o.analytic_offset, "test hook")->group("");

    auto* power = app.add_subcommand("power", "power consumption breakdown");
    add_common(power, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*coverage) return run_coverage(o);
        if (*rate) return run_rate(o);
        if (*sweep) return run_sweep_command(o);
        if (*validate) return run_validate(o);
        if (*power) return run_power(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const FileError& e) {
        std::cerr << "file error: " << e.what() << '\n';
        return exit_usage;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
