#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mimod2d/metrics.hpp"
#include "mimod2d/montecarlo.hpp"
#include "mimod2d/system_params.hpp"

namespace mimod2d {

enum class SweepMode { analytic, montecarlo, both };

const char* to_string(SweepMode mode);
SweepMode parse_sweep_mode(const std::string& text);

struct SweepGrid {
    std::vector<int> tc_values;
    std::vector<double> lambda_values;
    SweepMode mode = SweepMode::analytic;
};

/// Empty when every (tc, lambda) pair gives valid params on top of `base`.
std::vector<Violation> validate(const SweepGrid& grid, const SystemParams& base);

/// "4:100:2" (inclusive start:stop:step), "4,8,70" or "4".
std::vector<int> parse_int_grid(const std::string& text);

/// "1e-6:1e-3:20log" (20 log-spaced values), "0:1:5lin", "1e-6,1e-4" or
/// "1e-6". Throws ConfigError on malformed text.
std::vector<double> parse_real_grid(const std::string& text);

/// "LO:HI:N" in dB, N evenly spaced points.
std::vector<double> parse_db_grid(const std::string& text);

/// Everything a run needs, resolved to linear SI units.
struct RunConfig {
    SystemParams params = SystemParams::reference();
    PowerModel power;
    SimConfig sim;
    SweepGrid grid;
    PathlossConvention convention = PathlossConvention::gain;
    double p_c_dbm = 41.0;
    double p_d_dbm = 13.0;
    double noise_power_dbm = -131.0;
    double a_c_db = 30.55;
    double a_d_db = 38.84;

    /// Reference scenario with the default sweep grid.
    static RunConfig defaults();

    /// Recomputes the linear fields of params from the dB fields.
    void resolve();
};

/// Parses a JSON object; absent keys keep their defaults, unknown keys are
/// rejected. `source` names the input in error messages. Throws ConfigError.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// parse_config on a file's contents. Throws FileError if it cannot be read.
RunConfig load_config(const std::string& path);

/// Throws ConfigError with the verbatim violation list if anything is invalid.
void require_valid(const RunConfig& config);

/// Resolved parameters as a JSON document (same keys parse_config accepts).
std::string config_to_json(const RunConfig& config);

struct SweepRow {
    int tc = 0;
    double lambda_d = 0.0;
    SweepMode mode = SweepMode::analytic;  // analytic or montecarlo
    bool failed = false;
    std::string failure;   // reason when failed
    bool fallback = false;  // analytic failed, values are Monte Carlo
    double beta_star_d2d = 0.0;
    double beta_star_cue = 0.0;
    double rate_d2d = 0.0;     // bits/s
    double rate_cue = 0.0;     // bits/s
    double asr = 0.0;          // bits/s
    double total_power = 0.0;  // W
    double ee = 0.0;           // bits/J
    std::optional<double> asr_stderr;
    std::optional<double> ee_stderr;
};

struct SweepOptions {
    bool fallback_mc = false;
    RateSearch search;
    int threads = 0;
    // Called after each finished row with (done, total); may be empty.
    std::function<void(std::size_t, std::size_t)> progress;
};

/// One analytic row for the given params.
SweepRow analytic_row(const SystemParams& params, const PowerModel& power,
                      const RateSearch& search = {});

/// One Monte Carlo row: rates from empirical coverage of simulated batches.
SweepRow montecarlo_row(const SystemParams& params, const PowerModel& power,
                        const SimConfig& sim, const RateSearch& search = {});

/// Rows in grid order: tc outer, lambda inner, analytic before Monte Carlo.
std::vector<SweepRow> run_sweep(const RunConfig& config, const SweepOptions& options = {});

enum class OutputUnits { si, mbit };

OutputUnits parse_units(const std::string& text);

/// Header plus one line per row. Numbers use %.17e; failed rows and analytic
/// rows leave the unavailable columns empty. With mbit units the rate, ASR
/// and EE columns are divided by 1e6 and renamed accordingly.
void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out,
              OutputUnits units = OutputUnits::si);

/// Writes to `path`, or stdout for "-". Throws FileError.
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path,
              OutputUnits units = OutputUnits::si);

/// Reads what emit_csv wrote with SI units. Throws ConfigError on a bad header.
std::vector<SweepRow> parse_csv(std::istream& in);

/// {"meta": {...}, "rows": [...]} with the same fields as the CSV.
void emit_json(const std::vector<SweepRow>& rows, const RunConfig& config, std::ostream& out,
               OutputUnits units = OutputUnits::si);

const std::string& csv_header(OutputUnits units = OutputUnits::si);

struct ValidationRow {
    UserType user_type = UserType::d2d;
    double beta = 0.0;  // linear
    double analytic = 0.0;
    double empirical = 0.0;
    double std_err = 0.0;
    bool numerical_failure = false;
    std::string note;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;

    bool all_pass() const;
    std::size_t failures() const;
    std::size_t numerical_failures() const;
};

/// Analytic against empirical coverage for both user types on a dB grid.
/// A row passes when |analytic - empirical| <= max(3 std_err, 0.005).
/// `analytic_offset` is added to every analytic value (detector check).
ValidationReport validate_coverage(const SystemParams& params, const SimConfig& sim,
                                   const std::vector<double>& beta_db,
                                   double analytic_offset = 0.0);

void emit_report(const ValidationReport& report, std::ostream& out);

}  // namespace mimod2d
