#pragma once

#include <functional>
#include <vector>

#include "mimod2d/system_params.hpp"

namespace mimod2d {

enum class UserType { d2d, cellular };

const char* to_string(UserType type);

/// Sampled coverage probabilities against SINR threshold for one user type.
/// std_err is empty for analytic curves.
struct CoverageCurve {
    UserType user_type = UserType::d2d;
    std::vector<double> beta;
    std::vector<double> probability;
    std::vector<double> std_err;
};

/// Threshold search window for the rate supremum. The default spans
/// -30 dB to +40 dB on a 200-point log grid.
struct RateSearch {
    double beta_min_db = -30.0;
    double beta_max_db = 40.0;
    int grid_points = 200;
    double rel_tol = 1e-4;  // on beta, golden-section refinement
};

struct RateResult {
    double beta_star = 0.0;
    double rate = 0.0;  // bits/s
    double coverage_at_star = 0.0;
    bool boundary_warning = false;  // objective still rising at beta_max
    int evaluations = 0;
};

using CoverageFunction = std::function<double(double)>;

/// sup_beta B log2(1+beta) P(beta): log grid search, then golden-section
/// inside the cells adjacent to the best grid point. Throws
/// std::invalid_argument when P returns a value outside [0, 1].
RateResult average_rate(const CoverageFunction& coverage, double bandwidth,
                        const RateSearch& search = {});

/// Discrete supremum over the samples of a tabulated curve.
RateResult average_rate(const CoverageCurve& curve, double bandwidth);

/// U_c R_c + pi R^2 lambda_d R_d.
double asr(const SystemParams& params, double rate_cue, double rate_d2d);

/// (P_c + lambda pi R^2 P_d)/eta + C0 + T_c C1 + (U_c + 2 lambda pi R^2) C2.
double total_power(const SystemParams& params, const PowerModel& model);

/// asr / power; DomainError unless power > 0.
double energy_efficiency(double asr_bps, double power_w);

struct NetworkMetrics {
    double asr = 0.0;          // bits/s
    double total_power = 0.0;  // W
    double ee = 0.0;           // bits/J
    double rate_cue = 0.0;
    double rate_d2d = 0.0;
    double mean_d2d_count = 0.0;
};

NetworkMetrics network_metrics(const SystemParams& params, const PowerModel& model,
                               double rate_cue, double rate_d2d);

}  // namespace mimod2d
