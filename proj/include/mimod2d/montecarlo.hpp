#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mimod2d/metrics.hpp"
#include "mimod2d/rng.hpp"
#include "mimod2d/system_params.hpp"

namespace mimod2d {

/// Where the BS sits relative to the typical D2D receiver.
enum class BsPlacement {
    uniform_disc,  // distance density 2r/R^2 on [0, R]
    cell_edge,     // distance fixed at R
};

struct SimConfig {
    std::int64_t trials = 100000;
    std::uint64_t master_seed = 1;
    double window_factor = 5.0;  // PPP window radius in units of R
    int chunk_size = 4096;       // trials per work unit
    int threads = 0;             // 0 = hardware concurrency; never affects results
    BsPlacement d2d_bs_placement = BsPlacement::uniform_disc;
    // Add the mean interference of the PPP outside the window,
    // 2 pi lambda P_d W^(2-alpha_d) / (alpha_d - 2), to every trial.
    bool tail_correction = true;
};

std::vector<Violation> validate(const SimConfig& config);

struct Point2 {
    double x;
    double y;
};

/// Homogeneous PPP of intensity lambda on the disc of the given radius
/// centred at the origin. Points are generated by radius order (squared
/// radii are the arrival times of a unit-rate process scaled by 1/(pi
/// lambda)), which as a point set is the same law as a Poisson count of
/// i.i.d. uniform points.
std::vector<Point2> sample_ppp(double lambda, double window_radius, Xoshiro256& rng);

struct SinrBatch {
    UserType user_type = UserType::d2d;
    std::vector<double> sinr_values;
    std::string params_fingerprint;
};

/// Hex digest of everything that determines a batch (params, config minus
/// thread count, user type).
std::string fingerprint(const SystemParams& params, const SimConfig& config, UserType type);

/// SINR samples of the typical D2D receiver: own link over R00 with
/// Exp(1) fading, BS interference with Gamma(U_c, 1) cross gain, and PPP
/// interferers on a disc of radius window_factor * R.
SinrBatch simulate_d2d_sinr(const SystemParams& params, const SimConfig& config);

/// SINR samples of the typical cellular user: distance with density 2d/R^2,
/// ZF gain Gamma(T_c - U_c + 1, 1), PPP interferers as above.
SinrBatch simulate_cue_sinr(const SystemParams& params, const SimConfig& config);

struct CoverageEstimate {
    double beta;
    double p_hat;
    double std_err;  // sqrt(p (1-p) / n)
};

/// Fraction of samples >= beta for each beta of an ascending grid. Throws
/// std::invalid_argument for an empty batch or an unsorted grid.
std::vector<CoverageEstimate> empirical_coverage(const SinrBatch& batch,
                                                 const std::vector<double>& beta_grid);

/// Empirical coverage at arbitrary thresholds, for the rate search.
class EmpiricalCoverage {
public:
    explicit EmpiricalCoverage(const SinrBatch& batch);

    double operator()(double beta) const;
    double std_err(double beta) const;
    std::size_t size() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

struct ZfGainSample {
    double useful_gain;  // |h_0^H v_0|^2
    double cross_gain;   // ||f^H V||^2
};

/// Full-matrix zero-forcing draws used to check the Gamma surrogates of the
/// simulators. Channel entries are i.i.d. CN(0, 1); V is the pseudo-inverse
/// of the U x T channel with unit-norm columns. Ill-conditioned draws are
/// redrawn.
std::vector<ZfGainSample> zf_oracle_gains(int t_c, int u_c, int samples, Xoshiro256& rng);

}  // namespace mimod2d
