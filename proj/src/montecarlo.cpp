#include "mimod2d/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "mimod2d/errors.hpp"
#include "mimod2d/parallel.hpp"

namespace mimod2d {
namespace {

constexpr std::uint64_t d2d_stream = 0xd2d0;
constexpr std::uint64_t cue_stream = 0xc0e0;

// r^-alpha from r^2, with the common exponents special-cased.
double inverse_power_from_squared(double r2, double alpha)
{
    if (alpha == 3.0) return 1.0 / (r2 * std::sqrt(r2));
    if (alpha == 4.0) return 1.0 / (r2 * r2);
    return std::pow(r2, -0.5 * alpha);
}

// Sum of p_d r^-alpha |h|^2 over a PPP on the disc of squared radius
// window2. Squared radii are arrival times of a unit-rate Poisson process
// divided by pi lambda.
double ppp_interference(Xoshiro256& rng, double lambda, double window2, double alpha, double p_d)
{
    if (lambda <= 0.0) return 0.0;
    const double limit = std::numbers::pi * lambda * window2;
    const double to_r2 = 1.0 / (std::numbers::pi * lambda);
    double arrival = 0.0;
    double total = 0.0;
    for (;;) {
        arrival += sample_exponential(rng);
        if (arrival > limit) break;
        const double fading = sample_exponential(rng);
        total += fading * inverse_power_from_squared(arrival * to_r2, alpha);
    }
    return p_d * total;
}

// Expected interference from PPP points beyond radius `window`.
double mean_tail_interference(const SystemParams& p, double window)
{
    return 2.0 * std::numbers::pi * p.lambda_d * p.p_d * std::pow(window, 2.0 - p.alpha_d) /
           (p.alpha_d - 2.0);
}

template <class Trial>
std::vector<double> run_trials(const SimConfig& config, std::uint64_t stream, Trial trial)
{
    std::vector<double> values(static_cast<std::size_t>(config.trials));
    const std::int64_t chunk = config.chunk_size;
    const std::size_t chunks = static_cast<std::size_t>((config.trials + chunk - 1) / chunk);
    parallel_for(chunks, config.threads, [&](std::size_t c) {
        const std::int64_t begin = static_cast<std::int64_t>(c) * chunk;
        const std::int64_t end = std::min(config.trials, begin + chunk);
        for (std::int64_t t = begin; t < end; ++t) {
            // One counter-derived stream per trial: results do not depend on
            // chunking or thread count, and densities share random numbers.
            Xoshiro256 rng = substream(config.master_seed, stream, static_cast<std::uint64_t>(t));
            values[static_cast<std::size_t>(t)] = trial(rng);
        }
    });
    return values;
}

void require_valid(const SimConfig& config)
{
    const auto violations = validate(config);
    if (!violations.empty()) throw ConfigError("invalid simulation config: " + describe(violations));
}

}  // namespace

std::vector<Violation> validate(const SimConfig& config)
{
    std::vector<Violation> v;
    if (config.trials < 1) v.push_back({"trials", "trials ≥ 1"});
    if (!(config.window_factor >= 1.0)) v.push_back({"window_factor", "window_factor ≥ 1"});
    if (config.chunk_size < 1) v.push_back({"chunk_size", "chunk_size ≥ 1"});
    return v;
}

std::vector<Point2> sample_ppp(double lambda, double window_radius, Xoshiro256& rng)
{
    if (!(lambda >= 0.0)) throw DomainError("sample_ppp: lambda must be >= 0");
    if (!(window_radius > 0.0)) throw DomainError("sample_ppp: window radius must be > 0");
    std::vector<Point2> points;
    if (lambda == 0.0) return points;
    const double limit = std::numbers::pi * lambda * window_radius * window_radius;
    const double to_r2 = 1.0 / (std::numbers::pi * lambda);
    double arrival = 0.0;
    for (;;) {
        arrival += sample_exponential(rng);
        if (arrival > limit) break;
        const double r = std::sqrt(arrival * to_r2);
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        points.push_back({r * std::cos(angle), r * std::sin(angle)});
    }
    return points;
}

std::string fingerprint(const SystemParams& p, const SimConfig& c, UserType type)
{
    // FNV-1a over the raw field values.
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto mix = [&](const auto& value) {
        unsigned char bytes[sizeof(value)];
        std::memcpy(bytes, &value, sizeof(value));
        for (unsigned char byte : bytes) {
            hash ^= byte;
            hash *= 0x100000001b3ULL;
        }
    };
    mix(p.p_c); mix(p.p_d); mix(p.u_c); mix(p.t_c); mix(p.lambda_d); mix(p.cell_radius);
    mix(p.bandwidth); mix(p.noise_power); mix(p.noise_figure_db); mix(p.apply_noise_figure);
    mix(p.d2d_distance); mix(p.alpha_c); mix(p.alpha_d); mix(p.a_c); mix(p.a_d);
    mix(c.trials); mix(c.master_seed); mix(c.window_factor); mix(c.tail_correction);
    mix(static_cast<int>(c.d2d_bs_placement)); mix(static_cast<int>(type));
    char text[17];
    std::snprintf(text, sizeof(text), "%016llx", static_cast<unsigned long long>(hash));
    return text;
}

SinrBatch simulate_d2d_sinr(const SystemParams& params, const SimConfig& config)
{
    mimod2d::require_valid(params);
    require_valid(config);

    const double signal_scale = std::pow(params.d2d_distance, -params.alpha_d) * params.p_d;
    const double bs_scale = (params.a_c / params.a_d) * (params.p_c / params.u_c);
    const double noise = params.effective_noise() / params.a_d;
    const double radius = params.cell_radius;
    const double window = config.window_factor * radius;
    const double window2 = window * window;
    const double tail = config.tail_correction ? mean_tail_interference(params, window) : 0.0;
    const bool edge = config.d2d_bs_placement == BsPlacement::cell_edge;

    SinrBatch batch;
    batch.user_type = UserType::d2d;
    batch.params_fingerprint = fingerprint(params, config, UserType::d2d);
    batch.sinr_values = run_trials(config, d2d_stream, [&](Xoshiro256& rng) {
        const double own_fading = sample_exponential(rng);
        const double r_bs = edge ? radius : radius * std::sqrt(rng.uniform_positive());
        const double cross_gain = sample_gamma_integer(rng, params.u_c);
        const double i_bs = bs_scale * std::pow(r_bs, -params.alpha_c) * cross_gain;
        const double i_d2d =
            ppp_interference(rng, params.lambda_d, window2, params.alpha_d, params.p_d) + tail;
        return signal_scale * own_fading / (i_bs + i_d2d + noise);
    });
    return batch;
}

SinrBatch simulate_cue_sinr(const SystemParams& params, const SimConfig& config)
{
    mimod2d::require_valid(params);
    require_valid(config);

    const int zf_shape = params.t_c - params.u_c + 1;
    const double scale = params.a_d / params.zeta();
    const double noise = params.effective_noise() / params.a_d;
    const double radius = params.cell_radius;
    const double window = config.window_factor * radius;
    const double window2 = window * window;
    const double tail = config.tail_correction ? mean_tail_interference(params, window) : 0.0;

    SinrBatch batch;
    batch.user_type = UserType::cellular;
    batch.params_fingerprint = fingerprint(params, config, UserType::cellular);
    batch.sinr_values = run_trials(config, cue_stream, [&](Xoshiro256& rng) {
        const double distance = radius * std::sqrt(rng.uniform_positive());
        const double useful_gain = sample_gamma_integer(rng, zf_shape);
        const double i_d2d =
            ppp_interference(rng, params.lambda_d, window2, params.alpha_d, params.p_d) + tail;
        return useful_gain / (scale * std::pow(distance, params.alpha_c) * (i_d2d + noise));
    });
    return batch;
}

std::vector<CoverageEstimate> empirical_coverage(const SinrBatch& batch,
                                                 const std::vector<double>& beta_grid)
{
    if (batch.sinr_values.empty()) throw std::invalid_argument("empirical_coverage: empty batch");
    if (!std::is_sorted(beta_grid.begin(), beta_grid.end()))
        throw std::invalid_argument("empirical_coverage: beta grid must be ascending");
    const EmpiricalCoverage coverage(batch);
    std::vector<CoverageEstimate> out;
    out.reserve(beta_grid.size());
    for (double beta : beta_grid) out.push_back({beta, coverage(beta), coverage.std_err(beta)});
    return out;
}

EmpiricalCoverage::EmpiricalCoverage(const SinrBatch& batch) : sorted_(batch.sinr_values)
{
    if (sorted_.empty()) throw std::invalid_argument("EmpiricalCoverage: empty batch");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCoverage::operator()(double beta) const
{
    const auto first = std::lower_bound(sorted_.begin(), sorted_.end(), beta);
    return static_cast<double>(sorted_.end() - first) / static_cast<double>(sorted_.size());
}

double EmpiricalCoverage::std_err(double beta) const
{
    const double p = (*this)(beta);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(sorted_.size()));
}

std::vector<ZfGainSample> zf_oracle_gains(int t_c, int u_c, int samples, Xoshiro256& rng)
{
    if (u_c < 1 || u_c > t_c) throw DomainError("zf_oracle_gains: need 1 <= u_c <= t_c");
    if (samples < 0) throw DomainError("zf_oracle_gains: samples must be >= 0");
    using Matrix = Eigen::MatrixXcd;
    using Vector = Eigen::VectorXcd;
    const double sd = std::sqrt(0.5);  // CN(0,1): real and imaginary parts N(0, 1/2)
    auto complex_normal = [&] {
        const auto [re, im] = sample_normal_pair(rng);
        return std::complex<double>(sd * re, sd * im);
    };

    std::vector<ZfGainSample> out;
    out.reserve(static_cast<std::size_t>(samples));
    Matrix channel(u_c, t_c);  // row j is h_j^H
    while (static_cast<int>(out.size()) < samples) {
        for (int j = 0; j < u_c; ++j)
            for (int t = 0; t < t_c; ++t) channel(j, t) = complex_normal();
        const Matrix gram = channel * channel.adjoint();
        const Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
        const auto& ev = eig.eigenvalues();
        if (!(ev.minCoeff() > 1e-12 * ev.maxCoeff())) continue;

        Matrix precoder = channel.adjoint() * gram.inverse();
        for (int j = 0; j < u_c; ++j) precoder.col(j).normalize();

        Vector f(t_c);
        for (int t = 0; t < t_c; ++t) f(t) = complex_normal();
        const std::complex<double> useful = (channel.row(0) * precoder.col(0))(0, 0);
        const double cross = (f.adjoint() * precoder).squaredNorm();
        out.push_back({std::norm(useful), cross});
    }
    return out;
}

}  // namespace mimod2d
