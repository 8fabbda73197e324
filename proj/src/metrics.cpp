#include "mimod2d/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mimod2d/errors.hpp"

namespace mimod2d {

const char* to_string(UserType type) { return type == UserType::d2d ? "d2d" : "cellular"; }

namespace {

class Objective {
public:
    Objective(const CoverageFunction& coverage, double bandwidth)
        : coverage_(coverage), bandwidth_(bandwidth)
    {
    }

    // Returns {objective, coverage}
    std::pair<double, double> operator()(double beta)
    {
        ++evaluations;
        const double p = coverage_(beta);
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("average_rate: coverage " + std::to_string(p) +
                                        " outside [0, 1] at beta " + std::to_string(beta));
        return {bandwidth_ * std::log2(1.0 + beta) * p, p};
    }

    int evaluations = 0;

private:
    const CoverageFunction& coverage_;
    double bandwidth_;
};

}  // namespace

RateResult average_rate(const CoverageFunction& coverage, double bandwidth, const RateSearch& search)
{
    if (!(bandwidth > 0.0)) throw std::invalid_argument("average_rate: bandwidth must be > 0");
    if (search.grid_points < 2 || !(search.beta_max_db > search.beta_min_db))
        throw std::invalid_argument("average_rate: empty search window");

    Objective objective(coverage, bandwidth);
    const double lo = search.beta_min_db * std::log(10.0) / 10.0;
    const double hi = search.beta_max_db * std::log(10.0) / 10.0;
    const int n = search.grid_points;
    const double step = (hi - lo) / (n - 1);

    std::vector<double> values(n);
    std::vector<double> probs(n);
    int best = 0;
    for (int i = 0; i < n; ++i) {
        std::tie(values[i], probs[i]) = objective(std::exp(lo + i * step));
        if (values[i] > values[best]) best = i;
    }

    RateResult result;
    result.beta_star = std::exp(lo + best * step);
    result.rate = values[best];
    result.coverage_at_star = probs[best];
    result.boundary_warning = best == n - 1 && values[n - 1] > values[n - 2];
    if (values[best] <= 0.0) {
        result.evaluations = objective.evaluations;
        return result;
    }

    // Golden-section on log(beta) over the two cells around the grid maximum.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo + std::max(best - 1, 0) * step;
    double b = lo + std::min(best + 1, n - 1) * step;
    const double log_tol = std::log1p(search.rel_tol);
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    auto [f1, p1] = objective(std::exp(x1));
    auto [f2, p2] = objective(std::exp(x2));
    auto consider = [&](double x, double f, double p) {
        if (f > result.rate) {
            result.rate = f;
            result.beta_star = std::exp(x);
            result.coverage_at_star = p;
        }
    };
    consider(x1, f1, p1);
    consider(x2, f2, p2);
    while (b - a > log_tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            std::tie(f1, p1) = objective(std::exp(x1));
            consider(x1, f1, p1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            std::tie(f2, p2) = objective(std::exp(x2));
            consider(x2, f2, p2);
        }
    }
    result.evaluations = objective.evaluations;
    return result;
}

RateResult average_rate(const CoverageCurve& curve, double bandwidth)
{
    if (!(bandwidth > 0.0)) throw std::invalid_argument("average_rate: bandwidth must be > 0");
    if (curve.beta.empty() || curve.beta.size() != curve.probability.size())
        throw std::invalid_argument("average_rate: malformed coverage curve");
    RateResult result;
    result.beta_star = curve.beta.front();
    for (std::size_t i = 0; i < curve.beta.size(); ++i) {
        const double p = curve.probability[i];
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("average_rate: coverage outside [0, 1]");
        const double value = bandwidth * std::log2(1.0 + curve.beta[i]) * p;
        if (value > result.rate || i == 0) {
            result.rate = value;
            result.beta_star = curve.beta[i];
            result.coverage_at_star = p;
        }
    }
    const std::size_t n = curve.beta.size();
    result.boundary_warning =
        n >= 2 && result.beta_star == curve.beta.back() &&
        bandwidth * std::log2(1.0 + curve.beta[n - 2]) * curve.probability[n - 2] < result.rate;
    result.evaluations = static_cast<int>(n);
    return result;
}

double asr(const SystemParams& params, double rate_cue, double rate_d2d)
{
    return params.u_c * rate_cue + params.mean_d2d_count() * rate_d2d;
}

double total_power(const SystemParams& params, const PowerModel& model)
{
    const double d2d_count = params.mean_d2d_count();
    return (params.p_c + d2d_count * params.p_d) / model.eta + model.c0 + params.t_c * model.c1 +
           (params.u_c + 2.0 * d2d_count) * model.c2;
}

double energy_efficiency(double asr_bps, double power_w)
{
    if (!(power_w > 0.0)) throw DomainError("energy_efficiency: power must be > 0");
    return asr_bps / power_w;
}

NetworkMetrics network_metrics(const SystemParams& params, const PowerModel& model,
                               double rate_cue, double rate_d2d)
{
    NetworkMetrics m;
    m.rate_cue = rate_cue;
    m.rate_d2d = rate_d2d;
    m.mean_d2d_count = params.mean_d2d_count();
    m.asr = asr(params, rate_cue, rate_d2d);
    m.total_power = total_power(params, model);
    m.ee = energy_efficiency(m.asr, m.total_power);
    return m;
}

}  // namespace mimod2d
