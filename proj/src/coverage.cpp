#include "mimod2d/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "mimod2d/derivatives.hpp"
#include "mimod2d/errors.hpp"
#include "mimod2d/quadrature.hpp"
#include "mimod2d/special_functions.hpp"

namespace mimod2d {
namespace {

constexpr double small_kappa_threshold = 1e-8;
constexpr double overshoot_limit = 1e-9;
constexpr double cancellation_ratio = 1e-12;
constexpr double negligible_log_ratio = 40.0;

// (A_c/A_d)(P_c/U_c): kappa(s) = s * bs_scale.
double bs_scale(const SystemParams& p) { return (p.a_c / p.a_d) * (p.p_c / p.u_c); }

double clamp_probability(double value, const char* what)
{
    if (!std::isfinite(value) || value < -overshoot_limit || value > 1.0 + overshoot_limit)
        throw NumericalFailure(std::string(what) + ": result " + std::to_string(value) +
                               " outside [0, 1]");
    return std::clamp(value, 0.0, 1.0);
}

// kappa^(2/alpha)/R^2 * [y^a (1-y)^-c - a B(y; a, 1-c)] with q = kappa R^-alpha,
// a = U + c - 1, c = 2/alpha. For y >= 1/2 the bracket is evaluated as
// printed. Below that both bracket terms agree to leading order in y and the
// difference is taken from the hypergeometric expansion of B instead:
//   y^(U-1) (1-y)^c sum_{n>=1} (c)_n / n! * n/(a+n) * y^n,
// a sum of positive terms.
double bs_factor_from_q(double q, int users, double alpha_c)
{
    const double c = 2.0 / alpha_c;
    const double a = users + c - 1.0;
    const double y = 1.0 / (1.0 + q);
    const double one_minus_y = q * y;
    if (y >= 0.5) {
        const double scale = std::pow(q, c);
        const double head = std::pow(y, a) * std::pow(one_minus_y, -c);
        return scale * head - a * scale * incomplete_beta(y, a, 1.0 - c);
    }
    double pochhammer_ratio = 1.0;  // (c)_n / n!
    double power = 1.0;             // y^n
    double sum = 0.0;
    for (int n = 1; n < 10000; ++n) {
        pochhammer_ratio *= (c + n - 1.0) / n;
        power *= y;
        const double term = pochhammer_ratio * n / (a + n) * power;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return std::pow(y, users - 1.0) * std::pow(one_minus_y, c) * sum;
}

}  // namespace

D2dClosedFormTerms D2dClosedFormTerms::at(const SystemParams& params, double beta_d)
{
    D2dClosedFormTerms t{};
    t.x = std::pow(params.d2d_distance, params.alpha_d) / params.p_d;
    t.kappa = beta_d * t.x * bs_scale(params);
    t.y = 1.0 / (t.kappa * std::pow(params.cell_radius, -params.alpha_c) + 1.0);
    return t;
}

double laplace_ppp_interference(double s, double lambda_d, double alpha_d, double p_d)
{
    if (!(s >= 0.0)) throw DomainError("laplace_ppp_interference: s must be >= 0");
    if (!(lambda_d >= 0.0)) throw DomainError("laplace_ppp_interference: lambda_d must be >= 0");
    if (!(alpha_d > 2.0)) throw DomainError("laplace_ppp_interference: alpha_d must be > 2");
    if (!(p_d > 0.0)) throw DomainError("laplace_ppp_interference: p_d must be > 0");
    const double delta = 2.0 / alpha_d;
    return std::exp(-std::numbers::pi * lambda_d * std::pow(s * p_d, delta) / sinc_norm(delta));
}

double d2d_bs_laplace_closed_form(const SystemParams& params, double s)
{
    if (!(s >= 0.0)) throw DomainError("d2d_bs_laplace_closed_form: s must be >= 0");
    const double q = s * bs_scale(params) * std::pow(params.cell_radius, -params.alpha_c);
    if (q == 0.0) return 1.0;
    return bs_factor_from_q(q, params.u_c, params.alpha_c);
}

double d2d_bs_laplace_quadrature(const SystemParams& params, double s)
{
    if (!(s >= 0.0)) throw DomainError("d2d_bs_laplace_quadrature: s must be >= 0");
    const double kappa = s * bs_scale(params);
    if (kappa == 0.0) return 1.0;
    const double radius = params.cell_radius;
    const double alpha = params.alpha_c;
    const int users = params.u_c;
    // (1 + kappa r^-alpha)^-U written as (r^alpha / (r^alpha + kappa))^U,
    // finite down to r = 0.
    auto integrand = [=](double r) {
        const double ra = std::pow(r, alpha);
        return std::pow(ra / (ra + kappa), users) * 2.0 * r / (radius * radius);
    };
    QuadratureOptions options;
    options.rel_tol = 1e-9;
    options.abs_tol = 1e-300;
    return integrate(integrand, 0.0, radius, options).value;
}

D2dCoverageFactors d2d_coverage_factors(const SystemParams& params, double beta_d)
{
    if (!(beta_d >= 0.0)) throw DomainError("d2d coverage: beta_d must be >= 0");
    const auto terms = D2dClosedFormTerms::at(params, beta_d);
    const double s = beta_d * terms.x;
    const double q = terms.kappa * std::pow(params.cell_radius, -params.alpha_c);

    D2dCoverageFactors f{};
    // Closed form is 0 * inf as kappa -> 0; the quadrature is exact there.
    f.bs_interference = q < small_kappa_threshold ? d2d_bs_laplace_quadrature(params, s)
                                                  : d2d_bs_laplace_closed_form(params, s);
    f.d2d_interference = laplace_ppp_interference(s, params.lambda_d, params.alpha_d, params.p_d);
    f.noise = std::exp(-s * params.effective_noise() / params.a_d);
    return f;
}

double d2d_coverage(const SystemParams& params, double beta_d)
{
    require_valid(params);
    return clamp_probability(d2d_coverage_factors(params, beta_d).product(), "d2d_coverage");
}

namespace detail {

// Everything in the cellular coverage that does not depend on s.
class CueSeries {
public:
    explicit CueSeries(const SystemParams& p)
        : terms_(p.t_c - p.u_c + 1),
          noise_(p.effective_noise() / p.a_d),
          table_(std::numbers::pi * p.lambda_d * std::pow(p.p_d, 2.0 / p.alpha_d) /
                     sinc_norm(2.0 / p.alpha_d),
                 2.0 / p.alpha_d, terms_ - 1)
    {
        log_factorial_.resize(terms_);
        for (int k = 0; k < terms_; ++k) log_factorial_[k] = std::lgamma(k + 1.0);
    }

    // e^(-s n) sum_{k<M} s^k/k! sum_{i<=k} C(k,i) n^(k-i) (-1)^i L^(i)(s)
    double evaluate(double s) const
    {
        if (s == 0.0) return 1.0;
        const auto derivs = table_.log_derivatives(s);
        const double log_s = std::log(s);
        const double log_n = std::log(noise_);
        const double prefactor = -s * noise_;
        // Every (k, i) term is kept as (log magnitude, sign). For fixed i the
        // magnitudes shrink by s n / (k + 1 - i) per step in k, so the k loop
        // stops once the ratio is below one and the term is negligible.
        SignedLogSum total;
        double peak = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < terms_; ++i) {
            const LogValue& d = derivs[i];
            if (d.sign == 0) continue;
            const int sign = (i % 2 == 0 ? 1 : -1) * d.sign;
            const double base = prefactor + d.log_magnitude - log_factorial_[i];
            for (int k = i; k < terms_; ++k) {
                // s^k/k! C(k,i) n^(k-i) = s^k n^(k-i) / (i! (k-i)!)
                const double term = base + k * log_s + (k - i) * log_n - log_factorial_[k - i];
                peak = std::max(peak, term);
                total.add(term, sign);
                if (k + 1 - i > s * noise_ && term < peak - negligible_log_ratio) break;
            }
        }
        const double value = total.value();
        if (std::fabs(value) < cancellation_ratio * std::exp(total.max_log_term()))
            throw NumericalFailure(
                "cue_coverage: inner series lost all significant digits; use Monte Carlo");
        return value;
    }

private:
    int terms_;
    double noise_;
    DerivativeTable table_;
    std::vector<double> log_factorial_;
};

}  // namespace detail

CueCoverage::CueCoverage(const SystemParams& params)
    : params_(params)
{
    require_valid(params_);
    series_ = std::make_shared<const detail::CueSeries>(params_);
}

double CueCoverage::conditional(double s) const
{
    if (!(s >= 0.0)) throw DomainError("cue_conditional_coverage: s must be >= 0");
    return series_->evaluate(s);
}

double CueCoverage::operator()(double beta_c) const
{
    if (!(beta_c >= 0.0)) throw DomainError("cue_coverage: beta_c must be >= 0");
    if (beta_c == 0.0) return 1.0;

    const detail::CueSeries& series = *series_;
    const double scale = beta_c / params_.zeta() * params_.a_d;
    const double radius = params_.cell_radius;
    const double alpha = params_.alpha_c;
    auto integrand = [&](double d) {
        if (d == 0.0) return 0.0;
        return series.evaluate(scale * std::pow(d, alpha)) * 2.0 * d / (radius * radius);
    };
    QuadratureOptions options;
    options.rel_tol = 1e-7;
    options.abs_tol = 1e-15;
    return clamp_probability(integrate(integrand, 0.0, radius, options).value, "cue_coverage");
}

double cue_conditional_coverage(const SystemParams& params, double s)
{
    return CueCoverage(params).conditional(s);
}

double cue_coverage(const SystemParams& params, double beta_c)
{
    return CueCoverage(params)(beta_c);
}

}  // namespace mimod2d
