#include "mimod2d/derivatives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mimod2d/errors.hpp"
#include "mimod2d/special_functions.hpp"

namespace mimod2d {
namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// x * y where x is a plain factor
LogValue scale(const LogValue& v, double factor)
{
    if (v.sign == 0 || factor == 0.0) return {neg_inf, 0};
    return {v.log_magnitude + std::log(std::fabs(factor)), v.sign * sign_of(factor)};
}

LogValue add(const LogValue& x, const LogValue& y)
{
    SignedLogSum sum;
    sum.add(x.log_magnitude, x.sign);
    sum.add(y.log_magnitude, y.sign);
    return {sum.log_magnitude(), sum.sign()};
}

}  // namespace

double LogValue::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

DerivativeTable::DerivativeTable(double c, double b, int n_max) : c_(c), b_(b), n_max_(n_max)
{
    if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("DerivativeTable: c must be >= 0");
    if (!(b > 0.0 && b < 1.0)) throw DomainError("DerivativeTable: b must lie in (0, 1)");
    if (n_max < 0) throw DomainError("DerivativeTable: order must be >= 0");

    // Same recurrence as derivative_coefficients with c = 1:
    // p[n+1][k] = (k b - n) p[n][k] - b p[n][k-1].
    p_.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) p_[n].assign(n + 1, LogValue{neg_inf, 0});
    p_[0][0] = {0.0, 1};
    for (int n = 0; n < n_max; ++n) {
        for (int k = 1; k <= n + 1; ++k) {
            LogValue next{neg_inf, 0};
            if (k <= n) next = scale(p_[n][k], k * b - n);
            if (k - 1 >= 1 || n == 0) next = add(next, scale(p_[n][k - 1], -b));
            p_[n + 1][k] = next;
        }
    }
}

LogValue DerivativeTable::coefficient(int n, int k) const
{
    if (n < 0 || n > n_max_ || k < 0 || k > n) return {neg_inf, 0};
    const LogValue& p = p_[n][k];
    if (p.sign == 0) return p;
    if (k == 0) return p;
    if (c_ == 0.0) return {neg_inf, 0};
    return {p.log_magnitude + k * std::log(c_), p.sign};
}

std::vector<LogValue> DerivativeTable::log_derivatives(double s) const
{
    if (!(s >= 0.0)) throw DomainError("derivative evaluation: s must be >= 0");
    std::vector<LogValue> out(n_max_ + 1, LogValue{neg_inf, 0});
    out[0] = {-c_ * std::pow(s, b_), 1};
    if (c_ == 0.0) return out;
    if (n_max_ >= 1 && s == 0.0) throw DomainError("derivative evaluation: s = 0 is singular");

    const double log_s = std::log(s);
    const double log_u = std::log(c_) + b_ * log_s;
    const double exponent = out[0].log_magnitude;
    std::vector<double> terms(n_max_ + 1);
    for (int n = 1; n <= n_max_; ++n) {
        // log|a[n][k] s^(kb-n)| = log|p[n][k]| + k log(c s^b) - n log s
        double peak = neg_inf;
        for (int k = 1; k <= n; ++k) {
            terms[k] = p_[n][k].log_magnitude + k * log_u;
            peak = std::max(peak, terms[k]);
        }
        double pos = 0.0;
        double neg = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double rel = terms[k] - peak;
            if (rel < -60.0 || p_[n][k].sign == 0) continue;
            (p_[n][k].sign > 0 ? pos : neg) += std::exp(rel);
        }
        const double net = pos - neg;
        if (net == 0.0 || std::fabs(net) < 1e-14 * std::max(pos, neg)) {
            // Exact or numerical cancellation: fall back to the careful sum.
            SignedLogSum sum;
            for (int k = 1; k <= n; ++k) sum.add(terms[k], p_[n][k].sign);
            out[n] = {exponent + sum.log_magnitude() - n * log_s, sum.sign()};
            continue;
        }
        out[n] = {exponent + peak + std::log(std::fabs(net)) - n * log_s, net > 0.0 ? 1 : -1};
    }
    return out;
}

std::vector<double> DerivativeTable::derivatives(double s) const
{
    const auto logs = log_derivatives(s);
    std::vector<double> out(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) out[i] = logs[i].value();
    return out;
}

std::vector<double> exp_power_derivatives(double c, double b, double s, int n_max)
{
    if (!(s >= 0.0)) throw DomainError("exp_power_derivatives: s must be >= 0");
    if (s == 0.0 && n_max >= 1) throw DomainError("exp_power_derivatives: s = 0 is singular");
    return DerivativeTable(c, b, n_max).derivatives(s);
}

}  // namespace mimod2d
