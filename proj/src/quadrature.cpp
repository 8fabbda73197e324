#include "mimod2d/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "mimod2d/errors.hpp"

namespace mimod2d {
namespace {

// QUADPACK qk21 abscissae and weights. Odd indices are the 10-point Gauss
// nodes.
constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_21(const std::function<double(double)>& f, double a, double b)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double result_k = fc * wgk[10];
    double result_g = 0.0;
    double result_abs = std::fabs(result_k);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * xgk[j];
        f1[j] = f(centre - dx);
        f2[j] = f(centre + dx);
        const double pair = f1[j] + f2[j];
        result_k += wgk[j] * pair;
        result_abs += wgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
        if (j % 2 == 1) result_g += wg[j / 2] * pair;
    }
    const double mean = 0.5 * result_k;
    double result_asc = wgk[10] * std::fabs(fc - mean);
    for (int j = 0; j < 10; ++j)
        result_asc += wgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));

    const double value = result_k * half;
    result_abs *= std::fabs(half);
    result_asc *= std::fabs(half);
    double error = std::fabs((result_k - result_g) * half);
    if (result_asc != 0.0 && error != 0.0)
        error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (result_abs > std::numeric_limits<double>::min() / (50.0 * eps))
        error = std::max(50.0 * eps * result_abs, error);
    return {a, b, value, error};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options)
{
    QuadratureResult out;
    if (a == b) return out;

    std::priority_queue<Panel> panels;
    Panel first = gauss_kronrod_21(f, a, b);
    double total = first.value;
    double error = first.error;
    panels.push(first);
    out.evaluations = 21;

    auto tolerance = [&] { return std::max(options.abs_tol, options.rel_tol * std::fabs(total)); };
    int intervals = 1;
    while (error > tolerance()) {
        if (intervals >= options.max_subdivisions) {
            throw NumericalFailure("integrate: no convergence after " + std::to_string(intervals) +
                                   " subintervals (error estimate " + std::to_string(error) + ")");
        }
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = gauss_kronrod_21(f, worst.a, mid);
        const Panel right = gauss_kronrod_21(f, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++intervals;
        // Recompute from scratch now and then; the running updates drift.
        if (intervals % 64 == 0) {
            auto copy = panels;
            total = 0.0;
            error = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                error += copy.top().error;
                copy.pop();
            }
        }
    }
    total = 0.0;
    error = 0.0;
    while (!panels.empty()) {
        total += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    out.value = total;
    out.abs_error = error;
    out.intervals = intervals;
    return out;
}

}  // namespace mimod2d
