#include "mimod2d/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mimod2d/errors.hpp"

namespace mimod2d {

double sinc_norm(double z)
{
    if (!(z > 0.0 && z < 1.0)) throw DomainError("sinc_norm: argument must lie in (0, 1)");
    const double x = std::numbers::pi * z;
    return std::sin(x) / x;
}

double log_beta(double a, double b)
{
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace {

// Modified Lentz evaluation of the incomplete Beta continued fraction.
// Converges quickly for y < (a + 1) / (a + b + 2).
double beta_continued_fraction(double y, double a, double b)
{
    constexpr int max_iter = 10000;
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * y / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * y / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * y / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw NumericalFailure("incomplete beta continued fraction did not converge");
}

// y^a (1-y)^b / (a B(a,b)) * CF, valid on the fast-converging side.
double regularized_lower_side(double y, double a, double b)
{
    const double log_front = a * std::log(y) + b * std::log1p(-y) - log_beta(a, b);
    return std::exp(log_front) * beta_continued_fraction(y, a, b) / a;
}

void check_domain(double y, double a, double b)
{
    if (!(y >= 0.0 && y <= 1.0)) throw DomainError("incomplete beta: y must lie in [0, 1]");
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("incomplete beta: a and b must be positive");
}

}  // namespace

double regularized_incomplete_beta(double y, double a, double b)
{
    check_domain(y, a, b);
    if (y == 0.0) return 0.0;
    if (y == 1.0) return 1.0;
    if (y < (a + 1.0) / (a + b + 2.0)) return regularized_lower_side(y, a, b);
    return 1.0 - regularized_lower_side(1.0 - y, b, a);
}

double incomplete_beta(double y, double a, double b)
{
    check_domain(y, a, b);
    if (y == 0.0) return 0.0;
    const double complete = std::exp(log_beta(a, b));
    if (y == 1.0) return complete;
    if (y < (a + 1.0) / (a + b + 2.0)) {
        // Direct form avoids the complete-Beta round trip.
        const double log_front = a * std::log(y) + b * std::log1p(-y);
        return std::exp(log_front) * beta_continued_fraction(y, a, b) / a;
    }
    // Complement side: the (1-t)^(b-1) endpoint singularity at t = 1 is
    // handled by expanding around 1 - y instead.
    const double log_front = b * std::log1p(-y) + a * std::log(y);
    const double upper = std::exp(log_front) * beta_continued_fraction(1.0 - y, b, a) / b;
    return complete - upper;
}

void SignedLogSum::Part::add(double log_term)
{
    if (log_term == -std::numeric_limits<double>::infinity()) return;
    if (log_term <= max) {
        scaled += std::exp(log_term - max);
    } else {
        scaled = scaled * std::exp(max - log_term) + 1.0;
        max = log_term;
    }
}

double SignedLogSum::Part::log_total() const
{
    if (scaled == 0.0) return -std::numeric_limits<double>::infinity();
    return max + std::log(scaled);
}

void SignedLogSum::add(double log_magnitude, int sign)
{
    if (sign > 0)
        pos_.add(log_magnitude);
    else if (sign < 0)
        neg_.add(log_magnitude);
}

int SignedLogSum::sign() const
{
    const double lp = pos_.log_total();
    const double ln = neg_.log_total();
    if (lp > ln) return 1;
    if (ln > lp) return -1;
    return 0;
}

double SignedLogSum::log_magnitude() const
{
    const double lp = pos_.log_total();
    const double ln = neg_.log_total();
    const double hi = std::max(lp, ln);
    const double lo = std::min(lp, ln);
    if (hi == -std::numeric_limits<double>::infinity()) return hi;
    if (lo == -std::numeric_limits<double>::infinity()) return hi;
    const double diff = -std::expm1(lo - hi);
    if (diff <= 0.0) return -std::numeric_limits<double>::infinity();
    return hi + std::log(diff);
}

double SignedLogSum::value() const
{
    const int s = sign();
    return s == 0 ? 0.0 : s * std::exp(log_magnitude());
}

}  // namespace mimod2d
