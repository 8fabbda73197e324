#pragma once

#include <vector>

namespace mimod2d {

/// A real number held as log|x| and sign, for quantities that leave the
/// double range (s^k/k! at k ~ 100, s ~ 1e9).
struct LogValue {
    double log_magnitude;
    int sign;  // -1, 0, +1
    double value() const;
};

/// Coefficients a[n][k] with
///   d^n/ds^n exp(-c s^b) = exp(-c s^b) * sum_{k=1..n} a[n][k] s^(k b - n)
/// built from a[1][1] = -c b and
///   a[n+1][k] = (k b - n) a[n][k] - c b a[n][k-1].
/// a[0][0] = 1 covers the zeroth derivative. Generic over the scalar so the
/// recurrence can be checked in exact arithmetic.
template <class T>
std::vector<std::vector<T>> derivative_coefficients(const T& c, const T& b, int n_max)
{
    std::vector<std::vector<T>> a(n_max + 1);
    for (int n = 0; n <= n_max; ++n) a[n].assign(n + 1, T(0));
    a[0][0] = T(1);
    const T cb = c * b;
    for (int n = 0; n < n_max; ++n) {
        for (int k = 1; k <= n + 1; ++k) {
            T next(0);
            if (k <= n && k >= 1) next = next + (T(k) * b - T(n)) * a[n][k];
            if (k - 1 >= 1 || (n == 0 && k == 1)) next = next - cb * a[n][k - 1];
            a[n + 1][k] = next;
        }
    }
    return a;
}

/// Log-domain derivative table for exp(-c s^b), c >= 0, 0 < b < 1.
/// Coefficients are stored as a[n][k] = c^k p[n][k]; p depends only on b and
/// is kept as (log|p|, sign) so orders near 100 stay representable.
class DerivativeTable {
public:
    DerivativeTable(double c, double b, int n_max);

    double c() const { return c_; }
    double b() const { return b_; }
    int max_order() const { return n_max_; }

    /// a[n][k] as a LogValue (zero outside 1 <= k <= n, except a[0][0] = 1).
    LogValue coefficient(int n, int k) const;

    /// d^i/ds^i exp(-c s^b) for i = 0..max_order(), in log form.
    std::vector<LogValue> log_derivatives(double s) const;

    /// Same, as plain doubles.
    std::vector<double> derivatives(double s) const;

private:
    double c_;
    double b_;
    int n_max_;
    std::vector<std::vector<LogValue>> p_;  // p[n][k], c factored out
};

/// d^i/ds^i exp(-c s^b) for i = 0..n_max. Throws DomainError for c < 0,
/// b outside (0,1), s < 0, or s == 0 with n_max >= 1.
std::vector<double> exp_power_derivatives(double c, double b, double s, int n_max);

}  // namespace mimod2d
