#pragma once

#include <cmath>
#include <limits>

namespace mimod2d {

/// sin(pi z) / (pi z) restricted to z in (0, 1), the only range the
/// PPP Laplace transform needs (z = 2/alpha with alpha > 2).
double sinc_norm(double z);

/// log B(a, b) via log-gamma.
double log_beta(double a, double b);

/// Regularized incomplete Beta I_y(a, b).
double regularized_incomplete_beta(double y, double a, double b);

/// Lower, unregularized incomplete Beta: integral_0^y t^(a-1) (1-t)^(b-1) dt.
/// Throws DomainError unless y in [0,1], a > 0, b > 0.
double incomplete_beta(double y, double a, double b);

/// Accumulates a sum of signed terms given as (log|term|, sign) without
/// leaving the log domain. Positive and negative parts are kept apart so the
/// final subtraction happens once; the largest term seen is retained so
/// callers can detect cancellation.
class SignedLogSum {
public:
    void add(double log_magnitude, int sign);

    /// log of the largest |term| added so far; -inf when empty.
    double max_log_term() const { return std::max(pos_.max, neg_.max); }

    /// Sign of the total (-1, 0 or +1).
    int sign() const;

    /// log|total|; -inf when the total is zero.
    double log_magnitude() const;

    /// Total as a double (may under/overflow).
    double value() const;

private:
    struct Part {
        double max = -std::numeric_limits<double>::infinity();
        double scaled = 0.0;  // sum of exp(term - max)
        void add(double log_term);
        double log_total() const;
    };
    Part pos_;
    Part neg_;
};

}  // namespace mimod2d
