#pragma once

#include <memory>

#include "mimod2d/system_params.hpp"

namespace mimod2d {

/// Intermediate quantities of the D2D closed form at threshold beta_d.
struct D2dClosedFormTerms {
    double x;      // R00^alpha_d / P_d
    double kappa;  // beta_d x (A_c/A_d) (P_c/U_c)
    double y;      // 1 / (kappa R^-alpha_c + 1)

    static D2dClosedFormTerms at(const SystemParams& params, double beta_d);
};

/// Laplace transform of the aggregate Rayleigh-faded interference from a
/// planar PPP of density lambda_d, exp(-pi lambda_d (s p_d)^(2/alpha_d) / sinc(2/alpha_d)).
double laplace_ppp_interference(double s, double lambda_d, double alpha_d, double p_d);

/// Laplace transform at s of the BS interference seen by the typical D2D
/// receiver, evaluated with the incomplete-Beta closed form. The BS distance
/// is uniform over the cell and the ZF cross gain is Gamma(U_c, 1).
double d2d_bs_laplace_closed_form(const SystemParams& params, double s);

/// The same transform by direct quadrature of
///   integral_0^R (1 + kappa(s) r^-alpha_c)^-U_c 2r/R^2 dr
/// with relative tolerance 1e-9. Independent check on the closed form.
double d2d_bs_laplace_quadrature(const SystemParams& params, double s);

/// Three independent factors of the D2D coverage probability.
struct D2dCoverageFactors {
    double bs_interference;   // Laplace transform of BS interference
    double d2d_interference;  // PPP Laplace transform
    double noise;             // exp(-beta x N/A_d)
    double product() const { return bs_interference * d2d_interference * noise; }
};

D2dCoverageFactors d2d_coverage_factors(const SystemParams& params, double beta_d);

/// Coverage probability of the typical D2D receiver, Pr{SINR_d >= beta_d}.
/// Throws DomainError for beta_d < 0, NumericalFailure if the closed form
/// leaves [0, 1] by more than 1e-9.
double d2d_coverage(const SystemParams& params, double beta_d);

/// Coverage probability of the typical cellular user. The inner Gamma-tail
/// series with PPP-transform derivatives is summed in the log domain; the
/// expectation over the user's distance (density 2d/R^2 on [0, R]) uses
/// adaptive quadrature with relative tolerance 1e-7. Throws NumericalFailure
/// when the inner sum loses all significant digits.
double cue_coverage(const SystemParams& params, double beta_c);

/// Inner conditional coverage of a cellular user at Laplace argument s,
/// i.e. the bracketed expression before averaging over distance.
double cue_conditional_coverage(const SystemParams& params, double s);

namespace detail {
class CueSeries;
}

/// Cellular coverage with the s-independent series setup done once, for
/// repeated evaluation at many thresholds. Copies share the setup; calls are
/// safe from several threads.
class CueCoverage {
public:
    explicit CueCoverage(const SystemParams& params);

    double operator()(double beta_c) const;
    double conditional(double s) const;

private:
    SystemParams params_;
    std::shared_ptr<const detail::CueSeries> series_;
};

}  // namespace mimod2d
