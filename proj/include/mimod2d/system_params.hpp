#pragma once

#include <string>
#include <vector>

namespace mimod2d {

/// How tabulated pathloss coefficients in dB map to the linear factor A in
/// A * d^-alpha.
enum class PathlossConvention {
    loss,  // A = 10^(-A_dB/10)
    gain,  // A = 10^(+A_dB/10)
};

double pathloss_coefficient(double a_db, PathlossConvention convention);

/// Physical and system constants of the single-cell downlink with a D2D
/// underlay. All values are linear SI.
struct SystemParams {
    double p_c = 0.0;              // BS total transmit power [W]
    double p_d = 0.0;              // D2D transmit power [W]
    int u_c = 0;                   // cellular users
    int t_c = 0;                   // BS antennas
    double lambda_d = 0.0;         // D2D transmitter density [m^-2]
    double cell_radius = 0.0;      // [m]
    double bandwidth = 0.0;        // [Hz]
    double noise_power = 0.0;      // thermal noise N0 [W]
    double noise_figure_db = 0.0;  // receiver noise figure [dB]
    bool apply_noise_figure = true;
    double d2d_distance = 0.0;     // fixed D2D Tx-Rx separation [m]
    double alpha_c = 0.0;          // BS<->device pathloss exponent
    double alpha_d = 0.0;          // device<->device pathloss exponent
    double a_c = 0.0;              // BS<->device pathloss coefficient (linear)
    double a_d = 0.0;              // device<->device pathloss coefficient (linear)

    /// Per-user received-power scale A_c * P_c / U_c.
    double zeta() const { return a_c * p_c / u_c; }

    /// Noise power seen by a receiver, including the noise figure when enabled.
    double effective_noise() const;

    /// Expected number of D2D transmitters inside the cell, pi R^2 lambda_d.
    double mean_d2d_count() const;

    /// Defaults of the reference scenario with the given antenna count and
    /// D2D density.
    static SystemParams reference(int t_c = 4, double lambda_d = 1e-6,
                                  PathlossConvention convention = PathlossConvention::gain);
};

/// Amplifier efficiency and circuit-power constants of the consumption model.
struct PowerModel {
    double eta = 0.3;  // amplifier efficiency in (0, 1]
    double c0 = 5.0;   // load-independent BS power [W]
    double c1 = 0.5;   // per BS antenna [W]
    double c2 = 0.1;   // per active handset [W]
};

struct Violation {
    std::string field;
    std::string rule;
};

/// One entry per broken invariant; empty when params are usable.
std::vector<Violation> validate(const SystemParams& params);
std::vector<Violation> validate(const PowerModel& model);

/// "field: rule; field: rule" rendering of a violation list.
std::string describe(const std::vector<Violation>& violations);

/// Throws ConfigError listing every violation, if any.
void require_valid(const SystemParams& params);

}  // namespace mimod2d
