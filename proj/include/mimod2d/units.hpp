#pragma once

namespace mimod2d {

// Conversions at the configuration boundary. Everything past this point is
// linear SI (watts, meters, hertz).

/// 10^(x/10). Throws std::invalid_argument on non-finite input.
double db_to_linear(double x_db);

/// 10^((x-30)/10).
double dbm_to_watt(double x_dbm);

/// coeff * distance^-exponent. Throws DomainError unless distance > 0,
/// coeff > 0 and exponent > 2.
double pathloss_gain(double distance, double coeff, double exponent);

}  // namespace mimod2d
