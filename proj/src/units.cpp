#include "mimod2d/units.hpp"

#include <cmath>
#include <stdexcept>

#include "mimod2d/errors.hpp"

namespace mimod2d {

double db_to_linear(double x_db)
{
    if (!std::isfinite(x_db)) throw std::invalid_argument("db_to_linear: non-finite input");
    return std::pow(10.0, x_db / 10.0);
}

double dbm_to_watt(double x_dbm)
{
    if (!std::isfinite(x_dbm)) throw std::invalid_argument("dbm_to_watt: non-finite input");
    return db_to_linear(x_dbm) / 1000.0;
}

double pathloss_gain(double distance, double coeff, double exponent)
{
    if (!(distance > 0.0)) throw DomainError("pathloss_gain: distance must be > 0");
    if (!(coeff > 0.0)) throw DomainError("pathloss_gain: coefficient must be > 0");
    if (!(exponent > 2.0)) throw DomainError("pathloss_gain: exponent must be > 2");
    return coeff * std::pow(distance, -exponent);
}

}  // namespace mimod2d
