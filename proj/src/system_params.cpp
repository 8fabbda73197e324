#include "mimod2d/system_params.hpp"

#include <cmath>
#include <numbers>

#include "mimod2d/errors.hpp"
#include "mimod2d/units.hpp"

namespace mimod2d {

double pathloss_coefficient(double a_db, PathlossConvention convention)
{
    return convention == PathlossConvention::loss ? db_to_linear(-a_db) : db_to_linear(a_db);
}

double SystemParams::effective_noise() const
{
    return apply_noise_figure ? noise_power * db_to_linear(noise_figure_db) : noise_power;
}

double SystemParams::mean_d2d_count() const
{
    return std::numbers::pi * cell_radius * cell_radius * lambda_d;
}

SystemParams SystemParams::reference(int t_c, double lambda_d, PathlossConvention convention)
{
    SystemParams p;
    p.p_c = dbm_to_watt(41.0);
    p.p_d = dbm_to_watt(13.0);
    p.u_c = 4;
    p.t_c = t_c;
    p.lambda_d = lambda_d;
    p.cell_radius = 500.0;
    p.bandwidth = 20e6;
    p.noise_power = dbm_to_watt(-131.0);
    p.noise_figure_db = 5.0;
    p.apply_noise_figure = true;
    p.d2d_distance = 50.0;
    p.alpha_c = 3.67;
    p.alpha_d = 3.0;
    p.a_c = pathloss_coefficient(30.55, convention);
    p.a_d = pathloss_coefficient(38.84, convention);
    return p;
}

namespace {

void check(std::vector<Violation>& out, bool ok, const char* field, const char* rule)
{
    if (!ok) out.push_back({field, rule});
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::vector<Violation> validate(const SystemParams& p)
{
    std::vector<Violation> v;
    check(v, p.u_c >= 1, "u_c", "u_c ≥ 1");
    check(v, p.u_c <= p.t_c, "u_c", "u_c ≤ t_c");
    check(v, p.alpha_c > 2.0 && std::isfinite(p.alpha_c), "alpha_c", "alpha_c > 2");
    check(v, p.alpha_d > 2.0 && std::isfinite(p.alpha_d), "alpha_d", "alpha_d > 2");
    check(v, positive(p.p_c), "p_c", "p_c > 0");
    check(v, positive(p.p_d), "p_d", "p_d > 0");
    check(v, positive(p.cell_radius), "cell_radius", "cell_radius > 0");
    check(v, positive(p.bandwidth), "bandwidth", "bandwidth > 0");
    check(v, positive(p.noise_power), "noise_power", "noise_power > 0");
    check(v, std::isfinite(p.noise_figure_db), "noise_figure_db", "noise_figure_db finite");
    check(v, positive(p.d2d_distance), "d2d_distance", "d2d_distance > 0");
    check(v, positive(p.a_c), "a_c", "a_c > 0");
    check(v, positive(p.a_d), "a_d", "a_d > 0");
    check(v, std::isfinite(p.lambda_d) && p.lambda_d >= 0.0, "lambda_d", "lambda_d ≥ 0");
    check(v, p.d2d_distance < p.cell_radius, "d2d_distance", "d2d_distance < cell_radius");
    return v;
}

std::vector<Violation> validate(const PowerModel& m)
{
    std::vector<Violation> v;
    check(v, m.eta > 0.0 && m.eta <= 1.0, "eta", "0 < eta ≤ 1");
    check(v, m.c0 >= 0.0, "c0", "c0 ≥ 0");
    check(v, m.c1 >= 0.0, "c1", "c1 ≥ 0");
    check(v, m.c2 >= 0.0, "c2", "c2 ≥ 0");
    return v;
}

std::string describe(const std::vector<Violation>& violations)
{
    std::string out;
    for (const auto& item : violations) {
        if (!out.empty()) out += "; ";
        out += item.field + ": " + item.rule;
    }
    return out;
}

void require_valid(const SystemParams& params)
{
    const auto violations = validate(params);
    if (!violations.empty()) throw ConfigError("invalid parameters: " + describe(violations));
}

}  // namespace mimod2d
