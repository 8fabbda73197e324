#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mimod2d/coverage.hpp"
#include "mimod2d/errors.hpp"
#include "mimod2d/metrics.hpp"
#include "mimod2d/montecarlo.hpp"
#include "mimod2d/units.hpp"

using namespace mimod2d;

namespace {

double brute_force(const CoverageFunction& f, double bw, int points)
{
    double best = 0.0;
    for (int i = 0; i < points; ++i) {
        const double beta = db_to_linear(-30.0 + 70.0 * i / (points - 1));
        best = std::max(best, bw * std::log2(1.0 + beta) * f(beta));
    }
    return best;
}

}  // namespace

TEST_CASE("average_rate on a step coverage")
{
    for (double beta0 : {0.5, 3.0, 200.0}) {
        const auto r = average_rate([=](double b) { return b <= beta0 ? 1.0 : 0.0; }, 1e6);
        CHECK(r.beta_star == doctest::Approx(beta0).epsilon(1e-3));
        CHECK(r.rate == doctest::Approx(1e6 * std::log2(1.0 + beta0)).epsilon(1e-3));
        CHECK(r.rate <= 1e6 * std::log2(1.0 + beta0));
        CHECK_FALSE(r.boundary_warning);
    }
}

TEST_CASE("average_rate edge cases")
{
    const auto zero = average_rate([](double) { return 0.0; }, 1e6);
    CHECK(zero.rate == 0.0);

    const auto one = average_rate([](double) { return 1.0; }, 1e6);
    CHECK(one.boundary_warning);
    CHECK(one.rate <= 1e6 * std::log2(1.0 + db_to_linear(40.0)) * (1.0 + 1e-12));

    CHECK_THROWS_AS(average_rate([](double) { return 1.5; }, 1e6), std::invalid_argument);
    CHECK_THROWS_AS(average_rate([](double) { return -0.1; }, 1e6), std::invalid_argument);
}

TEST_CASE("average_rate matches a dense grid on the analytic D2D curve")
{
    const auto p = SystemParams::reference(4, 1e-5);
    auto f = [&](double b) { return d2d_coverage(p, b); };
    const auto r = average_rate(f, p.bandwidth);
    CHECK(r.rate >= brute_force(f, p.bandwidth, 2000) * (1.0 - 1e-3));
    CHECK(r.rate == doctest::Approx(p.bandwidth * std::log2(1.0 + r.beta_star) * r.coverage_at_star).epsilon(1e-12));
    CHECK(r.coverage_at_star == doctest::Approx(f(r.beta_star)).epsilon(1e-12));
    CHECK(r.rate <= p.bandwidth * std::log2(1.0 + r.beta_star));
    CHECK_FALSE(r.boundary_warning);
}

TEST_CASE("average_rate from tabulated curves")
{
    CoverageCurve c;
    c.beta = {1.0, 3.0, 7.0};
    c.probability = {0.9, 0.5, 0.1};
    const auto r = average_rate(c, 1.0);
    CHECK(r.beta_star == 3.0);
    CHECK(r.rate == doctest::Approx(1.0));
}

TEST_CASE("analytic and Monte Carlo D2D rates agree within 2%")
{
    const auto p = SystemParams::reference(4, 1e-6);
    SimConfig sim;
    sim.trials = 100000;
    const EmpiricalCoverage curve(simulate_d2d_sinr(p, sim));
    const auto analytic = average_rate([&](double b) { return d2d_coverage(p, b); }, p.bandwidth);
    const auto empirical = average_rate([&](double b) { return curve(b); }, p.bandwidth);
    CHECK(empirical.rate == doctest::Approx(analytic.rate).epsilon(0.02));
}

TEST_CASE("asr")
{
    const auto p = SystemParams::reference(4, 1e-6);
    CHECK(asr(p, 0.0, 1e6) == doctest::Approx(7.854e5).epsilon(1e-4));
    CHECK(asr(p, 0.0, 0.0) == 0.0);
    auto none = p;
    none.lambda_d = 0.0;
    CHECK(asr(none, 3e6, 5e6) == 4.0 * 3e6);
    // Linear in lambda with frozen rates.
    auto q = p;
    const double base = asr(p, 2e6, 1e6);
    q.lambda_d = 3e-6;
    CHECK(asr(q, 2e6, 1e6) - 8e6 == doctest::Approx(3.0 * (base - 8e6)));
}

TEST_CASE("total_power")
{
    auto p = SystemParams::reference(4, 0.0);
    const PowerModel m;
    CHECK(std::fabs(total_power(p, m) - 49.365) <= 0.01);
    CHECK(total_power(p, m) == doctest::Approx(dbm_to_watt(41.0) / 0.3 + 5.0 + 2.0 + 0.4));

    auto q = p;
    q.t_c = 5;
    CHECK(total_power(q, m) - total_power(p, m) == doctest::Approx(m.c1).epsilon(1e-12));

    PowerModel zero{1.0, 0.0, 0.0, 0.0};
    auto silent = p;
    silent.p_c = 1e-300;
    CHECK(total_power(silent, zero) == doctest::Approx(0.0));

    // Affine in lambda with slope pi R^2 (P_d/eta + 2 C2).
    auto a = p;
    a.lambda_d = 1e-6;
    auto b = p;
    b.lambda_d = 3e-6;
    const double slope = std::numbers::pi * 500.0 * 500.0 * (p.p_d / m.eta + 2.0 * m.c2);
    CHECK((total_power(b, m) - total_power(a, m)) / 2e-6 == doctest::Approx(slope).epsilon(1e-9));
}

TEST_CASE("energy_efficiency")
{
    CHECK(energy_efficiency(0.0, 10.0) == 0.0);
    CHECK(energy_efficiency(49.365e6, 49.365) == doctest::Approx(1e6));
    CHECK(energy_efficiency(2.0 * 3e6, 2.0 * 7.0) == energy_efficiency(3e6, 7.0));
    CHECK_THROWS_AS(energy_efficiency(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(energy_efficiency(1.0, -1.0), DomainError);
}

TEST_CASE("network_metrics identities")
{
    const auto p = SystemParams::reference(16, 1e-5);
    const PowerModel m;
    const auto n = network_metrics(p, m, 2e6, 5e6);
    CHECK(n.asr == p.u_c * n.rate_cue + n.mean_d2d_count * n.rate_d2d);
    CHECK(n.ee == n.asr / n.total_power);
    CHECK(n.total_power == total_power(p, m));
    CHECK(n.mean_d2d_count == doctest::Approx(std::numbers::pi * 500.0 * 500.0 * 1e-5));
}

TEST_CASE("user type names")
{
    CHECK(std::string(to_string(UserType::d2d)) == "d2d");
    CHECK(std::string(to_string(UserType::cellular)) == "cellular");
}
