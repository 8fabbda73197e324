#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mimod2d/errors.hpp"
#include "mimod2d/quadrature.hpp"

using namespace mimod2d;

TEST_CASE("polynomials are integrated exactly")
{
    for (int degree = 0; degree <= 31; ++degree) {
        auto f = [degree](double x) { return std::pow(x, degree); };
        const auto r = integrate(f, 0.0, 1.0);
        CHECK(r.value == doctest::Approx(1.0 / (degree + 1)).epsilon(1e-14));
        // The embedded Gauss rule is exact to degree 19, so is the error estimate.
        if (degree <= 19) CHECK(r.intervals == 1);
    }
}

TEST_CASE("known integrals")
{
    auto r = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.evaluations % 21 == 0);

    r = integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0);
    CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));

    // Integrable endpoint singularity forces subdivision.
    r = integrate([](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(r.intervals > 1);

    // Sharp peak.
    r = integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0);
    CHECK(r.value == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-9));

    // Reversed limits.
    r = integrate([](double x) { return x; }, 1.0, 0.0);
    CHECK(r.value == doctest::Approx(-0.5));
}

TEST_CASE("budget exhaustion throws")
{
    QuadratureOptions o;
    o.max_subdivisions = 3;
    o.rel_tol = 1e-14;
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, o),
                    NumericalFailure);
}
