#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/beta.hpp>

#include "mimod2d/errors.hpp"
#include "mimod2d/special_functions.hpp"

using namespace mimod2d;

TEST_CASE("sinc_norm")
{
    CHECK(std::fabs(sinc_norm(0.5) - 2.0 / std::numbers::pi) < 1e-12);
    CHECK(std::fabs(sinc_norm(0.5) - 0.63662) < 1e-5);
    CHECK(std::fabs(sinc_norm(2.0 / 3.0) - 0.41350) < 1e-5);
    for (int i = 1; i < 1000; ++i) {
        const double z = i / 1000.0;
        CHECK(sinc_norm(z) < 1.0);
        CHECK(sinc_norm(z) > 0.0);
    }
    CHECK_THROWS_AS(sinc_norm(0.0), DomainError);
    CHECK_THROWS_AS(sinc_norm(1.0), DomainError);
    CHECK_THROWS_AS(sinc_norm(-0.2), DomainError);
}

TEST_CASE("incomplete_beta examples")
{
    for (double y : {0.0, 0.1, 0.37, 0.9, 1.0}) CHECK(incomplete_beta(y, 1.0, 1.0) == doctest::Approx(y).epsilon(1e-14));
    CHECK(incomplete_beta(0.5, 2.0, 1.0) == doctest::Approx(0.125).epsilon(1e-14));
    for (auto [a, b] : {std::pair{0.5, 0.5}, {4.5, 0.455}, {2.0, 3.0}, {96.5, 0.45}}) {
        const double complete = std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
        CHECK(incomplete_beta(1.0, a, b) == doctest::Approx(complete).epsilon(1e-12));
    }
    CHECK_THROWS_AS(incomplete_beta(1.1, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(incomplete_beta(0.5, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(incomplete_beta(0.5, 1.0, -1.0), DomainError);
}

TEST_CASE("incomplete_beta against boost, 10 significant digits")
{
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> ua(0.1, 100.0), ub(0.05, 1.0), uy(0.0, 1.0);
    for (int i = 0; i < 3000; ++i) {
        const double a = ua(gen), b = ub(gen), y = uy(gen);
        const double expected = boost::math::beta(a, b, y);
        if (expected < 1e-300) continue;
        CHECK(incomplete_beta(y, a, b) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(regularized_incomplete_beta(y, a, b) ==
              doctest::Approx(boost::math::ibeta(a, b, y)).epsilon(1e-10));
    }
    // Near y = 1 with b < 1, where the integrand is singular.
    for (double y : {0.99, 0.999999, 1.0 - 1e-12}) {
        const double a = 4.545, b = 0.455;
        CHECK(incomplete_beta(y, a, b) == doctest::Approx(boost::math::beta(a, b, y)).epsilon(1e-10));
    }
}

TEST_CASE("incomplete_beta is nondecreasing in y")
{
    double prev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double v = incomplete_beta(i / 2000.0, 4.545, 0.455);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("log_beta")
{
    CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0));
    CHECK(std::exp(log_beta(2.0, 3.0)) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("SignedLogSum")
{
    SignedLogSum empty;
    CHECK(empty.sign() == 0);
    CHECK(empty.value() == 0.0);

    SignedLogSum s;
    s.add(std::log(3.0), 1);
    s.add(std::log(1.0), -1);
    s.add(std::log(0.5), 1);
    CHECK(s.value() == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(s.sign() == 1);
    CHECK(s.max_log_term() == doctest::Approx(std::log(3.0)));

    // Terms far outside double range.
    SignedLogSum big;
    big.add(1000.0, 1);
    big.add(1000.0 + std::log(3.0), -1);
    CHECK(big.sign() == -1);
    CHECK(big.log_magnitude() == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-14));

    SignedLogSum zero;
    zero.add(5.0, 1);
    zero.add(5.0, -1);
    CHECK(zero.sign() == 0);
}
