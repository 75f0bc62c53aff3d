#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sram/rootfind.hpp"

using namespace sram;

TEST_CASE("brent finds the root of a transcendental function") {
    BrentResult r = brent([](double x) { return std::cos(x); }, 0.0, 3.0);
    CHECK(r.converged);
    CHECK(r.x == doctest::Approx(1.5707963267948966).epsilon(1e-14));
    CHECK(std::abs(r.fx) < 1e-14);
}

TEST_CASE("brent handles a flat-then-steep cubic") {
    BrentResult r = brent([](double x) { return x * x * x - 2e-6; }, -1.0, 1.0);
    CHECK(r.converged);
    CHECK(r.x == doctest::Approx(0.012599210498948732).epsilon(1e-10));
}

TEST_CASE("brent resolves exponential current balances at machine scale") {
    // same shape as an inverter current balance: difference of exponentials
    auto f = [](double v) {
        return std::exp((0.1 - v) / 0.062) - std::exp((v - 0.1) / 0.062);
    };
    BrentResult r = brent(f, 0.0, 0.2);
    CHECK(r.converged);
    CHECK(r.x == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("brent accepts an endpoint that is already a root") {
    BrentResult r = brent([](double x) { return x - 0.5; }, 0.5, 1.0);
    CHECK(r.converged);
    CHECK(r.x == 0.5);
}

TEST_CASE("brent rejects a bracket without a sign change") {
    CHECK_THROWS_AS(brent([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("brent honors the bracket-width tolerance") {
    BrentResult tight = brent([](double x) { return std::sin(x) - 0.3; }, 0.0,
                              1.0, 1e-15);
    BrentResult loose = brent([](double x) { return std::sin(x) - 0.3; }, 0.0,
                              1.0, 1e-6);
    CHECK(tight.converged);
    CHECK(loose.converged);
    CHECK(std::abs(tight.x - std::asin(0.3)) < 1e-13);
    CHECK(std::abs(loose.x - std::asin(0.3)) < 1e-5);
    CHECK(loose.iterations <= tight.iterations);
}
