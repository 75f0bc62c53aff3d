#include <doctest.h>

#include <cmath>

#include "sram/quad.hpp"

using namespace sram;

TEST_CASE("polynomials integrate exactly") {
    QuadResult r = integrate_gk15([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(r.converged);
    CHECK(r.subdivisions == 0);
}

TEST_CASE("smooth transcendental integrals reach the requested accuracy") {
    QuadResult r = integrate_gk15([](double x) { return std::sin(x); }, 0.0,
                                  3.141592653589793, 1e-14, 1e-13);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.converged);
}

TEST_CASE("integration against a sharply peaked exponential terminates") {
    // integrand spans 15 decades across the interval; the panel error
    // estimate bottoms out near machine precision long before the
    // per-level tolerance does, which must still be accepted
    double z = 5.9;
    QuadResult r = integrate_gk15(
        [z](double u) { return std::exp(u * u - z * z); }, 0.0, z, 1e-16,
        1e-14, 48);
    CHECK(r.converged);
    // reference: e^{-z^2} Integral_0^z e^{u^2} du = dawson(z)
    CHECK(r.value == doctest::Approx(0.086019681992648060).epsilon(1e-10));
}

TEST_CASE("empty interval integrates to zero") {
    QuadResult r = integrate_gk15([](double x) { return std::exp(x); }, 2.0, 2.0);
    CHECK(r.value == 0.0);
    CHECK(r.converged);
}

TEST_CASE("dawson function matches frozen references") {
    struct Ref {
        double x, d;
    };
    // high-precision quadrature references
    const Ref refs[] = {
        {0.3, 0.28263166502131193},   {1.0, 0.53807950691276841},
        {2.674, 0.20482094953510167}, {5.0, 0.10213407442427686},
        {10.0, 0.050253847187598549}, {24.9, 0.020096554167613776},
    };
    for (const Ref& r : refs) {
        CHECK(dawson(r.x) == doctest::Approx(r.d).epsilon(1e-10));
        CHECK(dawson(-r.x) == doctest::Approx(-r.d).epsilon(1e-10));
    }
}

TEST_CASE("dawson asymptotic branch agrees with its reference") {
    CHECK(dawson(25.1) == doctest::Approx(0.019936166042254323).epsilon(1e-9));
    CHECK(dawson(40.0) == doctest::Approx(1.0 / 80.0 * (1 + 0.5 / 1600.0))
                              .epsilon(1e-6));
}

TEST_CASE("dawson is continuous across the branch switch") {
    // D'(25) ~ -1/(2*625) ~ -8e-4, so the function itself moves ~1.6e-12
    // across this +-1e-9 window; a branch mismatch would show up at the
    // ~1e-5 relative level (~2e-7 absolute).
    double below = dawson(25.0 - 1e-9);
    double above = dawson(25.0 + 1e-9);
    CHECK(std::abs(below - above) < 1e-11);
}

TEST_CASE("dawson is linear near zero") {
    CHECK(dawson(1e-9) == 1e-9);
    CHECK(dawson(-1e-9) == -1e-9);
    CHECK(dawson(1e-4) == doctest::Approx(1e-4).epsilon(1e-7));
}

TEST_CASE("dawson stays positive and bounded on the positive axis") {
    // global maximum is about 0.5410 at x about 0.924
    double peak = 0.0;
    for (double x = 0.05; x < 25.0; x += 0.173) {
        double d = dawson(x);
        CHECK(d > 0.0);
        CHECK(d < 0.5411);
        if (d > peak) peak = d;
    }
    CHECK(peak == doctest::Approx(0.5410442246).epsilon(1e-3));
}
