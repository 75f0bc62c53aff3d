#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sram/device.hpp"

using namespace sram;

static MosParams make_nmos(double I0, double Vth, double n, double UT) {
    MosParams p;
    p.polarity = Polarity::NType;
    p.I0 = I0;
    p.Vth = Vth;
    p.n = n;
    p.UT = UT;
    return p;
}

static InverterParams matched_inverter(double I0, double Vth, double n,
                                       double dV = 0.0) {
    InverterParams inv;
    inv.nmos = make_nmos(I0, Vth, n, thermal_voltage(300.0));
    inv.pmos = inv.nmos;
    inv.pmos.polarity = Polarity::PType;
    inv.dV = dV;
    return inv;
}

TEST_CASE("drain current vanishes at zero drain bias") {
    MosParams p = make_nmos(1e-9, 0.3, 1.3, 0.02585);
    CHECK(mos_current(0.15, 0.0, p) == 0.0);
    CHECK(mos_current(0.4, 0.0, p) == 0.0);
    p.polarity = Polarity::PType;
    CHECK(mos_current(-0.15, 0.0, p) == 0.0);
}

TEST_CASE("drain current saturates to the exponential prefactor") {
    MosParams p = make_nmos(1e-9, 0.3, 1.3, 0.02585);
    double vgs = 0.25;
    double sat = p.I0 * std::exp((vgs - p.Vth) / (p.n * p.UT));
    // at vds = 1 V the drain-bias factor is 1 - e^{-vds/UT} = 1 within 1e-16
    CHECK(mos_current(vgs, 1.0, p) == doctest::Approx(sat).epsilon(1e-12));
}

TEST_CASE("drain current matches a high-precision scalar evaluation") {
    MosParams p = make_nmos(1e-9, 0.3, 1.3, 0.02585);
    // vgs = Vth kills the exponential; only the drain factor remains
    double i = mos_current(0.3, 0.2, p);
    CHECK(i == doctest::Approx(9.9956359677200336e-10).epsilon(1e-12));
}

TEST_CASE("p-type current mirrors the n-type expression") {
    MosParams n = make_nmos(2e-9, 0.28, 1.5, 0.0259);
    MosParams p = n;
    p.polarity = Polarity::PType;
    for (double vgs : {-0.05, -0.12, -0.2}) {
        for (double vds : {-0.03, -0.1, -0.18}) {
            CHECK(mos_current(vgs, vds, p) ==
                  doctest::Approx(-mos_current(-vgs, -vds, n)).epsilon(1e-14));
        }
    }
}

TEST_CASE("drain current rejects non-finite input") {
    MosParams p = make_nmos(1e-9, 0.3, 1.3, 0.02585);
    CHECK_THROWS_AS(mos_current(std::nan(""), 0.1, p), std::domain_error);
    CHECK_THROWS_AS(mos_current(0.1, std::numeric_limits<double>::infinity(), p),
                    std::domain_error);
}

TEST_CASE("inverter corner state carries only the off-state leak") {
    InverterParams inv = matched_inverter(1e-8, 0.30, 2.4);
    double vdd = 0.2;
    // pull-up sits at zero drain bias (exactly no current); pull-down is off
    // but leaks at the subthreshold floor, so the net is small vs I0, not 0
    double i = inverter_node_current(0.0, vdd, inv, vdd);
    CHECK(std::abs(i) < 0.01 * inv.nmos.I0);
    CHECK(i < 0.0);  // the leak pulls the node down
}

TEST_CASE("matched inverter balances exactly at the midpoint") {
    InverterParams inv = matched_inverter(1e-8, 0.30, 2.4);
    double vdd = 0.2;
    CHECK(inverter_node_current(vdd / 2, vdd / 2, inv, vdd) == 0.0);
}

TEST_CASE("inverter net current decomposes into its branch currents") {
    InverterParams inv = matched_inverter(1e-8, 0.30, 2.4, 0.055);
    double vdd = 0.2;
    double vin = 0.08, vout = 0.13;
    double vin_eff = vin + inv.dV;  // no clamp in this range
    // p-type terminals referenced to its source at vdd
    double iup = -mos_current(vin_eff - vdd, vout - vdd, inv.pmos);
    double idn = mos_current(vin_eff, vout, inv.nmos);
    CHECK(inverter_node_current(vin, vout, inv, vdd) ==
          doctest::Approx(iup - idn).epsilon(1e-15));
}

TEST_CASE("input offset is equivalent to shifting the input") {
    InverterParams base = matched_inverter(1e-8, 0.30, 2.4);
    InverterParams shifted = base;
    shifted.dV = 0.03;
    double vdd = 0.2;
    for (double vin : {0.0, 0.04, 0.09, 0.16}) {
        CHECK(inverter_node_current(vin, 0.11, shifted, vdd) ==
              inverter_node_current(vin + 0.03, 0.11, base, vdd));
    }
    // past the rail the effective input clamps
    CHECK(inverter_node_current(0.19, 0.11, shifted, vdd) ==
          inverter_node_current(0.20, 0.11, base, vdd));
    InverterParams negative = base;
    negative.dV = -0.05;
    CHECK(inverter_node_current(0.02, 0.11, negative, vdd) ==
          inverter_node_current(0.0, 0.11, base, vdd));
}

TEST_CASE("net current is smooth in both arguments") {
    InverterParams inv = matched_inverter(1e-8, 0.30, 2.4, 0.02);
    double vdd = 0.2;
    double h = 1e-7;
    for (double vin = 0.01; vin < vdd; vin += 0.023) {
        for (double vout = 0.01; vout < vdd; vout += 0.031) {
            double i0 = inverter_node_current(vin, vout, inv, vdd);
            double ip = inverter_node_current(vin + h, vout, inv, vdd);
            double im = inverter_node_current(vin - h, vout, inv, vdd);
            // second difference of a smooth function stays at curvature scale
            CHECK(std::abs(ip - 2 * i0 + im) < 1e-9 * (std::abs(i0) + 1e-12));
        }
    }
}

TEST_CASE("analytic inverter derivatives match central differences") {
    InverterParams inv = matched_inverter(1e-8, 0.30, 2.4, 0.015);
    double vdd = 0.2;
    double h = 1e-7;
    for (double vin : {0.03, 0.09, 0.15}) {
        for (double vout : {0.05, 0.10, 0.17}) {
            InverterDerivs d = inverter_node_derivs(vin, vout, inv, vdd);
            double fd_vin = (inverter_node_current(vin + h, vout, inv, vdd) -
                             inverter_node_current(vin - h, vout, inv, vdd)) /
                            (2 * h);
            double fd_vout = (inverter_node_current(vin, vout + h, inv, vdd) -
                              inverter_node_current(vin, vout - h, inv, vdd)) /
                             (2 * h);
            CHECK(d.i == inverter_node_current(vin, vout, inv, vdd));
            CHECK(d.di_dvin == doctest::Approx(fd_vin).epsilon(1e-6));
            CHECK(d.di_dvout == doctest::Approx(fd_vout).epsilon(1e-6));
        }
    }
}

TEST_CASE("input derivative is zero where the clamp is active") {
    InverterParams inv = matched_inverter(1e-8, 0.30, 2.4, 0.05);
    double vdd = 0.2;
    InverterDerivs d = inverter_node_derivs(0.18, 0.1, inv, vdd);  // 0.23 clamps
    CHECK(d.di_dvin == 0.0);
}

TEST_CASE("node noise floor is tiny when both devices idle") {
    InverterParams inv = matched_inverter(1e-8, 0.30, 2.4);
    double vdd = 0.2;
    // pull-up at zero drain bias, pull-down off: only the leak contributes
    CHECK(node_noise_psd(0.0, vdd, inv, vdd, 0.0) < 1e-27);
}

TEST_CASE("access allowance adds directly to the node noise") {
    InverterParams inv = matched_inverter(1e-8, 0.30, 2.4);
    double vdd = 0.2;
    double base = node_noise_psd(0.0, vdd, inv, vdd, 0.0);
    double with = node_noise_psd(0.0, vdd, inv, vdd, 1e-24);
    CHECK(with == doctest::Approx(base + 1e-24).epsilon(1e-12));
    CHECK(with == doctest::Approx(1e-24).epsilon(1e-3));
}

TEST_CASE("node noise recombines the shot noise of both branches") {
    InverterParams inv = matched_inverter(1e-8, 0.30, 2.4, 0.01);
    double vdd = 0.2;
    double vin = vdd / 2, vout = vdd / 2;
    double vin_eff = vin + inv.dV;
    double iup = -mos_current(vin_eff - vdd, vout - vdd, inv.pmos);
    double idn = mos_current(vin_eff, vout, inv.nmos);
    double expect = 2.0 * kElectronCharge * (std::abs(iup) + std::abs(idn)) + 3e-26;
    CHECK(node_noise_psd(vin, vout, inv, vdd, 3e-26) ==
          doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("node noise is non-negative everywhere") {
    InverterParams inv = matched_inverter(1e-8, 0.30, 2.4, -0.04);
    double vdd = 0.2;
    for (double vin = -0.05; vin <= 0.25; vin += 0.01) {
        for (double vout = 0.0; vout <= vdd; vout += 0.02) {
            CHECK(node_noise_psd(vin, vout, inv, vdd, 0.0) >= 0.0);
        }
    }
}
