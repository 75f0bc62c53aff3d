#pragma once

#include "sram/constants.hpp"

#include <string>

namespace sram {

enum class Polarity { NType, PType };

// Weak-inversion (subthreshold) MOS model with constant slope factor.
struct MosParams {
    Polarity polarity = Polarity::NType;
    double I0 = 1e-9;   // saturation prefactor current, A
    double Vth = 0.3;   // threshold voltage, V
    double n = 1.3;     // subthreshold slope factor, dimensionless
    double UT = thermal_voltage(300.0);  // thermal voltage kT/q, V
};

// One inverter of the latch plus its input-referred variability offset.
struct InverterParams {
    MosParams nmos;
    MosParams pmos;
    double dV = 0.0;    // series voltage source at the input, V
};

struct LatchConfig {
    double vdd = 0.2;        // V
    InverterParams inv1;     // drives node 1 (vout1)
    InverterParams inv2;     // drives node 2 (vout2)
    double C1 = 4e-15;       // F, node 1
    double C2 = 4e-15;       // F, node 2
    double temperature = 300.0;  // K
    double access_noise = 0.0;   // extra white current-noise PSD per node, A^2/Hz
};

// Drain current. Sign convention: positive flows drain->source for vds > 0
// on an n-type device; the p-type branch is the sign-mirrored expression.
// Throws std::domain_error on non-finite input.
double mos_current(double vgs, double vds, const MosParams& p);

// Net current pushed into the inverter output node at (vin, vout), i.e.
// pull-up minus pull-down. The input sees vin + dV, clamped to [0, vdd];
// the output voltage is used as-is. Zero of this function in vout defines
// the VTC.
double inverter_node_current(double vin, double vout, const InverterParams& inv,
                             double vdd);

// d(inverter_node_current)/d(vin) and /d(vout), analytic.
// The vin derivative is zero where the clamp is active.
struct InverterDerivs {
    double i = 0.0;       // the current itself, A
    double di_dvin = 0.0; // A/V
    double di_dvout = 0.0;
};
InverterDerivs inverter_node_derivs(double vin, double vout,
                                    const InverterParams& inv, double vdd);

// One-sided white current-noise PSD at the inverter output node:
// shot noise of both conducting devices plus the access-device allowance.
double node_noise_psd(double vin, double vout, const InverterParams& inv,
                      double vdd, double access_noise);

// |I_pull-up| + |I_pull-down| — the current scale used to normalize residuals.
double inverter_branch_sum(double vin, double vout, const InverterParams& inv,
                           double vdd);

}
