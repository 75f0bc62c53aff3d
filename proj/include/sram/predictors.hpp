#pragma once

#include "sram/device.hpp"

#include <cstdint>

namespace sram {

struct MttfValue {
    double mttf = 0.0;      // s; +inf when the linear value overflows
    double log_mttf = 0.0;  // natural log of the value in seconds
    bool overflow = false;
};

// Euclidean distance between the retained state and the unstable point.
double delta_vv(double dx, double dy);

// Projection of the two node deviations onto the flip path (decorrelated).
double sigma_vv(double dx, double dy, double sigma1, double sigma2);

// MTTF = (sqrt(3)/2) * exp((dvv/sigma_vv)^2 / 2) / fp.
MttfValue kish_mttf(double dvv, double sigma_vv, double fp);

// MTTF = ( sqrt(pi) * Integral_0^z e^{u^2} du
//          + Integral_0^z e^{u^2} erf(u) du ) / (pi * fp),
// z = dvv / (sqrt(2) * sigma_vv); overflow-safe, relative error < 1e-8.
// Switches to the asymptotic large-z branch above z = 25.
MttfValue nobile_mttf(double dvv, double sigma_vv, double fp);

struct OuMcResult {
    double mean = 0.0;       // s
    double std_error = 0.0;  // s
    int n = 0;
};

// Monte-Carlo mean first-passage time of dv/dt = -2 pi fp v + noise with
// stationary deviation sigma, from v(0) = 0 to the absorbing threshold.
// Exact-in-distribution OU transition sampling; the discrete-monitoring bias
// is removed with the standard sqrt(step) barrier correction.
OuMcResult ou_first_passage_mc(double fp, double sigma, double threshold,
                               int n, uint64_t seed, unsigned n_threads = 0);

struct PredictorBundle {
    double dx = 0.0, dy = 0.0;  // V
    double dvv = 0.0;           // V
    double sigma1 = 0.0;        // V, vout2
    double sigma2 = 0.0;        // V, vout1
    double sigma_vv = 0.0;      // V
    double fp = 0.0;            // Hz
    double z = 0.0;             // dvv / (sqrt(2) sigma_vv)
    MttfValue kish;
    MttfValue nobile;
};

// Chains equilibria -> linearize -> distance/sigma projections -> formulas.
PredictorBundle predict(const LatchConfig& latch);

}
