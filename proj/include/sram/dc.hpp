#pragma once

#include "sram/device.hpp"
#include "sram/mat2.hpp"

#include <optional>
#include <vector>

namespace sram {

// One VTC sampled on a uniform input grid.
struct CurveSample {
    double vin = 0.0, vout = 0.0;
};
struct Curve {
    std::vector<CurveSample> samples;
};

struct Crossing {
    double x = 0.0;  // vout2 = vin1 axis
    double y = 0.0;  // vout1 = vin2 axis
};

enum class Classification { Functional, Defective };

struct ButterflyData {
    Curve curve1;            // inverter 1, (vin1, vout1)
    Curve curve2_reflected;  // inverter 2 in its own coordinates (vin2, vout2);
                             // drawn mirrored about the diagonal in shared axes
    std::vector<Crossing> crossings;  // sorted by x
    Classification classification = Classification::Defective;
    double vdd = 0.0;
};

// Inscribed square of one butterfly lobe: side length plus the two opposite
// corners (on the curves) in the shared axes.
struct SnmSquare {
    double side = 0.0;
    double ax = 0.0, ay = 0.0;  // corner on curve 1
    double bx = 0.0, by = 0.0;  // corner on curve 2 (reflected)
};

struct SnmResult {
    double snm = 0.0;      // min of the two lobes
    SnmSquare lobe_upper;  // lobe containing the (low, high) state
    SnmSquare lobe_lower;
    int limiting_side = 0;  // 0: upper lobe limits, 1: lower lobe
};

struct EquilibriumPoint {
    double x = 0.0, y = 0.0;  // (vout2, vout1)
    Mat2 jacobian;            // of the drift (dx/dt, dy/dt), 1/s
    double residual = 0.0;    // normalized drift residual
    bool stable = false;
    int positive_eigenvalues = 0;
};

struct EquilibriumSet {
    EquilibriumPoint stable0;  // endangered state, ~(0, vdd) on the worst-case line
    EquilibriumPoint stable1;
    EquilibriumPoint unstable;
};

struct DistanceResult {
    double dx = 0.0;      // X_M - X_0
    double dy = 0.0;      // Y_0 - Y_M
    double dy_alt = 0.0;  // Y_1 - Y_M, the alternative reading (see README)
};

// Solve vout of one inverter at a single input point; |I| residual < 1e-15 A.
double vtc_point(const InverterParams& inv, double vdd, double vin);

// Full curve on a uniform grid (0 < grid_step <= 1 mV).
Curve vtc(const InverterParams& inv, double vdd, double grid_step);

// Both curves, refined crossings, functional/defective classification.
ButterflyData butterfly(const LatchConfig& latch, double grid_step = 1e-3);

// Largest inscribed square per lobe via 45-degree rotation; requires a
// functional butterfly (throws std::invalid_argument otherwise). The latch is
// needed to refine beyond the stored curve samples.
SnmResult snm(const LatchConfig& latch, const ButterflyData& b);

// Newton-refined drift equilibria seeded from butterfly crossings, with
// Jacobians and stability classification.
EquilibriumSet equilibria(const LatchConfig& latch);

// Drift at a state point: (dx/dt, dy/dt) in V/s for state (x, y) = (vout2, vout1).
Vec2 latch_drift(const LatchConfig& latch, double x, double y);

// Drift Jacobian (1/s) at a state point, analytic.
Mat2 latch_drift_jacobian(const LatchConfig& latch, double x, double y);

// Normalized drift residual at a point: max over nodes of
// |I_net| / (sum of branch current magnitudes).
double drift_residual(const LatchConfig& latch, double x, double y);

DistanceResult distances(const EquilibriumSet& eq);

}
