#pragma once

#include "sram/dc.hpp"
#include "sram/device.hpp"
#include "sram/mat2.hpp"

namespace sram {

struct LinearizedModel {
    Mat2 A;                 // drift Jacobian at the retained state, 1/s
    double q11 = 0.0;       // B B^T diagonal, (V^2/s): node 2 (vout2)
    double q22 = 0.0;       // node 1 (vout1)
    Sym2 Sigma;             // stationary covariance, V^2 (x=vout2 first)
    double sigma1 = 0.0;    // stationary deviation of vout2, V
    double sigma2 = 0.0;    // stationary deviation of vout1, V
    double fp = 0.0;        // noise bandwidth, Hz
    Vec2 flip_direction;    // unit vector from (X0,Y0) toward (XM,YM)
    Eigen2 eig;             // of A
    bool oscillatory = false;  // complex eigenvalue pair (flagged, nonphysical)
};

// Small-signal stochastic model at the endangered stable point.
// Throws std::runtime_error if A is not Hurwitz.
LinearizedModel linearize(const LatchConfig& latch, const EquilibriumSet& eq);

// Solve A S + S A^T + B B^T = 0 and return (sigma_vout2, sigma_vout1).
struct SigmaPair {
    double sigma1 = 0.0;  // vout2
    double sigma2 = 0.0;  // vout1
};
SigmaPair stationary_sigma(const LinearizedModel& model);

// fp = |Re lambda_slow| / (2 pi), slow = eigenvalue whose eigenvector has the
// largest projection on flip_direction. Complex pairs use |Re| and set the
// oscillatory flag on the model.
double noise_bandwidth(const LinearizedModel& model);

}
