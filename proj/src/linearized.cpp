#include "sram/linearized.hpp"

#include <cmath>
#include <stdexcept>

namespace sram {

namespace {

double fp_from(const Eigen2& eig, const Vec2& flip, bool& oscillatory) {
    const double twopi = 6.283185307179586476925286766559;
    if (eig.complex_pair) {
        oscillatory = true;
        return std::abs(eig.lambda1.real()) / twopi;
    }
    oscillatory = false;
    double p1 = std::abs(eig.v1.x * flip.x + eig.v1.y * flip.y);
    double p2 = std::abs(eig.v2.x * flip.x + eig.v2.y * flip.y);
    double lam = p1 >= p2 ? eig.lambda1.real() : eig.lambda2.real();
    return std::abs(lam) / twopi;
}

}  // namespace

LinearizedModel linearize(const LatchConfig& latch, const EquilibriumSet& eq) {
    LinearizedModel m;
    double x0 = eq.stable0.x, y0 = eq.stable0.y;
    m.A = latch_drift_jacobian(latch, x0, y0);
    m.eig = eigen2(m.A);
    if (m.eig.lambda1.real() >= 0.0 || m.eig.lambda2.real() >= 0.0)
        throw std::runtime_error("linearize: Jacobian not Hurwitz at the retained state");

    // One-sided node current PSDs at the operating point. The per-sample
    // current variance of the band-limited generator is S*fmax = S/(2 dt),
    // i.e. white-noise intensity S/2, which gives B B^T = S/(2 C^2) per node.
    double s_node2 = node_noise_psd(y0, x0, latch.inv2, latch.vdd, latch.access_noise);
    double s_node1 = node_noise_psd(x0, y0, latch.inv1, latch.vdd, latch.access_noise);
    m.q11 = s_node2 / (2.0 * latch.C2 * latch.C2);
    m.q22 = s_node1 / (2.0 * latch.C1 * latch.C1);

    m.Sigma = lyapunov2(m.A, m.q11, m.q22);
    if (!m.Sigma.positive_definite())
        throw std::runtime_error("linearize: stationary covariance not positive definite");
    m.sigma1 = std::sqrt(m.Sigma.s11);
    m.sigma2 = std::sqrt(m.Sigma.s22);

    double fx = eq.unstable.x - x0, fy = eq.unstable.y - y0;
    double fn = std::hypot(fx, fy);
    if (fn == 0.0)
        throw std::runtime_error("linearize: degenerate flip direction");
    m.flip_direction = {fx / fn, fy / fn};
    m.fp = fp_from(m.eig, m.flip_direction, m.oscillatory);
    return m;
}

SigmaPair stationary_sigma(const LinearizedModel& model) {
    Sym2 s = lyapunov2(model.A, model.q11, model.q22);
    if (!s.positive_definite())
        throw std::runtime_error("stationary_sigma: covariance not positive definite");
    return {std::sqrt(s.s11), std::sqrt(s.s22)};
}

double noise_bandwidth(const LinearizedModel& model) {
    bool osc = false;
    return fp_from(model.eig, model.flip_direction, osc);
}

}
