#include "sram/predictors.hpp"

#include "sram/dc.hpp"
#include "sram/linearized.hpp"
#include "sram/quad.hpp"
#include "sram/rng.hpp"
#include "sram/threadpool.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sram {

namespace {

const double kPi = 3.14159265358979323846;
const double kSqrtPi = std::sqrt(kPi);
const double kSqrt3Half = 0.5 * std::sqrt(3.0);
const double kLn2Max = 709.0;  // exp() overflow guard
const double kAsymptoticZ = 25.0;  // switch point of the large-z branch
// Discrete-monitoring barrier correction constant, -zeta(1/2)/sqrt(2 pi).
const double kBarrierBeta = 0.5826;

}  // namespace

double delta_vv(double dx, double dy) {
    if (!(dx > 0.0) || !(dy > 0.0))
        throw std::domain_error("delta_vv: distances must be positive");
    return std::hypot(dx, dy);
}

double sigma_vv(double dx, double dy, double sigma1, double sigma2) {
    if (!(dx > 0.0) || !(dy > 0.0) || !(sigma1 > 0.0) || !(sigma2 > 0.0))
        throw std::domain_error("sigma_vv: inputs must be positive");
    double dvv2 = dx * dx + dy * dy;
    return std::sqrt((dx * dx * sigma1 * sigma1 + dy * dy * sigma2 * sigma2) / dvv2);
}

MttfValue kish_mttf(double dvv, double sigma_vv, double fp) {
    if (!(sigma_vv > 0.0) || !(fp > 0.0) || dvv < 0.0)
        throw std::domain_error("kish_mttf: invalid inputs");
    double r = dvv / sigma_vv;
    MttfValue v;
    v.log_mttf = 0.5 * r * r + std::log(kSqrt3Half) - std::log(fp);
    if (v.log_mttf > kLn2Max) {
        v.overflow = true;
        v.mttf = std::numeric_limits<double>::infinity();
    } else {
        v.mttf = std::exp(v.log_mttf);
    }
    return v;
}

MttfValue nobile_mttf(double dvv, double sigma_vv, double fp) {
    if (!(sigma_vv > 0.0) || !(fp > 0.0) || dvv < 0.0)
        throw std::domain_error("nobile_mttf: invalid inputs");
    MttfValue v;
    if (dvv == 0.0) {
        v.mttf = 0.0;
        v.log_mttf = -std::numeric_limits<double>::infinity();
        return v;
    }
    double z = dvv / (std::sqrt(2.0) * sigma_vv);
    double z2 = z * z;
    double bracket;  // e^{-z^2} * ( sqrt(pi) Int e^{u^2} + Int e^{u^2} erf )
    if (z <= kAsymptoticZ) {
        double first = kSqrtPi * dawson(z);
        auto f = [z2](double u) { return std::exp(u * u - z2) * std::erf(u); };
        QuadResult q = integrate_gk15(f, 0.0, z, 1e-300, 1e-10, 48);
        bracket = first + q.value;
    } else {
        // Both integrals behave as e^{z^2}/(2z) * (1 + 1/(2z^2) + 3/(4z^4) + ...)
        // for large z (erf -> 1); error O(e^{-z^2} log z), far below 1e-8.
        double iz2 = 1.0 / z2;
        double series = 1.0 + 0.5 * iz2 * (1.0 + 1.5 * iz2 * (1.0 + 2.5 * iz2));
        bracket = (kSqrtPi + 1.0) * series / (2.0 * z);
    }
    v.log_mttf = z2 + std::log(bracket) - std::log(kPi * fp);
    if (v.log_mttf > kLn2Max) {
        v.overflow = true;
        v.mttf = std::numeric_limits<double>::infinity();
    } else {
        v.mttf = std::exp(v.log_mttf);
    }
    return v;
}

OuMcResult ou_first_passage_mc(double fp, double sigma, double threshold,
                               int n, uint64_t seed, unsigned n_threads) {
    if (n < 100)
        throw std::invalid_argument("ou_first_passage_mc: n must be >= 100");
    if (!(fp > 0.0) || !(sigma > 0.0) || threshold < 0.0)
        throw std::domain_error("ou_first_passage_mc: invalid inputs");

    const double lambda = 2.0 * kPi * fp;
    const double lam_dt = 1e-3;            // dimensionless step lambda*dt
    const double dt = lam_dt / lambda;
    const double alpha = std::exp(-lam_dt);
    const double beta = sigma * std::sqrt(1.0 - alpha * alpha);
    // Continuity correction: the discretely-monitored walk crosses a barrier
    // lowered by beta1 * sigma_sde * sqrt(dt), sigma_sde = sigma*sqrt(2 lambda).
    double barrier = threshold - kBarrierBeta * sigma * std::sqrt(2.0 * lam_dt);

    std::vector<double> times(static_cast<size_t>(n));
    parallel_for(static_cast<size_t>(n), n_threads, [&](size_t trial) {
        if (barrier <= 0.0) {
            times[trial] = 0.0;
            return;
        }
        NormalSampler gauss(seed, trial);
        double v = 0.0;
        double t = 0.0;
        while (true) {
            v = alpha * v + beta * gauss.next();
            t += dt;
            if (v >= barrier) break;
        }
        times[trial] = t;
    });

    OuMcResult r;
    r.n = n;
    double sum = 0.0;
    for (double t : times) sum += t;
    r.mean = sum / n;
    double ss = 0.0;
    for (double t : times) ss += (t - r.mean) * (t - r.mean);
    r.std_error = std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
    return r;
}

PredictorBundle predict(const LatchConfig& latch) {
    EquilibriumSet eq = equilibria(latch);
    LinearizedModel lin = linearize(latch, eq);
    DistanceResult d = distances(eq);
    PredictorBundle p;
    p.dx = d.dx;
    p.dy = d.dy;
    p.dvv = delta_vv(d.dx, d.dy);
    p.sigma1 = lin.sigma1;
    p.sigma2 = lin.sigma2;
    p.sigma_vv = sigma_vv(d.dx, d.dy, lin.sigma1, lin.sigma2);
    p.fp = lin.fp;
    p.z = p.dvv / (std::sqrt(2.0) * p.sigma_vv);
    p.kish = kish_mttf(p.dvv, p.sigma_vv, p.fp);
    p.nobile = nobile_mttf(p.dvv, p.sigma_vv, p.fp);
    return p;
}

}
