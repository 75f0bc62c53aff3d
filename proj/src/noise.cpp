#include "sram/noise.hpp"

#include "sram/rng.hpp"
#include "sram/threadpool.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sram {

void validate(const NoiseRunConfig& cfg) {
    if (!(cfg.fmax > 0.0) || !(cfg.dt > 0.0))
        throw std::invalid_argument("noise config: fmax and dt must be positive");
    if (std::abs(cfg.dt * 2.0 * cfg.fmax - 1.0) > 1e-9)
        throw std::invalid_argument("noise config: dt must equal 1/(2 fmax)");
    if (!(cfg.t_max > 0.0))
        throw std::invalid_argument("noise config: t_max must be positive");
    if (cfg.n_experiments < 1)
        throw std::invalid_argument("noise config: n_experiments must be >= 1");
    if (cfg.sub_steps < 1 || cfg.decimation < 1)
        throw std::invalid_argument("noise config: sub_steps/decimation must be >= 1");
    if (cfg.noise_scale < 0.0)
        throw std::invalid_argument("noise config: noise_scale must be >= 0");
}

NoiseRunConfig make_noise_config(double fmax, double t_max, int n_experiments,
                                 uint64_t seed) {
    NoiseRunConfig cfg;
    cfg.fmax = fmax;
    cfg.dt = 1.0 / (2.0 * fmax);
    cfg.t_max = t_max;
    cfg.n_experiments = n_experiments;
    cfg.seed = seed;
    return cfg;
}

namespace {

// Linear-interpolated crossing time between (t0, a0) and (t1, a1) where the
// margin a = (target - value) changes sign from a0 > 0 to a1 <= 0.
inline double interp_crossing(double t0, double t1, double a0, double a1) {
    if (a0 <= 0.0) return t0;
    return t0 + (t1 - t0) * a0 / (a0 - a1);
}

}  // namespace

TransientResult transient(const LatchConfig& latch, const NoiseRunConfig& cfg,
                          uint64_t experiment_index, const EquilibriumSet* eq) {
    validate(cfg);
    TransientResult res;
    res.experiment_index = experiment_index;

    const double vdd = latch.vdd;
    const double lo = -0.5 * vdd, hi = 1.5 * vdd;
    const double h = cfg.dt / cfg.sub_steps;
    const double inv_c2 = 1.0 / latch.C2, inv_c1 = 1.0 / latch.C1;
    const double noise_gain = std::sqrt(cfg.fmax);
    const long long n_steps =
        static_cast<long long>(std::ceil(cfg.t_max / cfg.dt - 1e-9));

    NormalSampler gauss(cfg.seed, experiment_index);

    double x = 0.0, y = vdd;  // (vout2, vout1)
    double t = 0.0;
    const double xm = eq ? eq->unstable.x : 0.0;
    const double ym = eq ? eq->unstable.y : 0.0;

    if (cfg.record_trajectory) {
        res.trajectory.t.push_back(0.0);
        res.trajectory.vout2.push_back(x);
        res.trajectory.vout1.push_back(y);
    }

    bool flipped = false;
    for (long long step = 0; step < n_steps && !flipped; ++step) {
        // Band-limited white noise: one current sample per node held over dt,
        // amplitude from the one-sided PSD at the interval-start state.
        double i_n2 = 0.0, i_n1 = 0.0;
        if (cfg.noise_scale > 0.0) {
            double s2 = cfg.noise_scale *
                        node_noise_psd(y, x, latch.inv2, vdd, latch.access_noise);
            double s1 = cfg.noise_scale *
                        node_noise_psd(x, y, latch.inv1, vdd, latch.access_noise);
            i_n2 = gauss.next() * std::sqrt(s2) * noise_gain;
            i_n1 = gauss.next() * std::sqrt(s1) * noise_gain;
        }
        for (int sub = 0; sub < cfg.sub_steps; ++sub) {
            double i2 = inverter_node_current(y, x, latch.inv2, vdd);
            double i1 = inverter_node_current(x, y, latch.inv1, vdd);
            double xn = x + h * (i2 + i_n2) * inv_c2;
            double yn = y + h * (i1 + i_n1) * inv_c1;
            double tn = t + h;
            if (xn < lo || xn > hi || yn < lo || yn > hi)
                throw IntegrationBlowup(
                    "transient: node voltage escaped [-vdd/2, 3vdd/2] at t=" +
                    std::to_string(tn) + " s (experiment " +
                    std::to_string(experiment_index) + ")");
            if (eq) {
                if (!res.t_xm && xn >= xm)
                    res.t_xm = interp_crossing(t, tn, xm - x, xm - xn);
                if (!res.t_ym && yn <= ym)
                    res.t_ym = interp_crossing(t, tn, y - ym, yn - ym);
            }
            if (xn >= yn) {
                res.ttf = interp_crossing(t, tn, y - x, yn - xn);
                flipped = true;
            }
            x = xn;
            y = yn;
            t = tn;
            if (flipped) break;
        }
        if (cfg.record_trajectory &&
            ((step + 1) % cfg.decimation == 0 || flipped || step + 1 == n_steps)) {
            res.trajectory.t.push_back(t);
            res.trajectory.vout2.push_back(x);
            res.trajectory.vout1.push_back(y);
        }
    }
    res.t_end = t;
    res.censored = !flipped;
    return res;
}

std::optional<double> detect_ttf(const Trajectory& traj) {
    size_t n = traj.t.size();
    if (n == 0) return std::nullopt;
    if (traj.vout2[0] >= traj.vout1[0]) return traj.t[0];
    for (size_t i = 1; i < n; ++i) {
        if (traj.vout2[i] >= traj.vout1[i]) {
            double d0 = traj.vout1[i - 1] - traj.vout2[i - 1];
            double d1 = traj.vout1[i] - traj.vout2[i];
            return interp_crossing(traj.t[i - 1], traj.t[i], d0, d1);
        }
    }
    return std::nullopt;
}

ThresholdTimes threshold_diagnostic(const Trajectory& traj,
                                    const EquilibriumSet& eq) {
    ThresholdTimes out;
    size_t n = traj.t.size();
    if (n == 0) return out;
    double xm = eq.unstable.x, ym = eq.unstable.y;
    if (traj.vout2[0] >= xm) out.t_xm = traj.t[0];
    if (traj.vout1[0] <= ym) out.t_ym = traj.t[0];
    for (size_t i = 1; i < n && (!out.t_xm || !out.t_ym); ++i) {
        if (!out.t_xm && traj.vout2[i] >= xm)
            out.t_xm = interp_crossing(traj.t[i - 1], traj.t[i],
                                       xm - traj.vout2[i - 1], xm - traj.vout2[i]);
        if (!out.t_ym && traj.vout1[i] <= ym)
            out.t_ym = interp_crossing(traj.t[i - 1], traj.t[i],
                                       traj.vout1[i - 1] - ym, traj.vout1[i] - ym);
    }
    return out;
}

MttfRun mttf_estimate(const LatchConfig& latch, const NoiseRunConfig& cfg,
                      unsigned n_threads) {
    validate(cfg);
    EquilibriumSet eq = equilibria(latch);

    int n = cfg.n_experiments;
    std::vector<ExperimentRecord> recs(static_cast<size_t>(n));
    parallel_for(static_cast<size_t>(n), n_threads, [&](size_t i) {
        NoiseRunConfig run_cfg = cfg;
        run_cfg.record_trajectory = false;
        TransientResult tr = transient(latch, run_cfg, i, &eq);
        ExperimentRecord& r = recs[i];
        r.index = i;
        r.stream = i;
        r.ttf = tr.ttf;
        r.censored = tr.censored;
        r.t_xm = tr.t_xm;
        r.t_ym = tr.t_ym;
    });

    MttfRun out;
    out.batch.base_seed = cfg.seed;
    out.batch.experiments = std::move(recs);
    for (const ExperimentRecord& r : out.batch.experiments) {
        if (r.censored)
            ++out.batch.censored_count;
        else
            out.batch.ttf_samples.push_back(*r.ttf);
    }
    double frac = static_cast<double>(out.batch.censored_count) / n;
    if (frac > 0.10)
        throw CensoringError(
            "mttf: censored fraction " + std::to_string(frac) +
            " exceeds 10% — horizon t_max too short for this operating point");

    MttfEstimate& est = out.estimate;
    est.censored_count = out.batch.censored_count;
    est.n_effective = static_cast<int>(out.batch.ttf_samples.size());
    if (est.n_effective == 0)
        throw CensoringError("mttf: no uncensored flips observed");
    double sum = 0.0;
    for (double v : out.batch.ttf_samples) sum += v;
    est.mean = sum / est.n_effective;
    if (est.n_effective >= 2) {
        double ss = 0.0;
        for (double v : out.batch.ttf_samples)
            ss += (v - est.mean) * (v - est.mean);
        est.std_error = std::sqrt(ss / (est.n_effective - 1)) /
                        std::sqrt(static_cast<double>(est.n_effective));
    } else {
        est.std_error = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

}
