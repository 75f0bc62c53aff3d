#pragma once

#include "sram/dc.hpp"
#include "sram/device.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sram {

struct NoiseRunConfig {
    double fmax = 1e9;       // generated-noise bandwidth, Hz
    double dt = 5e-10;       // noise update interval, s; must equal 1/(2 fmax)
    double t_max = 1e-2;     // censoring horizon, s
    int n_experiments = 100;
    uint64_t seed = 1;
    bool record_trajectory = false;
    int decimation = 100;    // record every k-th noise step
    int sub_steps = 1;       // deterministic substeps per noise interval
    double noise_scale = 1.0;  // multiplies node PSDs (0 = deterministic run)
};

// Throws std::invalid_argument unless dt == 1/(2 fmax) and fields are sane.
void validate(const NoiseRunConfig& cfg);

// Convenience: fill dt from fmax.
NoiseRunConfig make_noise_config(double fmax, double t_max, int n_experiments,
                                 uint64_t seed);

struct Trajectory {
    std::vector<double> t;      // s, strictly increasing
    std::vector<double> vout2;  // x
    std::vector<double> vout1;  // y
};

struct TransientResult {
    std::optional<double> ttf;   // s; empty if censored
    bool censored = false;
    std::optional<double> t_xm;  // first vout2 >= X_M
    std::optional<double> t_ym;  // first vout1 <= Y_M
    Trajectory trajectory;       // populated when cfg.record_trajectory
    uint64_t experiment_index = 0;
    double t_end = 0.0;          // time integrated up to
};

// Raised when a node voltage escapes [-vdd/2, 3 vdd/2].
struct IntegrationBlowup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by mttf_estimate when the censored fraction exceeds 10%.
struct CensoringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One noise-driven retention experiment from (vout2, vout1) = (0, vdd).
// Thresholds for the diagnostic crossing times are taken from eq when given.
// The RNG stream is derived from (cfg.seed, experiment_index) only.
TransientResult transient(const LatchConfig& latch, const NoiseRunConfig& cfg,
                          uint64_t experiment_index,
                          const EquilibriumSet* eq = nullptr);

// First time vout2(t) >= vout1(t), linearly interpolated between samples.
std::optional<double> detect_ttf(const Trajectory& traj);

// First crossing times of vout2 >= X_M and vout1 <= Y_M (interpolated).
struct ThresholdTimes {
    std::optional<double> t_xm, t_ym;
};
ThresholdTimes threshold_diagnostic(const Trajectory& traj,
                                    const EquilibriumSet& eq);

struct ExperimentRecord {
    uint64_t index = 0;
    uint64_t stream = 0;  // derived stream index (== experiment index)
    std::optional<double> ttf;
    bool censored = false;
    std::optional<double> t_xm, t_ym;
};

struct TtfBatch {
    std::vector<ExperimentRecord> experiments;  // in index order
    std::vector<double> ttf_samples;            // uncensored only, index order
    int censored_count = 0;
    uint64_t base_seed = 0;
};

struct MttfEstimate {
    double mean = 0.0;       // s, over uncensored samples
    double std_error = 0.0;  // sample std / sqrt(n_effective); NaN if n_eff < 2
    int n_effective = 0;
    int censored_count = 0;
};

// Parallel batch of experiments; throws CensoringError above the 10% cap.
struct MttfRun {
    MttfEstimate estimate;
    TtfBatch batch;
};
MttfRun mttf_estimate(const LatchConfig& latch, const NoiseRunConfig& cfg,
                      unsigned n_threads = 0);

}
