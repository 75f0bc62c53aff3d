#pragma once

#include "sram/dc.hpp"
#include "sram/noise.hpp"
#include "sram/varmap.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sram {

// Round-trippable decimal rendering of a double (shortest-ish %.17g form);
// used for every numeric CSV field so identical runs produce identical bytes.
std::string format_num(double v);

const char* cell_class_name(CellClass cls);

// Columns: vin1_V,vout1_V,vin2_V,vout2_V (one row per shared grid index).
std::string butterfly_csv_text(const ButterflyData& b);

// Columns: dV1_mV,dV2_mV,class,snm_mV (snm empty when absent).
std::string sweep_csv_text(const std::vector<CellRecord>& grid);

// Columns: t_s,vout2_V,vout1_V.
std::string trajectory_csv_text(const Trajectory& traj);

// Columns: experiment,seed,ttf_s,censored (ttf empty on censored rows; the
// seed column holds the per-experiment derived stream seed).
std::string ttf_csv_text(const TtfBatch& batch);

struct MttfSummaryRow {
    double dv1 = 0.0, dv2 = 0.0;  // V
    MttfEstimate est;
};
// Columns: dV1_mV,dV2_mV,mttf_s,stderr_s,n_effective,censored_count
// (stderr empty when undefined, i.e. fewer than two uncensored samples).
std::string mttf_csv_text(const std::vector<MttfSummaryRow>& rows);

struct CompareRow {
    double dv = 0.0;  // V, worst-case-line magnitude (dV1 = -dV2 = dv)
    double mttf_sim = 0.0;
    double stderr_sim = 0.0;
    double mttf_kish = 0.0;
    double mttf_nobile = 0.0;
};
// Columns: dv_mV,mttf_sim_s,stderr_s,mttf_kish_s,mttf_nobile_s.
std::string compare_csv_text(const std::vector<CompareRow>& rows);

// Write text to path, throwing std::runtime_error on I/O failure.
void write_text_file(const std::string& path, const std::string& text);

struct RunManifest {
    std::string command;      // reconstructed invocation
    std::string config_json;  // full effective config snapshot (JSON text)
    uint64_t seed = 0;
    unsigned threads = 0;
    std::string code_version;
    std::string git_rev;
    std::string started_utc;
    std::string finished_utc;
    std::vector<std::string> outputs;  // files written by the run
};

std::string manifest_json_text(const RunManifest& m);
std::string iso8601_utc_now();

}
