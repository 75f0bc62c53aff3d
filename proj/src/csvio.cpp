#include "sram/csvio.hpp"

#include "sram/rng.hpp"

#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sram {

std::string format_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* cell_class_name(CellClass cls) {
    switch (cls) {
        case CellClass::Functional: return "functional";
        case CellClass::Marginal: return "marginal";
        case CellClass::Defective: return "defective";
        case CellClass::Error: return "error";
    }
    return "error";
}

std::string butterfly_csv_text(const ButterflyData& b) {
    std::ostringstream out;
    out << "vin1_V,vout1_V,vin2_V,vout2_V\n";
    size_t n = b.curve1.samples.size();
    for (size_t i = 0; i < n; ++i) {
        const CurveSample& c1 = b.curve1.samples[i];
        const CurveSample& c2 = b.curve2_reflected.samples[i];
        out << format_num(c1.vin) << ',' << format_num(c1.vout) << ','
            << format_num(c2.vin) << ',' << format_num(c2.vout) << '\n';
    }
    return out.str();
}

std::string sweep_csv_text(const std::vector<CellRecord>& grid) {
    std::ostringstream out;
    out << "dV1_mV,dV2_mV,class,snm_mV\n";
    for (const CellRecord& r : grid) {
        out << format_num(r.dv1 * 1e3) << ',' << format_num(r.dv2 * 1e3) << ','
            << cell_class_name(r.cls) << ',';
        if (r.snm) out << format_num(*r.snm * 1e3);
        out << '\n';
    }
    return out.str();
}

std::string trajectory_csv_text(const Trajectory& traj) {
    std::ostringstream out;
    out << "t_s,vout2_V,vout1_V\n";
    for (size_t i = 0; i < traj.t.size(); ++i) {
        out << format_num(traj.t[i]) << ',' << format_num(traj.vout2[i]) << ','
            << format_num(traj.vout1[i]) << '\n';
    }
    return out.str();
}

std::string ttf_csv_text(const TtfBatch& batch) {
    std::ostringstream out;
    out << "experiment,seed,ttf_s,censored\n";
    for (const ExperimentRecord& r : batch.experiments) {
        out << r.index << ',' << stream_seed(batch.base_seed, r.stream) << ',';
        if (r.ttf) out << format_num(*r.ttf);
        out << ',' << (r.censored ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string mttf_csv_text(const std::vector<MttfSummaryRow>& rows) {
    std::ostringstream out;
    out << "dV1_mV,dV2_mV,mttf_s,stderr_s,n_effective,censored_count\n";
    for (const MttfSummaryRow& r : rows) {
        out << format_num(r.dv1 * 1e3) << ',' << format_num(r.dv2 * 1e3) << ','
            << format_num(r.est.mean) << ',';
        if (r.est.n_effective >= 2) out << format_num(r.est.std_error);
        out << ',' << r.est.n_effective << ',' << r.est.censored_count << '\n';
    }
    return out.str();
}

std::string compare_csv_text(const std::vector<CompareRow>& rows) {
    std::ostringstream out;
    out << "dv_mV,mttf_sim_s,stderr_s,mttf_kish_s,mttf_nobile_s\n";
    for (const CompareRow& r : rows) {
        out << format_num(r.dv * 1e3) << ',' << format_num(r.mttf_sim) << ','
            << format_num(r.stderr_sim) << ',' << format_num(r.mttf_kish) << ','
            << format_num(r.mttf_nobile) << '\n';
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error(path + ": write failed");
}

std::string manifest_json_text(const RunManifest& m) {
    nlohmann::json j;
    j["command"] = m.command;
    j["config"] = nlohmann::json::parse(m.config_json);
    j["seed"] = m.seed;
    j["threads"] = m.threads;
    j["code_version"] = {{"version", m.code_version}, {"git_rev", m.git_rev}};
    j["timestamps"] = {{"started_utc", m.started_utc},
                       {"finished_utc", m.finished_utc}};
    j["outputs"] = m.outputs;
    return j.dump(2) + "\n";
}

std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}
