#include "sram/config.hpp"

#include "sram/constants.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace sram {

using nlohmann::json;

AppConfig default_config() {
    AppConfig cfg;

    MosParams nmos;
    nmos.polarity = Polarity::NType;
    nmos.I0 = 1e-8;
    nmos.Vth = 0.30;
    nmos.n = 2.4;

    MosParams pmos = nmos;
    pmos.polarity = Polarity::PType;

    LatchConfig& latch = cfg.latch;
    latch.vdd = 0.2;
    latch.temperature = 300.0;
    latch.C1 = 4.0e-15;
    latch.C2 = 4.0e-15;
    latch.access_noise = 4.0e-27;
    latch.inv1.nmos = nmos;
    latch.inv1.pmos = pmos;
    latch.inv1.dV = 0.0;
    latch.inv2 = latch.inv1;

    double ut = thermal_voltage(latch.temperature);
    latch.inv1.nmos.UT = ut;
    latch.inv1.pmos.UT = ut;
    latch.inv2.nmos.UT = ut;
    latch.inv2.pmos.UT = ut;

    cfg.sweep.range_min = -0.1;
    cfg.sweep.range_max = 0.1;
    cfg.sweep.step = 1e-3;
    cfg.sweep.snm_marginal_threshold = 0.010;

    cfg.noise = make_noise_config(1e9, 1e-2, 100, 1);
    cfg.noise.decimation = 100;
    return cfg;
}

namespace {

json mos_to_json(const MosParams& p) {
    return json{{"I0_A", p.I0}, {"Vth_V", p.Vth}, {"n", p.n}};
}

json inverter_to_json(const InverterParams& inv) {
    return json{{"nmos", mos_to_json(inv.nmos)}, {"pmos", mos_to_json(inv.pmos)}};
}

json app_to_json(const AppConfig& cfg) {
    const LatchConfig& l = cfg.latch;
    json j;
    j["latch"] = json{
        {"vdd_V", l.vdd},
        {"temperature_K", l.temperature},
        {"C1_F", l.C1},
        {"C2_F", l.C2},
        {"access_noise_A2_per_Hz", l.access_noise},
        {"dV1_V", l.inv1.dV},
        {"dV2_V", l.inv2.dV},
        {"inverter1", inverter_to_json(l.inv1)},
        {"inverter2", inverter_to_json(l.inv2)},
    };
    j["sweep"] = json{
        {"range_min_V", cfg.sweep.range_min},
        {"range_max_V", cfg.sweep.range_max},
        {"step_V", cfg.sweep.step},
        {"snm_marginal_threshold_V", cfg.sweep.snm_marginal_threshold},
    };
    j["noise"] = json{
        {"fmax_Hz", cfg.noise.fmax},
        {"t_max_s", cfg.noise.t_max},
        {"n_experiments", cfg.noise.n_experiments},
        {"seed", cfg.noise.seed},
        {"record_trajectory", cfg.noise.record_trajectory},
        {"decimation", cfg.noise.decimation},
    };
    return j;
}

[[noreturn]] void fail_key(const std::string& origin, const std::string& path,
                           const std::string& what) {
    throw ConfigError(origin + ": key \"" + path + "\": " + what);
}

template <typename T>
T get_field(const std::string& origin, const json& j, const std::string& path,
            const char* key) {
    std::string full = path.empty() ? key : path + "." + key;
    auto it = j.find(key);
    if (it == j.end()) fail_key(origin, full, "missing");
    try {
        return it->get<T>();
    } catch (const json::exception& e) {
        fail_key(origin, full, e.what());
    }
}

MosParams mos_from_json(const std::string& origin, const json& j,
                        const std::string& path, Polarity pol) {
    MosParams p;
    p.polarity = pol;
    p.I0 = get_field<double>(origin, j, path, "I0_A");
    p.Vth = get_field<double>(origin, j, path, "Vth_V");
    p.n = get_field<double>(origin, j, path, "n");
    if (!(p.I0 > 0.0)) fail_key(origin, path + ".I0_A", "must be > 0");
    if (!(p.n >= 1.0)) fail_key(origin, path + ".n", "must be >= 1");
    return p;
}

InverterParams inverter_from_json(const std::string& origin, const json& j,
                                  const std::string& path) {
    InverterParams inv;
    auto nm = j.find("nmos");
    auto pm = j.find("pmos");
    if (nm == j.end()) fail_key(origin, path + ".nmos", "missing");
    if (pm == j.end()) fail_key(origin, path + ".pmos", "missing");
    inv.nmos = mos_from_json(origin, *nm, path + ".nmos", Polarity::NType);
    inv.pmos = mos_from_json(origin, *pm, path + ".pmos", Polarity::PType);
    return inv;
}

}  // namespace

std::string config_to_json(const AppConfig& cfg) {
    return app_to_json(cfg).dump(2) + "\n";
}

AppConfig config_from_json(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        if (byte > text.size()) byte = text.size();
        size_t line = 1, col = 1;
        for (size_t i = 0; i < byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(origin + ":" + std::to_string(line) + ":" +
                          std::to_string(col) + ": " + e.what());
    }

    AppConfig cfg = default_config();

    auto lj = j.find("latch");
    if (lj != j.end()) {
        LatchConfig& l = cfg.latch;
        l.vdd = get_field<double>(origin, *lj, "latch", "vdd_V");
        l.temperature = get_field<double>(origin, *lj, "latch", "temperature_K");
        l.C1 = get_field<double>(origin, *lj, "latch", "C1_F");
        l.C2 = get_field<double>(origin, *lj, "latch", "C2_F");
        l.access_noise =
            get_field<double>(origin, *lj, "latch", "access_noise_A2_per_Hz");
        auto i1 = lj->find("inverter1");
        auto i2 = lj->find("inverter2");
        if (i1 == lj->end()) fail_key(origin, "latch.inverter1", "missing");
        if (i2 == lj->end()) fail_key(origin, "latch.inverter2", "missing");
        l.inv1 = inverter_from_json(origin, *i1, "latch.inverter1");
        l.inv2 = inverter_from_json(origin, *i2, "latch.inverter2");
        l.inv1.dV = get_field<double>(origin, *lj, "latch", "dV1_V");
        l.inv2.dV = get_field<double>(origin, *lj, "latch", "dV2_V");

        if (!(l.vdd > 0.0)) fail_key(origin, "latch.vdd_V", "must be > 0");
        if (!(l.C1 > 0.0) || !(l.C2 > 0.0))
            fail_key(origin, "latch.C1_F/C2_F", "must be > 0");
        if (l.access_noise < 0.0)
            fail_key(origin, "latch.access_noise_A2_per_Hz", "must be >= 0");
        if (!(l.temperature > 0.0))
            fail_key(origin, "latch.temperature_K", "must be > 0");

        double ut = thermal_voltage(l.temperature);
        l.inv1.nmos.UT = ut;
        l.inv1.pmos.UT = ut;
        l.inv2.nmos.UT = ut;
        l.inv2.pmos.UT = ut;
    }

    auto sj = j.find("sweep");
    if (sj != j.end()) {
        SweepSpec& s = cfg.sweep;
        s.range_min = get_field<double>(origin, *sj, "sweep", "range_min_V");
        s.range_max = get_field<double>(origin, *sj, "sweep", "range_max_V");
        s.step = get_field<double>(origin, *sj, "sweep", "step_V");
        s.snm_marginal_threshold =
            get_field<double>(origin, *sj, "sweep", "snm_marginal_threshold_V");
        if (!(s.step > 0.0)) fail_key(origin, "sweep.step_V", "must be > 0");
        if (!(s.range_min < s.range_max))
            fail_key(origin, "sweep.range_min_V", "must be < range_max_V");
    }

    auto nj = j.find("noise");
    if (nj != j.end()) {
        double fmax = get_field<double>(origin, *nj, "noise", "fmax_Hz");
        double t_max = get_field<double>(origin, *nj, "noise", "t_max_s");
        int n_exp = get_field<int>(origin, *nj, "noise", "n_experiments");
        uint64_t seed = get_field<uint64_t>(origin, *nj, "noise", "seed");
        if (!(fmax > 0.0)) fail_key(origin, "noise.fmax_Hz", "must be > 0");
        if (!(t_max > 0.0)) fail_key(origin, "noise.t_max_s", "must be > 0");
        if (n_exp < 1) fail_key(origin, "noise.n_experiments", "must be >= 1");
        cfg.noise = make_noise_config(fmax, t_max, n_exp, seed);
        if (nj->contains("record_trajectory"))
            cfg.noise.record_trajectory =
                get_field<bool>(origin, *nj, "noise", "record_trajectory");
        if (nj->contains("decimation")) {
            cfg.noise.decimation = get_field<int>(origin, *nj, "noise", "decimation");
            if (cfg.noise.decimation < 1)
                fail_key(origin, "noise.decimation", "must be >= 1");
        }
    }

    return cfg;
}

AppConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str(), path);
}

void save_config(const AppConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    out << config_to_json(cfg);
    if (!out) throw ConfigError(path + ": write failed");
}

}
