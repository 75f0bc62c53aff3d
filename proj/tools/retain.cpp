#include "sram/config.hpp"
#include "sram/csvio.hpp"
#include "sram/dc.hpp"
#include "sram/linearized.hpp"
#include "sram/noise.hpp"
#include "sram/predictors.hpp"
#include "sram/rng.hpp"
#include "sram/svg.hpp"
#include "sram/varmap.hpp"
#include "sram/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace sram;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCensoring = 4;

// Filesystem tag for a voltage in mV: 55 -> "55", -55 -> "m55", 55.5 -> "55p5".
std::string dv_tag(double dv_volts) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", dv_volts * 1e3);
    std::string s = buf;
    for (char& c : s) {
        if (c == '.') c = 'p';
        if (c == '-') c = 'm';
    }
    return s;
}

std::string join_command(int argc, char** argv) {
    std::string cmd;
    for (int i = 0; i < argc; ++i) {
        if (i) cmd += ' ';
        std::string arg = argv[i];
        if (arg.find(' ') != std::string::npos)
            cmd += '"' + arg + '"';
        else
            cmd += arg;
    }
    return cmd;
}

// Shared run state: effective config, output directory, manifest assembly.
struct RunContext {
    AppConfig cfg;
    std::filesystem::path out;
    unsigned threads = 0;
    RunManifest manifest;

    void write(const std::string& name, const std::string& text) {
        std::filesystem::path p = out / name;
        write_text_file(p.string(), text);
        manifest.outputs.push_back(p.string());
    }

    void finish() {
        manifest.config_json = config_to_json(cfg);
        manifest.finished_utc = iso8601_utc_now();
        std::filesystem::path p = out / "manifest.json";
        manifest.outputs.push_back(p.string());
        write_text_file(p.string(), manifest_json_text(manifest));
    }
};

json vec2_json(const Vec2& v) { return json::array({v.x, v.y}); }

json eigenvalues_json(const Eigen2& e) {
    return json::array({json::array({e.lambda1.real(), e.lambda1.imag()}),
                        json::array({e.lambda2.real(), e.lambda2.imag()})});
}

json equilibrium_json(const EquilibriumPoint& p) {
    Eigen2 e = eigen2(p.jacobian);
    return json{
        {"x_V", p.x},
        {"y_V", p.y},
        {"stable", p.stable},
        {"positive_eigenvalues", p.positive_eigenvalues},
        {"residual", p.residual},
        {"jacobian_per_s", json::array({json::array({p.jacobian.a11, p.jacobian.a12}),
                                        json::array({p.jacobian.a21, p.jacobian.a22})})},
        {"eigenvalues_per_s", eigenvalues_json(e)},
    };
}

json linearized_json(const LinearizedModel& m) {
    return json{
        {"fp_Hz", m.fp},          {"sigma1_V", m.sigma1},
        {"sigma2_V", m.sigma2},   {"eigenvalues", eigenvalues_json(m.eig)},
        {"flip_direction", vec2_json(m.flip_direction)},
        {"oscillatory", m.oscillatory},
    };
}

json mttf_value_json(const MttfValue& v) {
    json j;
    if (v.overflow || !std::isfinite(v.mttf))
        j["mttf_s"] = nullptr;
    else
        j["mttf_s"] = v.mttf;
    j["log_mttf"] = v.log_mttf;
    j["overflow"] = v.overflow;
    return j;
}

LatchConfig latch_with_dv(const AppConfig& cfg, std::optional<double> dv1,
                          std::optional<double> dv2) {
    LatchConfig latch = cfg.latch;
    if (dv1) latch.inv1.dV = *dv1;
    if (dv2) latch.inv2.dV = *dv2;
    return latch;
}

// ---- subcommand option blocks ----

struct ButterflyOpts {
    std::optional<double> dv1, dv2;
    double step = 1e-3;
    bool no_svg = false;
};

struct SweepOpts {
    std::optional<double> min, max, step, threshold;
    bool no_svg = false;
};

struct EquilibriaOpts {
    std::optional<double> dv1, dv2;
};

struct TransientOpts {
    std::optional<double> dv1, dv2, tmax, fmax;
    uint64_t index = 0;
    int decimation = 100;
    bool no_svg = false;
};

struct MttfOpts {
    std::optional<double> dv1, dv2, tmax, fmax;
    std::vector<double> dv_list;
    std::optional<int> n;
};

struct PredictOpts {
    std::optional<double> dv1, dv2;
    std::vector<double> dv_list;
};

struct CompareOpts {
    std::vector<double> dv_list;
    std::optional<double> tmax, fmax;
    std::optional<int> n;
    bool no_svg = false;
};

void run_butterfly(RunContext& ctx, const ButterflyOpts& o) {
    LatchConfig latch = latch_with_dv(ctx.cfg, o.dv1, o.dv2);
    ButterflyData b = butterfly(latch, o.step);

    json report;
    report["dV1_V"] = latch.inv1.dV;
    report["dV2_V"] = latch.inv2.dV;
    report["classification"] =
        b.classification == Classification::Functional ? "functional"
                                                       : "defective";
    json crossings = json::array();
    for (const Crossing& c : b.crossings)
        crossings.push_back(json::array({c.x, c.y}));
    report["crossings_V"] = crossings;

    std::optional<SnmResult> snm_result;
    if (b.classification == Classification::Functional) {
        snm_result = snm(latch, b);
        auto square_json = [](const SnmSquare& sq) {
            return json{{"side_V", sq.side},
                        {"corner_a_V", json::array({sq.ax, sq.ay})},
                        {"corner_b_V", json::array({sq.bx, sq.by})}};
        };
        report["snm_V"] = snm_result->snm;
        report["snm_mV"] = snm_result->snm * 1e3;
        report["lobe_upper"] = square_json(snm_result->lobe_upper);
        report["lobe_lower"] = square_json(snm_result->lobe_lower);
        report["limiting_side"] =
            snm_result->limiting_side == 0 ? "upper" : "lower";
    }

    ctx.write("butterfly.csv", butterfly_csv_text(b));
    ctx.write("snm.json", report.dump(2) + "\n");
    if (!o.no_svg)
        ctx.write("butterfly.svg",
                  butterfly_svg(b, snm_result ? &*snm_result : nullptr));
}

void run_sweep(RunContext& ctx, const SweepOpts& o) {
    SweepSpec spec = ctx.cfg.sweep;
    if (o.min) spec.range_min = *o.min;
    if (o.max) spec.range_max = *o.max;
    if (o.step) spec.step = *o.step;
    if (o.threshold) spec.snm_marginal_threshold = *o.threshold;

    std::vector<CellRecord> grid = sweep(ctx.cfg.latch, spec, ctx.threads);
    WorstCaseLine line = worst_case_line(grid, spec);

    int n_functional = 0, n_marginal = 0, n_defective = 0, n_error = 0;
    for (const CellRecord& r : grid) {
        switch (r.cls) {
            case CellClass::Functional: ++n_functional; break;
            case CellClass::Marginal: ++n_marginal; break;
            case CellClass::Defective: ++n_defective; break;
            case CellClass::Error: ++n_error; break;
        }
    }
    json summary;
    summary["grid_points"] = grid.size();
    summary["functional"] = n_functional;
    summary["marginal"] = n_marginal;
    summary["defective"] = n_defective;
    summary["error"] = n_error;
    if (line.boundary_lo && line.boundary_hi) {
        summary["worst_case_boundary_lo_mV"] = *line.boundary_lo * 1e3;
        summary["worst_case_boundary_hi_mV"] = *line.boundary_hi * 1e3;
    }

    ctx.write("sweep.csv", sweep_csv_text(grid));
    ctx.write("sweep_summary.json", summary.dump(2) + "\n");
    if (!o.no_svg) ctx.write("sweep.svg", sweep_svg(grid, spec));
}

void run_equilibria(RunContext& ctx, const EquilibriaOpts& o) {
    LatchConfig latch = latch_with_dv(ctx.cfg, o.dv1, o.dv2);
    EquilibriumSet eq = equilibria(latch);
    DistanceResult dist = distances(eq);
    LinearizedModel lin = linearize(latch, eq);

    json report;
    report["dV1_V"] = latch.inv1.dV;
    report["dV2_V"] = latch.inv2.dV;
    report["stable0"] = equilibrium_json(eq.stable0);
    report["stable1"] = equilibrium_json(eq.stable1);
    report["unstable"] = equilibrium_json(eq.unstable);
    report["distances"] = json{{"dX_V", dist.dx},
                               {"dY_V", dist.dy},
                               {"dY_alt_V", dist.dy_alt},
                               {"dvv_V", delta_vv(dist.dx, dist.dy)}};
    report["linearized"] = linearized_json(lin);

    ctx.write("equilibria.json", report.dump(2) + "\n");
}

void run_transient(RunContext& ctx, const TransientOpts& o) {
    LatchConfig latch = latch_with_dv(ctx.cfg, o.dv1, o.dv2);
    NoiseRunConfig ncfg = ctx.cfg.noise;
    if (o.fmax) ncfg = make_noise_config(*o.fmax, ncfg.t_max,
                                         ncfg.n_experiments, ncfg.seed);
    if (o.tmax) ncfg.t_max = *o.tmax;
    ncfg.record_trajectory = true;
    ncfg.decimation = o.decimation;

    std::optional<EquilibriumSet> eq;
    ButterflyData b = butterfly(latch);
    if (b.classification == Classification::Functional) eq = equilibria(latch);

    TransientResult tr =
        transient(latch, ncfg, o.index, eq ? &*eq : nullptr);

    json report;
    report["dV1_V"] = latch.inv1.dV;
    report["dV2_V"] = latch.inv2.dV;
    report["experiment"] = o.index;
    report["seed"] = ncfg.seed;
    report["stream_seed"] = stream_seed(ncfg.seed, o.index);
    report["fmax_Hz"] = ncfg.fmax;
    report["dt_s"] = ncfg.dt;
    report["t_max_s"] = ncfg.t_max;
    report["censored"] = tr.censored;
    report["t_end_s"] = tr.t_end;
    report["ttf_s"] = tr.ttf ? json(*tr.ttf) : json(nullptr);
    report["t_xm_s"] = tr.t_xm ? json(*tr.t_xm) : json(nullptr);
    report["t_ym_s"] = tr.t_ym ? json(*tr.t_ym) : json(nullptr);

    ctx.write("trajectory.csv", trajectory_csv_text(tr.trajectory));
    ctx.write("transient.json", report.dump(2) + "\n");
    if (!o.no_svg)
        ctx.write("trajectory.svg",
                  trajectory_svg(tr.trajectory, eq ? &*eq : nullptr, tr.ttf));
}

std::vector<std::pair<double, double>> dv_pairs(
    const std::vector<double>& dv_list, std::optional<double> dv1,
    std::optional<double> dv2, const AppConfig& cfg) {
    std::vector<std::pair<double, double>> pairs;
    if (!dv_list.empty()) {
        for (double d : dv_list) pairs.emplace_back(d, -d);
    } else {
        pairs.emplace_back(dv1 ? *dv1 : cfg.latch.inv1.dV,
                           dv2 ? *dv2 : cfg.latch.inv2.dV);
    }
    return pairs;
}

void run_mttf(RunContext& ctx, const MttfOpts& o) {
    NoiseRunConfig ncfg = ctx.cfg.noise;
    if (o.fmax) ncfg = make_noise_config(*o.fmax, ncfg.t_max,
                                         ncfg.n_experiments, ncfg.seed);
    if (o.tmax) ncfg.t_max = *o.tmax;
    if (o.n) ncfg.n_experiments = *o.n;

    std::vector<MttfSummaryRow> rows;
    size_t k = 0;
    for (auto [dv1, dv2] : dv_pairs(o.dv_list, o.dv1, o.dv2, ctx.cfg)) {
        LatchConfig latch = latch_with_dv(ctx.cfg, dv1, dv2);
        MttfRun run = mttf_estimate(latch, ncfg, ctx.threads);
        ctx.write("ttf_" + std::to_string(k) + "_" + dv_tag(dv1) + "mV.csv",
                  ttf_csv_text(run.batch));
        MttfSummaryRow row;
        row.dv1 = dv1;
        row.dv2 = dv2;
        row.est = run.estimate;
        rows.push_back(row);
        ++k;
    }
    ctx.write("mttf.csv", mttf_csv_text(rows));
}

void run_predict(RunContext& ctx, const PredictOpts& o) {
    json out = json::array();
    for (auto [dv1, dv2] : dv_pairs(o.dv_list, o.dv1, o.dv2, ctx.cfg)) {
        LatchConfig latch = latch_with_dv(ctx.cfg, dv1, dv2);
        PredictorBundle pb = predict(latch);
        EquilibriumSet eq = equilibria(latch);
        LinearizedModel lin = linearize(latch, eq);
        json j;
        j["dV1_mV"] = dv1 * 1e3;
        j["dV2_mV"] = dv2 * 1e3;
        j["dX_V"] = pb.dx;
        j["dY_V"] = pb.dy;
        j["dvv_V"] = pb.dvv;
        j["sigma1_V"] = pb.sigma1;
        j["sigma2_V"] = pb.sigma2;
        j["sigma_vv_V"] = pb.sigma_vv;
        j["fp_Hz"] = pb.fp;
        j["z"] = pb.z;
        j["kish"] = mttf_value_json(pb.kish);
        j["nobile"] = mttf_value_json(pb.nobile);
        j["linearized"] = linearized_json(lin);
        out.push_back(j);
    }
    ctx.write("predict.json", out.dump(2) + "\n");
}

void run_compare(RunContext& ctx, const CompareOpts& o) {
    NoiseRunConfig ncfg = ctx.cfg.noise;
    if (o.fmax) ncfg = make_noise_config(*o.fmax, ncfg.t_max,
                                         ncfg.n_experiments, ncfg.seed);
    if (o.tmax) ncfg.t_max = *o.tmax;
    if (o.n) ncfg.n_experiments = *o.n;

    std::vector<MttfSummaryRow> mttf_rows;
    std::vector<CompareRow> rows;
    size_t k = 0;
    for (double dv : o.dv_list) {
        LatchConfig latch = latch_with_dv(ctx.cfg, dv, -dv);
        MttfRun run = mttf_estimate(latch, ncfg, ctx.threads);
        PredictorBundle pb = predict(latch);
        ctx.write("ttf_" + std::to_string(k) + "_" + dv_tag(dv) + "mV.csv",
                  ttf_csv_text(run.batch));
        MttfSummaryRow srow;
        srow.dv1 = dv;
        srow.dv2 = -dv;
        srow.est = run.estimate;
        mttf_rows.push_back(srow);

        CompareRow row;
        row.dv = dv;
        row.mttf_sim = run.estimate.mean;
        row.stderr_sim = run.estimate.std_error;
        row.mttf_kish = pb.kish.mttf;
        row.mttf_nobile = pb.nobile.mttf;
        rows.push_back(row);
        ++k;
    }
    ctx.write("mttf.csv", mttf_csv_text(mttf_rows));
    ctx.write("compare.csv", compare_csv_text(rows));
    if (!o.no_svg) ctx.write("compare.svg", compare_svg(rows));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "retain — ultra-low-voltage latch retention toolkit: DC transfer "
        "analysis, variability mapping, linearized noise statistics, "
        "transient Monte-Carlo bit-flip simulation, and closed-form MTTF "
        "predictors. All voltage inputs are in volts."};
    app.set_version_flag("--version",
                         std::string(kVersion) + " (" + kGitRev + ")");
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::optional<uint64_t> seed;
    unsigned threads = 0;
    app.add_option("--config", config_path,
                   "JSON config file (defaults used when omitted)");
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--seed", seed, "64-bit RNG seed (overrides config)");
    app.add_option("--threads", threads,
                   "worker threads (0 = hardware concurrency)");

    ButterflyOpts bo;
    CLI::App* cb = app.add_subcommand(
        "butterfly", "DC transfer curves, crossings, noise-margin squares");
    cb->fallthrough();
    cb->add_option("--dv1", bo.dv1, "inverter 1 input offset (V)");
    cb->add_option("--dv2", bo.dv2, "inverter 2 input offset (V)");
    cb->add_option("--step", bo.step, "VTC grid step (V), 0 < step <= 1e-3")
        ->capture_default_str();
    cb->add_flag("--no-svg", bo.no_svg, "skip SVG emission");

    SweepOpts so;
    CLI::App* cs = app.add_subcommand(
        "sweep", "double DC sweep over (dV1, dV2): classification map");
    cs->fallthrough();
    cs->add_option("--min", so.min, "axis minimum (V)");
    cs->add_option("--max", so.max, "axis maximum (V)");
    cs->add_option("--step", so.step, "axis step (V)");
    cs->add_option("--threshold", so.threshold,
                   "marginal SNM threshold (V)");
    cs->add_flag("--no-svg", so.no_svg, "skip SVG emission");

    EquilibriaOpts eo;
    CLI::App* ce = app.add_subcommand(
        "equilibria", "refined equilibrium points, distances, linearization");
    ce->fallthrough();
    ce->add_option("--dv1", eo.dv1, "inverter 1 input offset (V)");
    ce->add_option("--dv2", eo.dv2, "inverter 2 input offset (V)");

    TransientOpts to;
    CLI::App* ct = app.add_subcommand(
        "transient", "single noisy transient with trajectory recording");
    ct->fallthrough();
    ct->add_option("--dv1", to.dv1, "inverter 1 input offset (V)");
    ct->add_option("--dv2", to.dv2, "inverter 2 input offset (V)");
    ct->add_option("--tmax", to.tmax, "censoring horizon (s)");
    ct->add_option("--fmax", to.fmax, "noise bandwidth (Hz); dt = 1/(2 fmax)");
    ct->add_option("--index", to.index, "experiment index (RNG stream)")
        ->capture_default_str();
    ct->add_option("--decimation", to.decimation,
                   "record every k-th noise step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ct->add_flag("--no-svg", to.no_svg, "skip SVG emission");

    MttfOpts mo;
    CLI::App* cm = app.add_subcommand(
        "mttf", "mean time-to-failure over repeated experiments");
    cm->fallthrough();
    cm->add_option("--dv1", mo.dv1, "inverter 1 input offset (V)");
    cm->add_option("--dv2", mo.dv2, "inverter 2 input offset (V)");
    cm->add_option("--dv-list", mo.dv_list,
                   "comma-separated worst-case skews dV1 = -dV2 (V)")
        ->delimiter(',');
    cm->add_option("--n", mo.n, "experiments per operating point")
        ->check(CLI::PositiveNumber);
    cm->add_option("--tmax", mo.tmax, "censoring horizon (s)");
    cm->add_option("--fmax", mo.fmax, "noise bandwidth (Hz)");

    PredictOpts po;
    CLI::App* cp = app.add_subcommand(
        "predict", "closed-form MTTF predictor bundle (JSON)");
    cp->fallthrough();
    cp->add_option("--dv1", po.dv1, "inverter 1 input offset (V)");
    cp->add_option("--dv2", po.dv2, "inverter 2 input offset (V)");
    cp->add_option("--dv-list", po.dv_list,
                   "comma-separated worst-case skews dV1 = -dV2 (V)")
        ->delimiter(',');

    CompareOpts co;
    CLI::App* cc = app.add_subcommand(
        "compare", "simulated vs predicted MTTF across skews");
    cc->fallthrough();
    cc->add_option("--dv-list", co.dv_list,
                   "comma-separated worst-case skews dV1 = -dV2 (V)")
        ->delimiter(',')
        ->required();
    cc->add_option("--n", co.n, "experiments per operating point")
        ->check(CLI::PositiveNumber);
    cc->add_option("--tmax", co.tmax, "censoring horizon (s)");
    cc->add_option("--fmax", co.fmax, "noise bandwidth (Hz)");
    cc->add_flag("--no-svg", co.no_svg, "skip SVG emission");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        RunContext ctx;
        ctx.cfg = config_path.empty() ? default_config()
                                      : load_config(config_path);
        if (seed) ctx.cfg.noise.seed = *seed;
        ctx.threads = threads;
        ctx.out = out_dir;
        std::filesystem::create_directories(ctx.out);
        ctx.manifest.command = join_command(argc, argv);
        ctx.manifest.seed = ctx.cfg.noise.seed;
        ctx.manifest.threads = threads;
        ctx.manifest.code_version = kVersion;
        ctx.manifest.git_rev = kGitRev;
        ctx.manifest.started_utc = iso8601_utc_now();

        if (cb->parsed()) run_butterfly(ctx, bo);
        if (cs->parsed()) run_sweep(ctx, so);
        if (ce->parsed()) run_equilibria(ctx, eo);
        if (ct->parsed()) run_transient(ctx, to);
        if (cm->parsed()) run_mttf(ctx, mo);
        if (cp->parsed()) run_predict(ctx, po);
        if (cc->parsed()) run_compare(ctx, co);

        ctx.finish();
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CensoringError& e) {
        std::cerr << "error: " << e.what()
                  << "\nhint: raise --tmax (or noise.t_max_s in the config) "
                     "so more experiments reach a flip.\n";
        return kExitCensoring;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
