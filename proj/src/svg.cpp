#include "sram/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sram {

namespace {

constexpr double kWidth = 640.0, kHeight = 480.0;
constexpr double kMarginL = 72.0, kMarginR = 24.0;
constexpr double kMarginT = 34.0, kMarginB = 54.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string fmt1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

// Linear data-to-pixel mapping for one plot frame.
struct Frame {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

    double px(double x) const {
        return kMarginL + (x - xmin) / (xmax - xmin) * plot_w();
    }
    double py(double y) const {
        return kMarginT + (ymax - y) / (ymax - ymin) * plot_h();
    }
    static double plot_w() { return kWidth - kMarginL - kMarginR; }
    static double plot_h() { return kHeight - kMarginT - kMarginB; }
};

double nice_step(double span, int target_ticks) {
    double raw = span / std::max(1, target_ticks);
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double step = 10.0;
    if (frac <= 1.0) step = 1.0;
    else if (frac <= 2.0) step = 2.0;
    else if (frac <= 5.0) step = 5.0;
    return step * mag;
}

void open_svg(std::ostringstream& s, const std::string& title) {
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << kWidth / 2
      << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">"
      << title << "</text>\n";
}

void axes_box(std::ostringstream& s) {
    s << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
      << Frame::plot_w() << "\" height=\"" << Frame::plot_h()
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

void axis_labels(std::ostringstream& s, const std::string& xlabel,
                 const std::string& ylabel) {
    s << "<text x=\"" << kMarginL + Frame::plot_w() / 2 << "\" y=\""
      << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << xlabel << "</text>\n";
    s << "<text x=\"18\" y=\"" << kMarginT + Frame::plot_h() / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << kMarginT + Frame::plot_h() / 2 << ")\">" << ylabel << "</text>\n";
}

void linear_ticks_x(std::ostringstream& s, const Frame& f, double scale) {
    double step = nice_step((f.xmax - f.xmin), 6);
    double first = std::ceil(f.xmin / step - 1e-9) * step;
    for (double x = first; x <= f.xmax + 1e-9 * step; x += step) {
        double px = f.px(x);
        s << "<line x1=\"" << px << "\" y1=\"" << kMarginT + Frame::plot_h()
          << "\" x2=\"" << px << "\" y2=\"" << kMarginT + Frame::plot_h() + 5
          << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << px << "\" y=\"" << kMarginT + Frame::plot_h() + 18
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"11\">"
          << fmt(x * scale) << "</text>\n";
    }
}

void linear_ticks_y(std::ostringstream& s, const Frame& f, double scale) {
    double step = nice_step((f.ymax - f.ymin), 6);
    double first = std::ceil(f.ymin / step - 1e-9) * step;
    for (double y = first; y <= f.ymax + 1e-9 * step; y += step) {
        double py = f.py(y);
        s << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << py << "\" x2=\""
          << kMarginL << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << kMarginL - 8 << "\" y=\"" << py + 4
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
             "font-size=\"11\">"
          << fmt(y * scale) << "</text>\n";
    }
}

template <typename GetX, typename GetY>
void polyline(std::ostringstream& s, const Frame& f, size_t n, GetX gx, GetY gy,
              const char* color, double width) {
    size_t stride = n > 20000 ? (n + 19999) / 20000 : 1;
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
      << width << "\" points=\"";
    for (size_t i = 0; i < n; i += stride) {
        s << fmt1(f.px(gx(i))) << ',' << fmt1(f.py(gy(i))) << ' ';
    }
    if (stride > 1 && n > 0)
        s << fmt1(f.px(gx(n - 1))) << ',' << fmt1(f.py(gy(n - 1)));
    s << "\"/>\n";
}

void legend_entry(std::ostringstream& s, double x, double y, const char* color,
                  const std::string& label) {
    s << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 22
      << "\" y2=\"" << y << "\" stroke=\"" << color
      << "\" stroke-width=\"2.5\"/>\n";
    s << "<text x=\"" << x + 28 << "\" y=\"" << y + 4
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << label
      << "</text>\n";
}

}  // namespace

std::string butterfly_svg(const ButterflyData& b, const SnmResult* snm_result) {
    std::ostringstream s;
    std::string title =
        b.classification == Classification::Functional
            ? (snm_result
                   ? "butterfly plot (functional, SNM = " +
                         fmt(snm_result->snm * 1e3) + " mV)"
                   : std::string("butterfly plot (functional)"))
            : "butterfly plot (defective)";
    open_svg(s, title);
    Frame f;
    f.xmin = 0.0;
    f.xmax = b.vdd;
    f.ymin = 0.0;
    f.ymax = b.vdd;
    axes_box(s);
    linear_ticks_x(s, f, 1e3);
    linear_ticks_y(s, f, 1e3);
    axis_labels(s, "vin1 = vout2 (mV)", "vout1 = vin2 (mV)");

    if (snm_result) {
        for (const SnmSquare* sq :
             {&snm_result->lobe_upper, &snm_result->lobe_lower}) {
            double x0 = std::min(sq->ax, sq->bx), y0 = std::min(sq->ay, sq->by);
            double w = std::abs(sq->bx - sq->ax), h = std::abs(sq->by - sq->ay);
            s << "<rect x=\"" << fmt1(f.px(x0)) << "\" y=\""
              << fmt1(f.py(y0 + h)) << "\" width=\""
              << fmt1(w / (f.xmax - f.xmin) * Frame::plot_w()) << "\" height=\""
              << fmt1(h / (f.ymax - f.ymin) * Frame::plot_h())
              << "\" fill=\"#2e8b57\" fill-opacity=\"0.15\" "
                 "stroke=\"#2e8b57\" stroke-width=\"1.5\"/>\n";
        }
    }

    const auto& c1 = b.curve1.samples;
    polyline(
        s, f, c1.size(), [&](size_t i) { return c1[i].vin; },
        [&](size_t i) { return c1[i].vout; }, "#1f4e9e", 2.0);
    // Second curve mirrored about the diagonal into shared axes.
    const auto& c2 = b.curve2_reflected.samples;
    polyline(
        s, f, c2.size(), [&](size_t i) { return c2[i].vout; },
        [&](size_t i) { return c2[i].vin; }, "#b2332a", 2.0);

    for (const Crossing& c : b.crossings) {
        s << "<circle cx=\"" << fmt1(f.px(c.x)) << "\" cy=\"" << fmt1(f.py(c.y))
          << "\" r=\"4\" fill=\"black\"/>\n";
    }

    legend_entry(s, kMarginL + 10, kMarginT + 14, "#1f4e9e", "inverter 1 VTC");
    legend_entry(s, kMarginL + 10, kMarginT + 32, "#b2332a",
                 "inverter 2 VTC (mirrored)");
    s << "</svg>\n";
    return s.str();
}

std::string sweep_svg(const std::vector<CellRecord>& grid,
                      const SweepSpec& spec) {
    std::ostringstream s;
    open_svg(s, "variability map: functional / marginal / defective");
    Frame f;
    double half = spec.step / 2.0;
    f.xmin = spec.range_min - half;
    f.xmax = spec.range_max + half;
    f.ymin = spec.range_min - half;
    f.ymax = spec.range_max + half;

    double cw = spec.step / (f.xmax - f.xmin) * Frame::plot_w() + 0.5;
    double ch = spec.step / (f.ymax - f.ymin) * Frame::plot_h() + 0.5;
    for (const CellRecord& r : grid) {
        const char* color = "#999999";
        switch (r.cls) {
            case CellClass::Functional: color = "#2e8b57"; break;
            case CellClass::Marginal: color = "#ff8c00"; break;
            case CellClass::Defective: color = "#c0392b"; break;
            case CellClass::Error: color = "#999999"; break;
        }
        s << "<rect x=\"" << fmt1(f.px(r.dv1 - half)) << "\" y=\""
          << fmt1(f.py(r.dv2 + half)) << "\" width=\"" << fmt1(cw)
          << "\" height=\"" << fmt1(ch) << "\" fill=\"" << color << "\"/>\n";
    }
    axes_box(s);
    linear_ticks_x(s, f, 1e3);
    linear_ticks_y(s, f, 1e3);
    axis_labels(s, "dV1 (mV)", "dV2 (mV)");

    legend_entry(s, kMarginL + 10, kMarginT + 14, "#2e8b57", "functional");
    legend_entry(s, kMarginL + 10, kMarginT + 32, "#ff8c00",
                 "marginal (low SNM)");
    legend_entry(s, kMarginL + 10, kMarginT + 50, "#c0392b", "defective");
    s << "</svg>\n";
    return s.str();
}

std::string trajectory_svg(const Trajectory& traj, const EquilibriumSet* eq,
                           std::optional<double> ttf) {
    std::ostringstream s;
    open_svg(s, ttf ? "transient: bit flip at t = " + fmt(*ttf) + " s"
                    : "transient: no flip within horizon");
    Frame f;
    f.xmin = traj.t.empty() ? 0.0 : traj.t.front();
    f.xmax = traj.t.empty() ? 1.0 : traj.t.back();
    if (f.xmax <= f.xmin) f.xmax = f.xmin + 1.0;
    double vmin = 0.0, vmax = 0.0;
    for (size_t i = 0; i < traj.t.size(); ++i) {
        vmin = std::min({vmin, traj.vout2[i], traj.vout1[i]});
        vmax = std::max({vmax, traj.vout2[i], traj.vout1[i]});
    }
    double pad = 0.05 * (vmax - vmin + 1e-12);
    f.ymin = vmin - pad;
    f.ymax = vmax + pad;
    axes_box(s);
    linear_ticks_x(s, f, 1.0);
    linear_ticks_y(s, f, 1e3);
    axis_labels(s, "t (s)", "node voltage (mV)");

    if (eq) {
        for (auto [v, color, name] :
             {std::tuple<double, const char*, const char*>{eq->unstable.x,
                                                           "#1f4e9e", "X_M"},
              std::tuple<double, const char*, const char*>{eq->unstable.y,
                                                           "#b2332a", "Y_M"}}) {
            s << "<line x1=\"" << kMarginL << "\" y1=\"" << fmt1(f.py(v))
              << "\" x2=\"" << kMarginL + Frame::plot_w() << "\" y2=\""
              << fmt1(f.py(v)) << "\" stroke=\"" << color
              << "\" stroke-dasharray=\"6 4\" stroke-width=\"1\"/>\n";
            s << "<text x=\"" << kMarginL + Frame::plot_w() - 4 << "\" y=\""
              << fmt1(f.py(v) - 4)
              << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
                 "font-size=\"11\" fill=\""
              << color << "\">" << name << "</text>\n";
        }
    }
    if (ttf) {
        s << "<line x1=\"" << fmt1(f.px(*ttf)) << "\" y1=\"" << kMarginT
          << "\" x2=\"" << fmt1(f.px(*ttf)) << "\" y2=\""
          << kMarginT + Frame::plot_h()
          << "\" stroke=\"black\" stroke-dasharray=\"4 4\"/>\n";
    }

    polyline(
        s, f, traj.t.size(), [&](size_t i) { return traj.t[i]; },
        [&](size_t i) { return traj.vout2[i]; }, "#1f4e9e", 1.5);
    polyline(
        s, f, traj.t.size(), [&](size_t i) { return traj.t[i]; },
        [&](size_t i) { return traj.vout1[i]; }, "#b2332a", 1.5);

    legend_entry(s, kMarginL + 10, kMarginT + 14, "#1f4e9e", "vout2");
    legend_entry(s, kMarginL + 10, kMarginT + 32, "#b2332a", "vout1");
    s << "</svg>\n";
    return s.str();
}

std::string compare_svg(const std::vector<CompareRow>& rows) {
    std::ostringstream s;
    open_svg(s, "retention MTTF: simulation vs closed-form predictors");
    Frame f;
    double lmin = 1e300, lmax = -1e300;
    f.xmin = 1e300;
    f.xmax = -1e300;
    for (const CompareRow& r : rows) {
        f.xmin = std::min(f.xmin, r.dv);
        f.xmax = std::max(f.xmax, r.dv);
        for (double v : {r.mttf_sim, r.mttf_kish, r.mttf_nobile}) {
            if (v > 0.0 && std::isfinite(v)) {
                lmin = std::min(lmin, std::log10(v));
                lmax = std::max(lmax, std::log10(v));
            }
        }
    }
    if (rows.empty() || lmin > lmax) {
        f.xmin = 0;
        f.xmax = 1;
        lmin = 0;
        lmax = 1;
    }
    if (f.xmax <= f.xmin) {
        f.xmin -= 1e-3;
        f.xmax += 1e-3;
    }
    double xpad = 0.05 * (f.xmax - f.xmin);
    f.xmin -= xpad;
    f.xmax += xpad;
    f.ymin = std::floor(lmin);
    f.ymax = std::ceil(lmax);
    if (f.ymax <= f.ymin) f.ymax = f.ymin + 1;
    axes_box(s);
    linear_ticks_x(s, f, 1e3);
    // Decade ticks on the log axis.
    int dec_step = std::max(1, static_cast<int>((f.ymax - f.ymin) / 8));
    for (int d = static_cast<int>(f.ymin); d <= static_cast<int>(f.ymax);
         d += dec_step) {
        double py = f.py(d);
        s << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << fmt1(py)
          << "\" x2=\"" << kMarginL << "\" y2=\"" << fmt1(py)
          << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << kMarginL - 8 << "\" y=\"" << fmt1(py + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
             "font-size=\"11\">1e"
          << d << "</text>\n";
    }
    axis_labels(s, "dV1 = -dV2 (mV)", "MTTF (s, log scale)");

    auto log_or = [&](double v) {
        return (v > 0.0 && std::isfinite(v)) ? std::log10(v) : f.ymin;
    };
    struct Series {
        const char* color;
        const char* label;
        double CompareRow::* field;
    };
    for (const Series& sr :
         {Series{"#111111", "simulation", &CompareRow::mttf_sim},
          Series{"#ff8c00", "Kish formula", &CompareRow::mttf_kish},
          Series{"#2e8b57", "Nobile formula", &CompareRow::mttf_nobile}}) {
        polyline(
            s, f, rows.size(), [&](size_t i) { return rows[i].dv; },
            [&](size_t i) { return log_or(rows[i].*(sr.field)); }, sr.color,
            2.0);
        for (const CompareRow& r : rows) {
            s << "<circle cx=\"" << fmt1(f.px(r.dv)) << "\" cy=\""
              << fmt1(f.py(log_or(r.*(sr.field)))) << "\" r=\"3.5\" fill=\""
              << sr.color << "\"/>\n";
        }
    }
    // Error bars on the simulated series.
    for (const CompareRow& r : rows) {
        if (!(r.stderr_sim > 0.0) || !(r.mttf_sim > 0.0)) continue;
        double lo = r.mttf_sim - r.stderr_sim;
        double hi = r.mttf_sim + r.stderr_sim;
        if (lo <= 0.0) lo = r.mttf_sim / 10.0;
        s << "<line x1=\"" << fmt1(f.px(r.dv)) << "\" y1=\""
          << fmt1(f.py(std::log10(lo))) << "\" x2=\"" << fmt1(f.px(r.dv))
          << "\" y2=\"" << fmt1(f.py(std::log10(hi)))
          << "\" stroke=\"#111111\" stroke-width=\"1.5\"/>\n";
    }

    legend_entry(s, kMarginL + 10, kMarginT + 14, "#111111",
                 "simulation (mean of flips)");
    legend_entry(s, kMarginL + 10, kMarginT + 32, "#ff8c00", "Kish formula");
    legend_entry(s, kMarginL + 10, kMarginT + 50, "#2e8b57",
                 "Nobile formula");
    s << "</svg>\n";
    return s.str();
}

}
