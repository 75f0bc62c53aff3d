#include "sram/dc.hpp"

#include "sram/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sram {

namespace {

constexpr double kCurrentResidual = 1e-15;  // A, VTC solve target
constexpr double kEndpointFixpointTol = 1e-9;   // V
constexpr double kCrossingDedupe = 1e-7;        // V

}  // namespace

double vtc_point(const InverterParams& inv, double vdd, double vin) {
    auto f = [&](double vout) { return inverter_node_current(vin, vout, inv, vdd); };
    BrentResult r = brent(f, 0.0, vdd, 1e-16);
    // Polish with a couple of Newton steps; the node current is strictly
    // decreasing in vout, so this is safe and pushes |I| to rounding level.
    double v = r.x;
    for (int it = 0; it < 4; ++it) {
        InverterDerivs d = inverter_node_derivs(vin, v, inv, vdd);
        if (std::abs(d.i) < kCurrentResidual || d.di_dvout == 0.0) break;
        double step = d.i / d.di_dvout;
        double vn = std::clamp(v - step, 0.0, vdd);
        if (std::abs(inverter_node_current(vin, vn, inv, vdd)) <= std::abs(d.i))
            v = vn;
        else
            break;
    }
    if (std::abs(inverter_node_current(vin, v, inv, vdd)) > kCurrentResidual)
        throw std::runtime_error("vtc_point: residual above 1e-15 A at vin=" +
                                 std::to_string(vin));
    return v;
}

Curve vtc(const InverterParams& inv, double vdd, double grid_step) {
    if (!(grid_step > 0.0) || grid_step > 1e-3 + 1e-12)
        throw std::invalid_argument("vtc: grid_step must be in (0, 1 mV]");
    int n = static_cast<int>(std::lround(vdd / grid_step));
    Curve c;
    c.samples.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        double vin = std::min(vdd, i * grid_step);
        c.samples.push_back({vin, vtc_point(inv, vdd, vin)});
    }
    return c;
}

namespace {

// Fixed-point mismatch of the cross-coupled pair along the x = vout2 axis:
// zero when (x, f1(x)) also lies on inverter 2's curve.
double pair_mismatch(const LatchConfig& latch, double x) {
    double y = vtc_point(latch.inv1, latch.vdd, x);
    return vtc_point(latch.inv2, latch.vdd, y) - x;
}

}  // namespace

ButterflyData butterfly(const LatchConfig& latch, double grid_step) {
    ButterflyData b;
    b.vdd = latch.vdd;
    b.curve1 = vtc(latch.inv1, latch.vdd, grid_step);
    b.curve2_reflected = vtc(latch.inv2, latch.vdd, grid_step);

    // Crossings: sign changes of the fixed-point mismatch g(x) on the grid,
    // refined by bracketed root finding.
    const auto& s1 = b.curve1.samples;
    std::vector<double> g(s1.size());
    for (size_t i = 0; i < s1.size(); ++i)
        g[i] = vtc_point(latch.inv2, latch.vdd, s1[i].vout) - s1[i].vin;

    std::vector<double> roots;
    for (size_t i = 0; i + 1 < s1.size(); ++i) {
        if (g[i] == 0.0) {
            roots.push_back(s1[i].vin);
            continue;
        }
        if ((g[i] > 0.0) != (g[i + 1] > 0.0)) {
            auto f = [&](double x) { return pair_mismatch(latch, x); };
            BrentResult r = brent(f, s1[i].vin, s1[i + 1].vin, 1e-14);
            roots.push_back(r.x);
        }
    }
    if (!s1.empty() && g.back() == 0.0) roots.push_back(s1.back().vin);

    // Where an inverter input clamps at a rail the reflected curve turns
    // vertical and g(x) never brackets the fixed point; test the domain
    // endpoints for the fixed-point property directly.
    for (double xe : {0.0, latch.vdd}) {
        if (std::abs(pair_mismatch(latch, xe)) < kEndpointFixpointTol) {
            bool dup = false;
            for (double r : roots)
                if (std::abs(r - xe) < kCrossingDedupe) dup = true;
            if (!dup) roots.push_back(xe);
        }
    }
    std::sort(roots.begin(), roots.end());
    // Dedupe near-coincident roots (tangency shows up as a tight pair).
    std::vector<double> unique_roots;
    for (double r : roots) {
        if (unique_roots.empty() || r - unique_roots.back() > kCrossingDedupe)
            unique_roots.push_back(r);
    }

    for (double x : unique_roots)
        b.crossings.push_back({x, vtc_point(latch.inv1, latch.vdd, x)});
    b.classification = b.crossings.size() == 3 ? Classification::Functional
                                               : Classification::Defective;
    return b;
}

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Rotated-frame coordinates: u = (x + y)/sqrt(2), w = (y - x)/sqrt(2).
// Curve 1 gives u as a function of w (w strictly decreasing along the curve);
// curve 2 reflected likewise (w strictly increasing in its own input).

struct LobeScan {
    const LatchConfig* latch;
    double vdd;
};

// Point on curve 1 at rotated ordinate w; returns u. The parameter x solves
// (f1(x) - x)/sqrt(2) = w.
double curve1_u_at_w(const LatchConfig& latch, double w, double x_lo, double x_hi) {
    auto h = [&](double x) {
        return (vtc_point(latch.inv1, latch.vdd, x) - x) / kSqrt2 - w;
    };
    BrentResult r = brent(h, x_lo, x_hi, 1e-15);
    double y = vtc_point(latch.inv1, latch.vdd, r.x);
    return (r.x + y) / kSqrt2;
}

// Point on reflected curve 2 at rotated ordinate w; parameter v = vin2 solves
// (v - f2(v))/sqrt(2) = w.
double curve2_u_at_w(const LatchConfig& latch, double w, double v_lo, double v_hi) {
    auto h = [&](double v) {
        return (v - vtc_point(latch.inv2, latch.vdd, v)) / kSqrt2 - w;
    };
    BrentResult r = brent(h, v_lo, v_hi, 1e-15);
    double x = vtc_point(latch.inv2, latch.vdd, r.x);
    return (x + r.x) / kSqrt2;
}

struct LobeResult {
    double gap = 0.0;  // max |u2 - u1| inside the lobe
    double w_at_max = 0.0;
    double u1 = 0.0, u2 = 0.0;
};

}  // namespace

SnmResult snm(const LatchConfig& latch, const ButterflyData& b) {
    if (b.classification != Classification::Functional)
        throw std::invalid_argument("snm: cell is defective (3 crossings required)");
    const double vdd = latch.vdd;

    // w of the three crossings (on both curves simultaneously).
    auto w_of = [&](const Crossing& c) { return (c.y - c.x) / kSqrt2; };
    double w_s1 = w_of(b.crossings[0]);   // crossing at smallest x: high-w stable
    double w_m = w_of(b.crossings[1]);
    double w_s0 = w_of(b.crossings[2]);
    // crossings are sorted by x and y = f1(x) is decreasing, so w is decreasing:
    // crossings[0] is the (low x, high y) state -> largest w.

    auto scan_lobe = [&](double w_a, double w_b, double sign) {
        // Scan w in the open interval (w_a, w_b), w_a < w_b.
        LobeResult res;
        const int kSteps = 201;
        double span = w_b - w_a;
        // Margin keeps the root-finders off the exactly-degenerate endpoints.
        double margin = span * 1e-6;
        auto gap_at = [&](double w) {
            double u1 = curve1_u_at_w(latch, w, 0.0, vdd);
            double u2 = curve2_u_at_w(latch, w, 0.0, vdd);
            return sign * (u1 - u2);
        };
        double best_w = 0.0, best = -1.0;
        for (int i = 1; i < kSteps; ++i) {
            double w = w_a + margin + (span - 2 * margin) * i / kSteps;
            double d = gap_at(w);
            if (d > best) {
                best = d;
                best_w = w;
            }
        }
        // Golden-section refinement around the best grid point.
        double step = (span - 2 * margin) / kSteps;
        double lo = std::max(w_a + margin, best_w - step);
        double hi = std::min(w_b - margin, best_w + step);
        const double kGold = 0.6180339887498949;
        double x1 = hi - kGold * (hi - lo), x2 = lo + kGold * (hi - lo);
        double f1v = gap_at(x1), f2v = gap_at(x2);
        for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
            if (f1v < f2v) {
                lo = x1; x1 = x2; f1v = f2v;
                x2 = lo + kGold * (hi - lo);
                f2v = gap_at(x2);
            } else {
                hi = x2; x2 = x1; f2v = f1v;
                x1 = hi - kGold * (hi - lo);
                f1v = gap_at(x1);
            }
        }
        res.w_at_max = 0.5 * (lo + hi);
        double u1 = curve1_u_at_w(latch, res.w_at_max, 0.0, vdd);
        double u2 = curve2_u_at_w(latch, res.w_at_max, 0.0, vdd);
        res.u1 = u1;
        res.u2 = u2;
        res.gap = sign * (u1 - u2);
        if (res.gap < 0.0) res.gap = 0.0;
        return res;
    };

    // Upper lobe: w between the unstable crossing and the high-w stable one.
    // There curve 1 lies right of curve 2 in u (u1 > u2). Lower lobe mirrored.
    LobeResult up = scan_lobe(w_m, w_s1, +1.0);
    LobeResult down = scan_lobe(w_s0, w_m, -1.0);

    auto to_square = [&](const LobeResult& lr) {
        SnmSquare s;
        s.side = lr.gap / kSqrt2;
        // Rotate the two gap endpoints back to the shared axes:
        // (u, w) -> x = (u - w)/sqrt(2), y = (u + w)/sqrt(2).
        s.ax = (lr.u1 - lr.w_at_max) / kSqrt2;
        s.ay = (lr.u1 + lr.w_at_max) / kSqrt2;
        s.bx = (lr.u2 - lr.w_at_max) / kSqrt2;
        s.by = (lr.u2 + lr.w_at_max) / kSqrt2;
        return s;
    };

    SnmResult out;
    out.lobe_upper = to_square(up);
    out.lobe_lower = to_square(down);
    if (out.lobe_upper.side <= out.lobe_lower.side) {
        out.snm = out.lobe_upper.side;
        out.limiting_side = 0;
    } else {
        out.snm = out.lobe_lower.side;
        out.limiting_side = 1;
    }
    return out;
}

Vec2 latch_drift(const LatchConfig& latch, double x, double y) {
    double i2 = inverter_node_current(y, x, latch.inv2, latch.vdd);
    double i1 = inverter_node_current(x, y, latch.inv1, latch.vdd);
    return {i2 / latch.C2, i1 / latch.C1};
}

Mat2 latch_drift_jacobian(const LatchConfig& latch, double x, double y) {
    InverterDerivs d2 = inverter_node_derivs(y, x, latch.inv2, latch.vdd);
    InverterDerivs d1 = inverter_node_derivs(x, y, latch.inv1, latch.vdd);
    Mat2 a;
    a.a11 = d2.di_dvout / latch.C2;  // d(dx/dt)/dx
    a.a12 = d2.di_dvin / latch.C2;   // d(dx/dt)/dy
    a.a21 = d1.di_dvin / latch.C1;   // d(dy/dt)/dx
    a.a22 = d1.di_dvout / latch.C1;  // d(dy/dt)/dy
    return a;
}

double drift_residual(const LatchConfig& latch, double x, double y) {
    double i2 = inverter_node_current(y, x, latch.inv2, latch.vdd);
    double i1 = inverter_node_current(x, y, latch.inv1, latch.vdd);
    double s2 = inverter_branch_sum(y, x, latch.inv2, latch.vdd) + 1e-30;
    double s1 = inverter_branch_sum(x, y, latch.inv1, latch.vdd) + 1e-30;
    return std::max(std::abs(i2) / s2, std::abs(i1) / s1);
}

namespace {

EquilibriumPoint refine_equilibrium(const LatchConfig& latch, double x0, double y0) {
    double x = x0, y = y0;
    double res = drift_residual(latch, x, y);
    for (int it = 0; it < 80 && res > 1e-14; ++it) {
        InverterDerivs d2 = inverter_node_derivs(y, x, latch.inv2, latch.vdd);
        InverterDerivs d1 = inverter_node_derivs(x, y, latch.inv1, latch.vdd);
        // Solve J * step = -I for the raw currents (same zero as the drift).
        double a = d2.di_dvout, bb = d2.di_dvin;
        double c = d1.di_dvin, dd = d1.di_dvout;
        double det = a * dd - bb * c;
        if (det == 0.0) break;
        double sx = -(dd * d2.i - bb * d1.i) / det;
        double sy = -(-c * d2.i + a * d1.i) / det;
        // Damped update: halve until the residual does not increase.
        double lambda = 1.0;
        for (int k = 0; k < 30; ++k) {
            double xn = x + lambda * sx, yn = y + lambda * sy;
            double rn = drift_residual(latch, xn, yn);
            if (rn <= res || (std::abs(lambda * sx) < 1e-17 && std::abs(lambda * sy) < 1e-17)) {
                x = xn; y = yn; res = rn;
                break;
            }
            lambda *= 0.5;
            if (k == 29)
                throw std::runtime_error("equilibria: damped Newton stalled at x=" +
                                         std::to_string(x) + " y=" + std::to_string(y));
        }
    }
    if (res > 1e-12)
        throw std::runtime_error("equilibria: residual " + std::to_string(res) +
                                 " above 1e-12 at x=" + std::to_string(x));
    EquilibriumPoint p;
    p.x = x;
    p.y = y;
    p.residual = res;
    p.jacobian = latch_drift_jacobian(latch, x, y);
    Eigen2 e = eigen2(p.jacobian);
    int pos = 0;
    if (e.lambda1.real() > 0.0) ++pos;
    if (e.lambda2.real() > 0.0) ++pos;
    p.positive_eigenvalues = pos;
    p.stable = (pos == 0);
    return p;
}

}  // namespace

EquilibriumSet equilibria(const LatchConfig& latch) {
    ButterflyData b = butterfly(latch, 1e-3);
    if (b.classification != Classification::Functional)
        throw std::invalid_argument("equilibria: cell is defective");
    EquilibriumPoint pts[3];
    for (int i = 0; i < 3; ++i)
        pts[i] = refine_equilibrium(latch, b.crossings[i].x, b.crossings[i].y);

    // crossings are sorted by x; the middle one must be the saddle and the
    // outer two stable. The endangered state is the (low x, high y) one.
    if (pts[0].stable && pts[2].stable && !pts[1].stable &&
        pts[1].positive_eigenvalues == 1) {
        EquilibriumSet eq;
        eq.stable0 = pts[0];
        eq.unstable = pts[1];
        eq.stable1 = pts[2];
        return eq;
    }
    throw std::runtime_error("equilibria: unexpected stability signature");
}

DistanceResult distances(const EquilibriumSet& eq) {
    DistanceResult d;
    d.dx = eq.unstable.x - eq.stable0.x;
    d.dy = eq.stable0.y - eq.unstable.y;
    d.dy_alt = eq.stable1.y - eq.unstable.y;
    if (d.dx <= 0.0 || d.dy <= 0.0)
        throw std::domain_error("distances: inconsistent equilibrium ordering");
    return d;
}

}
