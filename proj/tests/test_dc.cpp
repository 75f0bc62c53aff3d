#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sram/config.hpp"
#include "sram/dc.hpp"
#include "sram/rootfind.hpp"

using namespace sram;

static LatchConfig skewed_latch(double dv1, double dv2) {
    LatchConfig l = default_config().latch;
    l.inv1.dV = dv1;
    l.inv2.dV = dv2;
    return l;
}

// Independent largest-inscribed-square search, used as the extraction oracle.
// One lobe: the eye bounded above by the VTC of `top` and below by the
// inverse VTC of `bottom`, both sampled densely and linearly interpolated.
static double lobe_square_brute(const InverterParams& top,
                                const InverterParams& bottom, double vdd) {
    const int n = 1601;  // 0.125 mV sampling at vdd = 200 mV
    std::vector<double> xs(n), upper(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = vdd * i / (n - 1);
        upper[i] = vtc_point(top, vdd, xs[i]);
    }
    // inverse of the bottom VTC: vout samples descend as vin rises
    std::vector<double> bx(n), by(n);
    for (int i = 0; i < n; ++i) {
        double vin = vdd * i / (n - 1);
        bx[n - 1 - i] = vtc_point(bottom, vdd, vin);  // ascending in x
        by[n - 1 - i] = vin;
    }
    auto lower_at = [&](double x) {
        if (x <= bx.front()) return by.front();
        if (x >= bx.back()) return by.back();
        auto it = std::upper_bound(bx.begin(), bx.end(), x);
        size_t j = it - bx.begin();
        double w = (x - bx[j - 1]) / (bx[j] - bx[j - 1]);
        return by[j - 1] + w * (by[j] - by[j - 1]);
    };
    auto upper_at = [&](double x) {
        double pos = x / vdd * (n - 1);
        size_t j = std::min<size_t>(static_cast<size_t>(pos), n - 2);
        double w = pos - j;
        return upper[j] + w * (upper[j + 1] - upper[j]);
    };
    // a square [x0, x0+s]^2 fits iff upper(x0+s) - lower(x0) >= s (both
    // boundaries decrease in x); maximize s by bisection on feasibility
    auto feasible = [&](double s) {
        for (int i = 0; i < n; ++i) {
            double x0 = xs[i];
            if (x0 + s > vdd) break;
            if (upper_at(x0 + s) - lower_at(x0) >= s) return true;
        }
        return false;
    };
    double lo = 0.0, hi = vdd;
    for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

static double snm_brute(const LatchConfig& latch) {
    double a = lobe_square_brute(latch.inv1, latch.inv2, latch.vdd);
    double b = lobe_square_brute(latch.inv2, latch.inv1, latch.vdd);
    return std::min(a, b);
}

TEST_CASE("matched transfer curve passes through the midpoint") {
    LatchConfig l = skewed_latch(0.0, 0.0);
    CHECK(vtc_point(l.inv1, l.vdd, l.vdd / 2) ==
          doctest::Approx(l.vdd / 2).epsilon(1e-12));
}

TEST_CASE("input offset shifts the transfer curve left") {
    LatchConfig l = skewed_latch(0.0, 0.0);
    InverterParams shifted = l.inv1;
    shifted.dV = 0.025;
    for (double vin : {0.0, 0.03, 0.07, 0.11, 0.16}) {
        CHECK(vtc_point(shifted, l.vdd, vin) ==
              vtc_point(l.inv1, l.vdd, vin + 0.025));
    }
}

TEST_CASE("switching threshold of the shipped cell sits at half supply") {
    LatchConfig l = skewed_latch(0.0, 0.0);
    // input voltage where the curve crosses vout = vin
    BrentResult r = brent(
        [&](double v) { return vtc_point(l.inv1, l.vdd, v) - v; }, 0.0, l.vdd);
    CHECK(std::abs(r.x - l.vdd / 2) < 2e-3);
}

TEST_CASE("transfer curve satisfies the current balance at every sample") {
    LatchConfig l = skewed_latch(0.03, 0.0);
    Curve c = vtc(l.inv1, l.vdd, 1e-3);
    CHECK(c.samples.size() == 201);
    for (const CurveSample& s : c.samples) {
        CHECK(std::abs(inverter_node_current(s.vin, s.vout, l.inv1, l.vdd)) <
              1e-15);
        CHECK(s.vout >= 0.0);
        CHECK(s.vout <= l.vdd);
    }
}

TEST_CASE("transfer curve output never increases with input") {
    for (double dv : {-0.05, 0.0, 0.04}) {
        LatchConfig l = skewed_latch(dv, 0.0);
        Curve c = vtc(l.inv1, l.vdd, 1e-3);
        for (size_t i = 1; i < c.samples.size(); ++i) {
            CHECK(c.samples[i].vout <= c.samples[i - 1].vout + 1e-12);
        }
    }
}

TEST_CASE("transfer curve rejects an oversized grid step") {
    LatchConfig l = skewed_latch(0.0, 0.0);
    CHECK_THROWS_AS(vtc(l.inv1, l.vdd, 5e-3), std::invalid_argument);
    CHECK_THROWS_AS(vtc(l.inv1, l.vdd, 0.0), std::invalid_argument);
}

TEST_CASE("nominal cell shows three crossings with a centered saddle") {
    ButterflyData b = butterfly(skewed_latch(0.0, 0.0));
    CHECK(b.classification == Classification::Functional);
    REQUIRE(b.crossings.size() == 3);
    CHECK(b.crossings[1].x == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(b.crossings[1].y == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("heavily skewed cell collapses to one crossing") {
    ButterflyData b = butterfly(skewed_latch(0.065, -0.065));
    CHECK(b.classification == Classification::Defective);
    CHECK(b.crossings.size() == 1);
}

TEST_CASE("barely functional cell keeps three crossings") {
    ButterflyData b = butterfly(skewed_latch(0.055, -0.055));
    CHECK(b.classification == Classification::Functional);
    CHECK(b.crossings.size() == 3);
}

TEST_CASE("noise margin of the shipped nominal cell is near 61 mV") {
    LatchConfig l = skewed_latch(0.0, 0.0);
    SnmResult s = snm(l, butterfly(l));
    CHECK(s.snm > 0.055);
    CHECK(s.snm < 0.067);
    CHECK(s.snm == doctest::Approx(0.0608428390506722).epsilon(1e-9));
    CHECK(s.snm == std::min(s.lobe_upper.side, s.lobe_lower.side));
    CHECK(s.snm <= l.vdd / 2);
    // matched cell: both lobes equal
    CHECK(s.lobe_upper.side == doctest::Approx(s.lobe_lower.side).epsilon(1e-6));
}

TEST_CASE("noise margin collapses to about 5 mV at the 55 mV skew") {
    LatchConfig l = skewed_latch(0.055, -0.055);
    SnmResult s = snm(l, butterfly(l));
    CHECK(s.snm > 0.003);
    CHECK(s.snm < 0.007);
}

TEST_CASE("noise margin extraction rejects a defective butterfly") {
    LatchConfig l = skewed_latch(0.065, -0.065);
    ButterflyData b = butterfly(l);
    CHECK_THROWS_AS(snm(l, b), std::invalid_argument);
}

TEST_CASE("noise margin matches a brute-force inscribed-square search") {
    struct Cell {
        double dv1, dv2;
    };
    for (Cell c : {Cell{0.0, 0.0}, Cell{0.03, -0.02}, Cell{0.055, -0.055}}) {
        LatchConfig l = skewed_latch(c.dv1, c.dv2);
        SnmResult s = snm(l, butterfly(l));
        CHECK(std::abs(s.snm - snm_brute(l)) < 1e-3);
    }
}

TEST_CASE("matched cell has its saddle exactly at the center") {
    EquilibriumSet eq = equilibria(skewed_latch(0.0, 0.0));
    CHECK(eq.unstable.x == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(eq.unstable.y == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(!eq.unstable.stable);
    CHECK(eq.unstable.positive_eigenvalues == 1);
}

TEST_CASE("nominal retained states sit a leak-width inside the rails") {
    EquilibriumSet eq = equilibria(skewed_latch(0.0, 0.0));
    CHECK(std::abs(eq.stable0.x - 0.0) < 0.005);
    CHECK(std::abs(eq.stable0.y - 0.2) < 0.005);
    CHECK(std::abs(eq.stable1.x - 0.2) < 0.005);
    CHECK(std::abs(eq.stable1.y - 0.0) < 0.005);
    CHECK(eq.stable0.stable);
    CHECK(eq.stable1.stable);
}

TEST_CASE("equilibria coincide with refined butterfly crossings") {
    LatchConfig l = skewed_latch(0.058, -0.058);
    ButterflyData b = butterfly(l);
    EquilibriumSet eq = equilibria(l);
    REQUIRE(b.crossings.size() == 3);
    // crossings sorted by x; equilibria ordered stable0 / unstable / stable1
    const EquilibriumPoint* pts[3] = {&eq.stable0, &eq.unstable, &eq.stable1};
    std::vector<const EquilibriumPoint*> sorted(pts, pts + 3);
    std::sort(sorted.begin(), sorted.end(),
              [](const EquilibriumPoint* a, const EquilibriumPoint* b) {
                  return a->x < b->x;
              });
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(sorted[i]->x - b.crossings[i].x) < 1e-4);
        CHECK(std::abs(sorted[i]->y - b.crossings[i].y) < 1e-4);
    }
}

TEST_CASE("equilibrium drift residuals are at solver precision") {
    for (double dv : {0.0, 0.02, 0.055, 0.058}) {
        EquilibriumSet eq = equilibria(skewed_latch(dv, -dv));
        CHECK(eq.stable0.residual < 1e-12);
        CHECK(eq.stable1.residual < 1e-12);
        CHECK(eq.unstable.residual < 1e-12);
        CHECK(drift_residual(skewed_latch(dv, -dv), eq.stable0.x, eq.stable0.y) <
              1e-12);
    }
}

TEST_CASE("stability signatures are two sinks and one saddle") {
    for (double dv : {0.0, 0.03, 0.055}) {
        EquilibriumSet eq = equilibria(skewed_latch(dv, -dv));
        for (const EquilibriumPoint* p : {&eq.stable0, &eq.stable1}) {
            CHECK(p->stable);
            CHECK(p->positive_eigenvalues == 0);
            Eigen2 e = eigen2(p->jacobian);
            CHECK(e.lambda1.real() < 0.0);
            CHECK(e.lambda2.real() < 0.0);
        }
        CHECK(eq.unstable.positive_eigenvalues == 1);
        Eigen2 e = eigen2(eq.unstable.jacobian);
        CHECK(((e.lambda1.real() > 0.0) != (e.lambda2.real() > 0.0)));
    }
}

TEST_CASE("equilibria are refused for a defective cell") {
    CHECK_THROWS_AS(equilibria(skewed_latch(0.08, -0.08)), std::invalid_argument);
}

TEST_CASE("separation distances reduce to coordinate differences") {
    EquilibriumSet eq;
    eq.stable0.x = 0.0;
    eq.stable0.y = 0.2;
    eq.unstable.x = 0.1;
    eq.unstable.y = 0.1;
    eq.stable1.x = 0.2;
    eq.stable1.y = 0.0;
    DistanceResult d = distances(eq);
    CHECK(d.dx == doctest::Approx(0.1));
    CHECK(d.dy == doctest::Approx(0.1));
    CHECK(d.dy_alt == doctest::Approx(-0.1));
}

TEST_CASE("skew pulls the retained state toward the saddle") {
    DistanceResult nominal = distances(equilibria(skewed_latch(0.0, 0.0)));
    DistanceResult skewed = distances(equilibria(skewed_latch(0.055, -0.055)));
    CHECK(skewed.dx < nominal.dx);
    CHECK(skewed.dy < nominal.dy);
    CHECK(skewed.dx > 0.0);
    CHECK(skewed.dy > 0.0);
}

TEST_CASE("distances match the equilibrium coordinates definitionally") {
    EquilibriumSet eq = equilibria(skewed_latch(0.04, -0.01));
    DistanceResult d = distances(eq);
    CHECK(d.dx == eq.unstable.x - eq.stable0.x);
    CHECK(d.dy == eq.stable0.y - eq.unstable.y);
    CHECK(d.dy_alt == eq.stable1.y - eq.unstable.y);
}

TEST_CASE("swapping the inverters mirrors the butterfly") {
    LatchConfig l = skewed_latch(0.04, -0.025);
    LatchConfig swapped = l;
    std::swap(swapped.inv1, swapped.inv2);
    ButterflyData b = butterfly(l);
    ButterflyData bs = butterfly(swapped);
    REQUIRE(b.crossings.size() == bs.crossings.size());
    // crossing (x, y) maps to (y, x); re-sort by x to compare
    std::vector<Crossing> mirrored;
    for (const Crossing& c : bs.crossings) mirrored.push_back({c.y, c.x});
    std::sort(mirrored.begin(), mirrored.end(),
              [](const Crossing& a, const Crossing& b) { return a.x < b.x; });
    for (size_t i = 0; i < b.crossings.size(); ++i) {
        CHECK(std::abs(b.crossings[i].x - mirrored[i].x) < 1e-6);
        CHECK(std::abs(b.crossings[i].y - mirrored[i].y) < 1e-6);
    }
    SnmResult s = snm(l, b);
    SnmResult ss = snm(swapped, bs);
    CHECK(s.snm == doctest::Approx(ss.snm).epsilon(1e-9));
}

TEST_CASE("the margin decays monotonically along the worst-case direction") {
    double prev = 1.0;
    for (double dv = 0.0; dv <= 0.0701; dv += 0.005) {
        LatchConfig l = skewed_latch(dv, -dv);
        ButterflyData b = butterfly(l);
        if (b.classification == Classification::Functional) {
            double s = snm(l, b).snm;
            CHECK(s > 0.0);
            CHECK(s <= prev + 1e-9);
            prev = s;
        } else {
            // once defective there is no margin; stays defective beyond
            CHECK(dv > 0.060);
        }
    }
}
