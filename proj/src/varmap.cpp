#include "sram/varmap.hpp"

#include "sram/threadpool.hpp"

#include <cmath>
#include <stdexcept>

namespace sram {

int sweep_axis_points(const SweepSpec& spec) {
    if (!(spec.step > 0.0) || !(spec.range_min < spec.range_max))
        throw std::invalid_argument("sweep: invalid range/step");
    return static_cast<int>(std::floor((spec.range_max - spec.range_min) /
                                       spec.step + 1e-9)) + 1;
}

std::vector<CellRecord> sweep(const LatchConfig& latch_template,
                              const SweepSpec& spec, unsigned n_threads) {
    int n = sweep_axis_points(spec);
    std::vector<CellRecord> out(static_cast<size_t>(n) * n);
    parallel_for(static_cast<size_t>(n) * n, n_threads, [&](size_t idx) {
        int i = static_cast<int>(idx) / n;  // dv1 index
        int j = static_cast<int>(idx) % n;  // dv2 index
        CellRecord& rec = out[idx];
        rec.dv1 = spec.range_min + i * spec.step;
        rec.dv2 = spec.range_min + j * spec.step;
        LatchConfig latch = latch_template;
        latch.inv1.dV = rec.dv1;
        latch.inv2.dV = rec.dv2;
        try {
            ButterflyData b = butterfly(latch, 1e-3);
            if (b.classification == Classification::Defective) {
                rec.cls = CellClass::Defective;
                return;
            }
            SnmResult s = snm(latch, b);
            rec.snm = s.snm;
            rec.cls = (s.snm > 0.0 && s.snm <= spec.snm_marginal_threshold)
                          ? CellClass::Marginal
                          : CellClass::Functional;
            if (!(s.snm > 0.0)) rec.cls = CellClass::Defective;
        } catch (const std::exception&) {
            rec.cls = CellClass::Error;
            rec.snm.reset();
        }
    });
    return out;
}

WorstCaseLine worst_case_line(const std::vector<CellRecord>& grid,
                              const SweepSpec& spec) {
    WorstCaseLine line;
    double half_step = 0.5 * spec.step;
    for (const CellRecord& rec : grid)
        if (std::abs(rec.dv1 + rec.dv2) < half_step * 1e-3)
            line.cells.push_back(rec);
    // Grid is row-major in dv1 so the filtered cells are already ascending.
    for (size_t k = 0; k + 1 < line.cells.size(); ++k) {
        const CellRecord& a = line.cells[k];
        const CellRecord& b = line.cells[k + 1];
        if (a.dv1 >= 0.0 && a.cls != CellClass::Defective &&
            a.cls != CellClass::Error && b.cls == CellClass::Defective) {
            line.boundary_lo = a.dv1;
            line.boundary_hi = b.dv1;
            break;
        }
    }
    return line;
}

double equiprob_radius(double sigma, double tail_prob) {
    if (!(sigma > 0.0))
        throw std::domain_error("equiprob_radius: sigma must be positive");
    if (!(tail_prob > 0.0) || !(tail_prob < 1.0))
        throw std::domain_error("equiprob_radius: tail probability outside (0, 1)");
    return sigma * std::sqrt(-2.0 * std::log(tail_prob));
}

}
