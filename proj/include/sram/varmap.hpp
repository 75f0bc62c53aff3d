#pragma once

#include "sram/dc.hpp"
#include "sram/device.hpp"

#include <optional>
#include <vector>

namespace sram {

struct SweepSpec {
    double range_min = -0.25;  // V
    double range_max = 0.25;   // V
    double step = 1e-3;        // V
    double snm_marginal_threshold = 0.010;  // V
};

enum class CellClass { Functional, Marginal, Defective, Error };

struct CellRecord {
    double dv1 = 0.0, dv2 = 0.0;  // V
    CellClass cls = CellClass::Error;
    std::optional<double> snm;    // V, present for functional/marginal cells
};

// Double DC sweep over (dV1, dV2). Cells are classified from the butterfly
// crossing count; functional cells get an SNM and become marginal when
// 0 < snm <= threshold. Row-major: dv1 outer (ascending), dv2 inner.
// Cells that fail numerically are recorded with CellClass::Error.
std::vector<CellRecord> sweep(const LatchConfig& latch_template,
                              const SweepSpec& spec, unsigned n_threads = 0);

// Number of grid points per axis for a spec.
int sweep_axis_points(const SweepSpec& spec);

struct WorstCaseLine {
    std::vector<CellRecord> cells;  // dv1 = -dv2, ascending dv1
    // Functional/defective boundary bracket on dv1 >= 0, if the line covers it.
    std::optional<double> boundary_lo;  // last functional dv1
    std::optional<double> boundary_hi;  // first defective dv1 after it
};

// Extract the anti-diagonal dv1 = -dv2 from a sweep result.
WorstCaseLine worst_case_line(const std::vector<CellRecord>& grid,
                              const SweepSpec& spec);

// Radius of the circle containing all but tail_prob of an isotropic 2-D
// Gaussian with per-axis deviation sigma.
double equiprob_radius(double sigma, double tail_prob);

}
