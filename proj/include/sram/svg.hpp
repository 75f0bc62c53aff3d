#pragma once

#include "sram/csvio.hpp"
#include "sram/dc.hpp"
#include "sram/noise.hpp"
#include "sram/varmap.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sram {

// Static plots. Rendering is a pure view over already-computed results: none
// of these functions recompute or mutate numeric data.

// Both transfer curves in shared axes with crossings marked and, when
// available, the two largest inscribed squares drawn.
std::string butterfly_svg(const ButterflyData& b, const SnmResult* snm_result);

// Green/orange/red classification map over the (dV1, dV2) grid.
std::string sweep_svg(const std::vector<CellRecord>& grid,
                      const SweepSpec& spec);

// Node voltages vs time with the unstable-point thresholds and the flip
// instant marked when present.
std::string trajectory_svg(const Trajectory& traj, const EquilibriumSet* eq,
                           std::optional<double> ttf);

// Log-scale MTTF vs skew: simulation with error bars plus both predictors.
std::string compare_svg(const std::vector<CompareRow>& rows);

}
