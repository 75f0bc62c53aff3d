#pragma once

namespace sram {

// 2019 SI exact values.
inline constexpr double kBoltzmann = 1.380649e-23;   // J/K
inline constexpr double kElectronCharge = 1.602176634e-19;  // C

inline constexpr double thermal_voltage(double temperature_K) {
    return kBoltzmann * temperature_K / kElectronCharge;
}

}
