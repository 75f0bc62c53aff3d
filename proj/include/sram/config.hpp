#pragma once

#include "sram/device.hpp"
#include "sram/noise.hpp"
#include "sram/varmap.hpp"

#include <stdexcept>
#include <string>

namespace sram {

// Raised on unreadable files, malformed JSON (message carries line:column),
// missing/mistyped keys, and invariant violations. The CLI maps it to the
// usage exit code.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AppConfig {
    LatchConfig latch;
    SweepSpec sweep;
    NoiseRunConfig noise;
};

// Calibrated defaults: symmetric cell at vdd = 200 mV whose nominal static
// noise margin is ~61 mV, worst-case-line failure boundary between 55 and
// 65 mV, and retention corner frequencies giving microsecond-to-millisecond
// observed flip times.
AppConfig default_config();

AppConfig load_config(const std::string& path);
void save_config(const AppConfig& cfg, const std::string& path);

// JSON text of the documented schema (used for --dump-config and for the
// config snapshot embedded in run manifests).
std::string config_to_json(const AppConfig& cfg);
AppConfig config_from_json(const std::string& text, const std::string& origin);

}
