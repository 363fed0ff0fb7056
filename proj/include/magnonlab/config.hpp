#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "magnonlab/spectra.hpp"

namespace magnonlab {

// Sweep ranges that scenario files may predeclare; CLI flags override them.
struct PowerRangeSpec {
    double p_min_w = 0.0;
    double p_max_w = 0.0;
    int points = 0;
};

struct FrequencyRangeSpec {
    double f_min_hz = 0.0;
    double f_max_hz = 0.0;
    int points = 0;
};

struct CrossingRangeSpec {
    double b_min_t = 0.0;
    double b_max_t = 0.0;
    int b_points = 0;
    double f_min_hz = 0.0;
    double f_max_hz = 0.0;
    int f_points = 0;
};

// Parsed scenario: the physical system plus optional drive, probe and sweep
// blocks. See docs/config.md for the grammar; every quantity needs an
// explicit unit suffix and unknown keys are rejected.
struct ScenarioConfig {
    SystemConfig system;
    std::optional<DriveParams> drive;
    std::optional<ProbeParams> probe;
    std::optional<PowerRangeSpec> shift_sweep;
    std::optional<FrequencyRangeSpec> drive_sweep;
    std::optional<CrossingRangeSpec> crossing_sweep;
    std::optional<FrequencyRangeSpec> spectrum_sweep;
};

class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& message, std::size_t line);
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

/// Canonical form: fixed section order, canonical units (hz, w, t, m3, ...),
/// 17 significant digits. parse(emit(parse(x))) == parse(emit(...)) holds
/// after this one normalization.
std::string emit_scenario(const ScenarioConfig& config);

/// Value with a mandatory unit suffix, e.g. "42 mhz" -> 42e6 for dimension
/// "frequency". Exposed for CLI flags that accept the same syntax.
double parse_quantity(const std::string& text, const std::string& dimension);

}  // namespace magnonlab
