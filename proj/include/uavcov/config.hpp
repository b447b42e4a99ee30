#pragma once

#include "uavcov/params.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace uavcov {

enum class SweepAxis { Height, HotspotRadius, Density, Beamwidth, Threshold };
enum class Engine { Analytic, MonteCarlo };

std::string to_string(SweepAxis a);
std::string to_string(Engine e);

Strategy strategy_from_string(const std::string& token);
Engine engine_from_string(const std::string& token);
SweepAxis axis_from_string(const std::string& token);

// Full description of one sweep run: the base scenario, the swept axis with
// its grid, and which engine/strategy combinations to evaluate. Axis values
// are stored in internal units (meters, per m^2, radians, linear ratio).
struct SweepConfig {
    UrbanEnvironment env{};
    RadioConfig radio{};
    Deployment dep{};

    SweepAxis axis = SweepAxis::Height;
    std::vector<double> axis_values;
    std::vector<Strategy> strategies;
    std::vector<Engine> engines;

    long n_trials = 20000;
    std::uint64_t master_seed = 1;
    int n_threads = 0;
    int users_per_hotspot = 10;
    double window_scale = 1.0;
    bool with_se = true; // compute spectral efficiency for analytic rows
    std::string output_path = "sweep.csv";
};

void validate(const SweepConfig& cfg);

// Parses sectioned key = value text ([environment], [radio], [deployment],
// [sweep]). Unknown sections or keys are errors; values are range-checked.
// User-facing keys carry field units (per km^2, degrees, dB) and are
// converted on read; each also has an internal-unit spelling (e.g.
// density_per_m2, beamwidth_rad, threshold_linear) used by run manifests so
// that re-parsing a manifest reproduces the configuration exactly.
SweepConfig parse_config(const std::string& text);
SweepConfig parse_config_file(const std::string& path);

// Renders the fully resolved configuration as parseable config text,
// internal units throughout, 17 significant digits. Prepended with the
// artifact version; byte-stable for a given configuration.
std::string render_manifest(const SweepConfig& cfg);

inline constexpr const char* kArtifactVersion = "1.0.0";

// Converts one axis grid value between user-facing field units and the
// internal units stored in SweepConfig::axis_values.
double axis_value_to_internal(SweepAxis axis, double field_value);
double axis_value_to_field(SweepAxis axis, double internal_value);

} // namespace uavcov
