#pragma once

#include "uavcov/config.hpp"

#include <string>
#include <vector>

namespace uavcov {

struct SweepRow {
    double axis_value = 0.0; // internal units
    Strategy strategy = Strategy::HotspotCenter;
    Engine engine = Engine::Analytic;
    double coverage = 0.0;
    double coverage_ci95 = 0.0;
    double se = 0.0;
    bool has_se = false;
    double se_ci95 = 0.0;
    long n_trials = 0; // 0 for analytic rows
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
};

// Evaluates the full (axis value x strategy x engine) grid. Rows come back
// in axis-major order with strategies and engines in config order. Engine
// errors are rethrown with the offending grid cell prepended.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

// CSV with the fixed header
// axis_value,strategy,engine,coverage,coverage_ci95,se,se_ci95,n_trials,seed,wall_time_s.
// axis_value is emitted in field units (meters, per km^2, degrees, dB);
// se fields are empty for analytic rows when spectral efficiency is off.
std::string format_csv(SweepAxis axis, const std::vector<SweepRow>& rows);

// Writes the CSV to cfg.output_path and the run manifest next to it
// (output path + ".manifest"). Returns the manifest path.
std::string write_sweep_outputs(const SweepConfig& cfg, const std::vector<SweepRow>& rows);

struct OptimumResult {
    double gamma_opt = 0.0;
    double metric_at_opt = 0.0;
    // The grid maximum is indistinguishable from a neighbor at the engine's
    // accuracy, so the reported optimum sits on a flat profile.
    bool flat_profile = false;
};

// Height-axis grid argmax of analytic coverage followed by one golden
// section refinement pass between the argmax's grid neighbors, narrowing to
// +-2 m. Single-element grids are returned as-is.
OptimumResult find_optimum_height(const SweepConfig& cfg);

} // namespace uavcov
