#include "uavcov/sweep.hpp"

#include "uavcov/analytic.hpp"
#include "uavcov/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uavcov {

namespace {

void apply_axis(SweepAxis axis, double v, RadioConfig& radio, Deployment& dep) {
    switch (axis) {
    case SweepAxis::Height: dep.height_m = v; break;
    case SweepAxis::HotspotRadius: dep.hotspot_radius_m = v; break;
    case SweepAxis::Density: dep.density_per_m2 = v; break;
    case SweepAxis::Beamwidth: radio.beamwidth_rad = v; break;
    case SweepAxis::Threshold: radio.threshold_linear = v; break;
    }
}

std::string cell_label(SweepAxis axis, double v, Strategy s, Engine e) {
    char buf[128];
    const std::string axis_name = to_string(axis);
    const std::string engine_name = to_string(e);
    std::snprintf(buf, sizeof buf, "[%s=%.10g %s %s] ", axis_name.c_str(),
                  axis_value_to_field(axis, v), to_string(s), engine_name.c_str());
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SweepRow run_cell(const SweepConfig& cfg, double v, Strategy strategy, Engine engine) {
    RadioConfig radio = cfg.radio;
    Deployment dep = cfg.dep;
    apply_axis(cfg.axis, v, radio, dep);
    dep.strategy = strategy;

    SweepRow row;
    row.axis_value = v;
    row.strategy = strategy;
    row.engine = engine;
    row.seed = cfg.master_seed;
    const auto t0 = std::chrono::steady_clock::now();
    if (engine == Engine::Analytic) {
        AnalyticModel model(cfg.env, radio, dep);
        row.coverage = model.coverage_probability();
        if (cfg.with_se) {
            row.se = model.spectral_efficiency();
            row.has_se = true;
        }
    } else {
        McOptions opt;
        opt.n_trials = cfg.n_trials;
        opt.master_seed = cfg.master_seed;
        opt.n_threads = cfg.n_threads;
        opt.window_scale = cfg.window_scale;
        opt.users_per_hotspot = cfg.users_per_hotspot;
        const McResult res = estimate(strategy, cfg.env, radio, dep, opt);
        row.coverage = res.coverage.mean;
        row.coverage_ci95 = res.coverage.half_width_95;
        row.se = res.se.mean;
        row.se_ci95 = res.se.half_width_95;
        row.has_se = true;
        row.n_trials = res.coverage.n_trials;
    }
    row.wall_time_s = seconds_since(t0);
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    validate(cfg);
    std::vector<SweepRow> rows;
    rows.reserve(cfg.axis_values.size() * cfg.strategies.size() * cfg.engines.size());
    for (double v : cfg.axis_values)
        for (Strategy s : cfg.strategies)
            for (Engine e : cfg.engines) {
                try {
                    rows.push_back(run_cell(cfg, v, s, e));
                } catch (const NumericFailure& ex) {
                    throw NumericFailure(cell_label(cfg.axis, v, s, e) + ex.what());
                } catch (const std::invalid_argument& ex) {
                    throw std::invalid_argument(cell_label(cfg.axis, v, s, e) + ex.what());
                }
            }
    return rows;
}

std::string format_csv(SweepAxis axis, const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "axis_value,strategy,engine,coverage,coverage_ci95,se,se_ci95,n_trials,seed,"
           "wall_time_s\n";
    char buf[64];
    const auto put = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.10g", x);
        out << buf;
    };
    for (const SweepRow& r : rows) {
        put(axis_value_to_field(axis, r.axis_value));
        out << ',' << to_string(r.strategy) << ',' << to_string(r.engine) << ',';
        put(r.coverage);
        out << ',';
        put(r.coverage_ci95);
        out << ',';
        if (r.has_se) {
            put(r.se);
            out << ',';
            put(r.se_ci95);
        } else {
            out << ',';
        }
        out << ',' << r.n_trials << ',' << r.seed << ',';
        std::snprintf(buf, sizeof buf, "%.3f", r.wall_time_s);
        out << buf << '\n';
    }
    return out.str();
}

std::string write_sweep_outputs(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
    {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write CSV: " + cfg.output_path);
        out << format_csv(cfg.axis, rows);
    }
    const std::string manifest_path = cfg.output_path + ".manifest";
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + manifest_path);
    out << render_manifest(cfg);
    return manifest_path;
}

OptimumResult find_optimum_height(const SweepConfig& cfg) {
    if (cfg.axis != SweepAxis::Height)
        throw std::invalid_argument("optimum search requires a height axis");
    if (cfg.axis_values.empty()) throw std::invalid_argument("axis values must be nonempty");
    if (cfg.strategies.empty()) throw std::invalid_argument("strategies must be nonempty");
    const Strategy strategy = cfg.strategies.front();
    if (strategy != Strategy::HotspotCenter && strategy != Strategy::UniformPPP)
        throw std::invalid_argument(
            "optimum search needs an analytic-capable strategy (hotspot or ppp)");
    validate(cfg.env);
    validate(cfg.radio);
    validate(cfg.dep);

    const auto metric = [&](double gamma) {
        RadioConfig radio = cfg.radio;
        Deployment dep = cfg.dep;
        apply_axis(SweepAxis::Height, gamma, radio, dep);
        dep.strategy = strategy;
        return AnalyticModel(cfg.env, radio, dep).coverage_probability();
    };

    const std::vector<double>& grid = cfg.axis_values;
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = metric(grid[i]);
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (vals[i] > vals[best]) best = i;

    OptimumResult res;
    res.gamma_opt = grid[best];
    res.metric_at_opt = vals[best];
    // Flat profile: the grid peak does not stand out from its neighbors at
    // coverage resolution 1e-4, so the exact optimum location is weakly
    // identified.
    constexpr double kFlatTol = 1e-4;
    if (best > 0 && vals[best] - vals[best - 1] <= kFlatTol) res.flat_profile = true;
    if (best + 1 < vals.size() && vals[best] - vals[best + 1] <= kFlatTol)
        res.flat_profile = true;
    if (grid.size() == 1) return res;

    double a = grid[best > 0 ? best - 1 : best];
    double b = grid[best + 1 < grid.size() ? best + 1 : best];
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = metric(x1);
    double f2 = metric(x2);
    while (b - a > 4.0) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = metric(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = metric(x1);
        }
    }
    const double mid = 0.5 * (a + b);
    const double fmid = metric(mid);
    if (fmid >= res.metric_at_opt) {
        res.gamma_opt = mid;
        res.metric_at_opt = fmid;
    }
    return res;
}

} // namespace uavcov
