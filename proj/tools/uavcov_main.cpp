#include "uavcov/config.hpp"
#include "uavcov/params.hpp"
#include "uavcov/selftest.hpp"
#include "uavcov/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CliOverrides {
    std::string config_path;
    double buildings_per_km2 = 0, built_fraction = 0, height_scale = 0;
    double alpha_los = 0, alpha_nlos = 0, m_los = 0, m_nlos = 0;
    double tx_power = 0, noise = 0, beamwidth_deg = 0, threshold_db = 0;
    double height = 0, density_per_km2 = 0, radius = 0, window_scale = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    int threads = 0, users_per_hotspot = 0;
    std::string strategy, strategies, engines, axis, values, metrics, output;
};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& s, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw std::invalid_argument("value of " + what + " is not a number: '" + s + "'");
    return v;
}

// Applies command-line overrides on top of the parsed (or default) config.
// Flags use the same field units as the config file.
void apply_overrides(const CLI::App& app, const CliOverrides& o, uavcov::SweepConfig& cfg) {
    const auto given = [&](const std::string& name) { return app.count(name) > 0; };

    if (given("--buildings-per-km2")) cfg.env.beta_per_m2 = o.buildings_per_km2 * 1e-6;
    if (given("--built-fraction")) cfg.env.delta = o.built_fraction;
    if (given("--building-height-scale")) cfg.env.kappa_m = o.height_scale;

    if (given("--alpha-los")) cfg.radio.alpha_los = o.alpha_los;
    if (given("--alpha-nlos")) cfg.radio.alpha_nlos = o.alpha_nlos;
    if (given("--m-los")) cfg.radio.m_los = o.m_los;
    if (given("--m-nlos")) cfg.radio.m_nlos = o.m_nlos;
    if (given("--tx-power")) cfg.radio.tx_power_w = o.tx_power;
    if (given("--noise")) cfg.radio.noise_w = o.noise;
    if (given("--beamwidth-deg")) cfg.radio.beamwidth_rad = o.beamwidth_deg * kPi / 180.0;
    if (given("--threshold-db"))
        cfg.radio.threshold_linear = std::pow(10.0, o.threshold_db / 10.0);

    if (given("--height")) cfg.dep.height_m = o.height;
    if (given("--density-per-km2")) cfg.dep.density_per_m2 = o.density_per_km2 * 1e-6;
    if (given("--hotspot-radius")) cfg.dep.hotspot_radius_m = o.radius;

    if (given("--strategy")) {
        cfg.dep.strategy = uavcov::strategy_from_string(o.strategy);
        if (!given("--strategies")) cfg.strategies = {cfg.dep.strategy};
    }
    if (given("--strategies")) {
        cfg.strategies.clear();
        for (const std::string& t : split_commas(o.strategies))
            cfg.strategies.push_back(uavcov::strategy_from_string(t));
        if (!cfg.strategies.empty()) cfg.dep.strategy = cfg.strategies.front();
    }
    if (given("--engines")) {
        cfg.engines.clear();
        for (const std::string& t : split_commas(o.engines))
            cfg.engines.push_back(uavcov::engine_from_string(t));
    } else if (given("--strategies") || given("--strategy")) {
        // Strategy overrides can invalidate a defaulted engine set; recompute
        // it so grid/kmeans fall back to simulation.
        bool all_analytic = true;
        for (uavcov::Strategy s : cfg.strategies)
            all_analytic = all_analytic && (s == uavcov::Strategy::HotspotCenter ||
                                            s == uavcov::Strategy::UniformPPP);
        if (!all_analytic) {
            bool had_analytic = false;
            for (uavcov::Engine e : cfg.engines)
                had_analytic = had_analytic || e == uavcov::Engine::Analytic;
            if (had_analytic)
                std::fprintf(stderr,
                             "note: analytic engine dropped, grid/kmeans are simulation-only\n");
            cfg.engines = {uavcov::Engine::MonteCarlo};
        }
    }

    if (given("--axis")) {
        cfg.axis = uavcov::axis_from_string(o.axis);
        if (!given("--values"))
            throw std::invalid_argument("--axis requires --values (field units for that axis)");
        cfg.axis_values.clear();
    }
    if (given("--values")) {
        cfg.axis_values.clear();
        for (const std::string& t : split_commas(o.values))
            cfg.axis_values.push_back(
                uavcov::axis_value_to_internal(cfg.axis, parse_number(t, "--values")));
    }

    if (given("--trials")) cfg.n_trials = o.trials;
    if (given("--seed")) cfg.master_seed = o.seed;
    if (given("--threads")) cfg.n_threads = o.threads;
    if (given("--users-per-hotspot")) cfg.users_per_hotspot = o.users_per_hotspot;
    if (given("--window-scale")) cfg.window_scale = o.window_scale;
    if (given("--metrics")) {
        if (o.metrics == "coverage")
            cfg.with_se = false;
        else if (o.metrics == "coverage,se")
            cfg.with_se = true;
        else
            throw std::invalid_argument("--metrics must be 'coverage' or 'coverage,se'");
    }
    if (given("--output")) cfg.output_path = o.output;
}

int run_coverage(const uavcov::SweepConfig& cfg) {
    uavcov::SweepConfig point = cfg;
    point.axis = uavcov::SweepAxis::Height;
    point.axis_values = {cfg.dep.height_m};
    const auto rows = uavcov::run_sweep(point);
    std::fputs(uavcov::format_csv(point.axis, rows).c_str(), stdout);
    return 0;
}

int run_sweep_cmd(const uavcov::SweepConfig& cfg) {
    const auto rows = uavcov::run_sweep(cfg);
    const std::string manifest = uavcov::write_sweep_outputs(cfg, rows);
    std::printf("wrote %zu rows to %s\nmanifest: %s\n", rows.size(), cfg.output_path.c_str(),
                manifest.c_str());
    return 0;
}

int run_optimum(const uavcov::SweepConfig& cfg) {
    const uavcov::OptimumResult res = uavcov::find_optimum_height(cfg);
    if (res.flat_profile)
        std::fprintf(stderr,
                     "warning: coverage profile is flat around the optimum; the reported "
                     "height is weakly identified\n");
    std::printf("gamma_opt_m = %.6g\ncoverage_at_opt = %.10g\nflat_profile = %s\n",
                res.gamma_opt, res.metric_at_opt, res.flat_profile ? "true" : "false");
    return 0;
}

int run_compare(const uavcov::SweepConfig& cfg, bool strategies_given) {
    uavcov::SweepConfig mc = cfg;
    mc.engines = {uavcov::Engine::MonteCarlo};
    if (!strategies_given)
        mc.strategies = {uavcov::Strategy::HotspotCenter, uavcov::Strategy::UniformPPP,
                         uavcov::Strategy::RectGrid, uavcov::Strategy::KMeans};
    if (mc.axis_values.empty()) {
        // No sweep requested: compare at the configured operating point.
        mc.axis = uavcov::SweepAxis::Height;
        mc.axis_values = {mc.dep.height_m};
    }
    const auto rows = uavcov::run_sweep(mc);
    std::fputs(uavcov::format_csv(mc.axis, rows).c_str(), stdout);
    const std::string manifest = uavcov::write_sweep_outputs(mc, rows);
    std::fprintf(stderr, "wrote %zu rows to %s\nmanifest: %s\n", rows.size(),
                 mc.output_path.c_str(), manifest.c_str());
    return 0;
}

int run_selftest_cmd() {
    const auto results = uavcov::run_selftest();
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "selftest passed" : "selftest FAILED");
    return all ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Downlink coverage and spectral efficiency of aerial access points "
                 "serving user hotspots: analytic model and Monte Carlo simulator"};
    app.require_subcommand(1);

    CliOverrides o;
    app.add_option("--config", o.config_path, "Config file (sectioned key = value)");
    app.add_option("--buildings-per-km2", o.buildings_per_km2, "Building density per km^2");
    app.add_option("--built-fraction", o.built_fraction, "Fraction of land covered by buildings");
    app.add_option("--building-height-scale", o.height_scale,
                   "Rayleigh scale of building heights (m)");
    app.add_option("--alpha-los", o.alpha_los, "LOS pathloss exponent");
    app.add_option("--alpha-nlos", o.alpha_nlos, "NLOS pathloss exponent");
    app.add_option("--m-los", o.m_los, "LOS Nakagami shape");
    app.add_option("--m-nlos", o.m_nlos, "NLOS Nakagami shape");
    app.add_option("--tx-power", o.tx_power, "Transmit power (W)");
    app.add_option("--noise", o.noise, "Noise power (W)");
    app.add_option("--beamwidth-deg", o.beamwidth_deg, "Antenna beamwidth (degrees)");
    app.add_option("--threshold-db", o.threshold_db, "SINR threshold (dB)");
    app.add_option("--height", o.height, "Access-point height (m)");
    app.add_option("--density-per-km2", o.density_per_km2, "Access-point density per km^2");
    app.add_option("--hotspot-radius", o.radius, "Hotspot radius (m)");
    app.add_option("--strategy", o.strategy, "Placement: hotspot, ppp, grid or kmeans");
    app.add_option("--strategies", o.strategies, "Comma list of placements to evaluate");
    app.add_option("--engines", o.engines, "Comma list of engines: analytic, mc");
    app.add_option("--axis", o.axis,
                   "Sweep axis: height, hotspot_radius, density, beamwidth, threshold");
    app.add_option("--values", o.values, "Comma list of axis values (field units)");
    app.add_option("--trials", o.trials, "Monte Carlo trials per grid cell");
    app.add_option("--seed", o.seed, "Master seed");
    app.add_option("--threads", o.threads, "Worker threads (0: all cores)");
    app.add_option("--users-per-hotspot", o.users_per_hotspot,
                   "Users sampled per hotspot (kmeans placement)");
    app.add_option("--window-scale", o.window_scale, "Simulation window scale factor");
    app.add_option("--metrics", o.metrics, "coverage or coverage,se");
    app.add_option("--output", o.output, "CSV output path");

    CLI::App* sc_coverage =
        app.add_subcommand("coverage", "Evaluate one operating point, CSV to stdout");
    CLI::App* sc_sweep = app.add_subcommand("sweep", "Evaluate the configured grid to CSV");
    CLI::App* sc_optimum =
        app.add_subcommand("optimum", "Find the coverage-optimal height on the grid");
    CLI::App* sc_compare =
        app.add_subcommand("compare", "Monte Carlo comparison across placement strategies");
    CLI::App* sc_selftest = app.add_subcommand("selftest", "Run the oracle cross-checks");
    for (CLI::App* sc : {sc_coverage, sc_sweep, sc_optimum, sc_compare, sc_selftest})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        uavcov::SweepConfig cfg =
            o.config_path.empty() ? uavcov::parse_config("") : uavcov::parse_config_file(o.config_path);
        apply_overrides(app, o, cfg);

        if (sc_selftest->parsed()) return run_selftest_cmd();
        if (sc_coverage->parsed()) return run_coverage(cfg);
        if (sc_sweep->parsed()) return run_sweep_cmd(cfg);
        if (sc_optimum->parsed()) return run_optimum(cfg);
        if (sc_compare->parsed()) return run_compare(cfg, app.count("--strategies") > 0);
        return 1;
    } catch (const uavcov::NumericFailure& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
