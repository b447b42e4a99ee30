#include "uavcov/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uavcov {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        fail(line, "value of '" + key + "' is not a number: '" + v + "'");
    if (errno == ERANGE || !std::isfinite(x))
        fail(line, "value of '" + key + "' must be a finite number");
    return x;
}

long to_long(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    errno = 0;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        fail(line, "value of '" + key + "' is not an integer: '" + v + "'");
    if (errno == ERANGE) fail(line, "value of '" + key + "' is out of range");
    return x;
}

std::uint64_t to_u64(const std::string& v, int line, const std::string& key) {
    if (!v.empty() && v[0] == '-') fail(line, "value of '" + key + "' must be nonnegative");
    char* end = nullptr;
    errno = 0;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        fail(line, "value of '" + key + "' is not an integer: '" + v + "'");
    if (errno == ERANGE) fail(line, "value of '" + key + "' is out of range");
    return static_cast<std::uint64_t>(x);
}

std::vector<std::string> split_list(const std::string& v, int line, const std::string& key) {
    std::vector<std::string> items;
    std::string cur;
    std::istringstream in(v);
    while (std::getline(in, cur, ',')) {
        cur = trim(cur);
        if (cur.empty()) fail(line, "empty item in list '" + key + "'");
        items.push_back(cur);
    }
    if (items.empty()) fail(line, "list '" + key + "' must be nonempty");
    return items;
}

Strategy strategy_from(const std::string& t, int line) {
    try {
        return strategy_from_string(t);
    } catch (const std::invalid_argument& e) {
        fail(line, e.what());
    }
}

Engine engine_from(const std::string& t, int line) {
    try {
        return engine_from_string(t);
    } catch (const std::invalid_argument& e) {
        fail(line, e.what());
    }
}

SweepAxis axis_from(const std::string& t, int line) {
    try {
        return axis_from_string(t);
    } catch (const std::invalid_argument& e) {
        fail(line, e.what());
    }
}

// Unit-variant keys share a canonical slot so that e.g. beamwidth_deg and
// beamwidth_rad in the same file are rejected as duplicates.
std::string canonical_key(const std::string& key) {
    if (key == "buildings_per_km2" || key == "buildings_per_m2") return "buildings";
    if (key == "beamwidth_deg" || key == "beamwidth_rad") return "beamwidth";
    if (key == "threshold_db" || key == "threshold_linear") return "threshold";
    if (key == "density_per_km2" || key == "density_per_m2") return "density";
    if (key == "values" || key == "values_internal") return "values";
    return key;
}

void check_axis_grid(SweepAxis axis, const std::vector<double>& values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("axis values must be finite");
        switch (axis) {
        case SweepAxis::Beamwidth:
            if (!(v > 0.0 && v < kPi))
                throw std::invalid_argument("beamwidth axis values must lie in (0, pi) radians");
            break;
        default:
            if (!(v > 0.0)) throw std::invalid_argument("axis values must be positive");
        }
    }
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("axis values must be strictly increasing");
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool analytic_capable(Strategy s) {
    return s == Strategy::HotspotCenter || s == Strategy::UniformPPP;
}

} // namespace

std::string to_string(SweepAxis a) {
    switch (a) {
    case SweepAxis::Height: return "height";
    case SweepAxis::HotspotRadius: return "hotspot_radius";
    case SweepAxis::Density: return "density";
    case SweepAxis::Beamwidth: return "beamwidth";
    case SweepAxis::Threshold: return "threshold";
    }
    return "?";
}

std::string to_string(Engine e) {
    return e == Engine::Analytic ? "analytic" : "mc";
}

Strategy strategy_from_string(const std::string& t) {
    if (t == "hotspot") return Strategy::HotspotCenter;
    if (t == "ppp") return Strategy::UniformPPP;
    if (t == "grid") return Strategy::RectGrid;
    if (t == "kmeans") return Strategy::KMeans;
    throw std::invalid_argument("unknown strategy '" + t +
                                "' (expected hotspot, ppp, grid or kmeans)");
}

Engine engine_from_string(const std::string& t) {
    if (t == "analytic") return Engine::Analytic;
    if (t == "mc") return Engine::MonteCarlo;
    throw std::invalid_argument("unknown engine '" + t + "' (expected analytic or mc)");
}

SweepAxis axis_from_string(const std::string& t) {
    if (t == "height") return SweepAxis::Height;
    if (t == "hotspot_radius") return SweepAxis::HotspotRadius;
    if (t == "density") return SweepAxis::Density;
    if (t == "beamwidth") return SweepAxis::Beamwidth;
    if (t == "threshold") return SweepAxis::Threshold;
    throw std::invalid_argument(
        "unknown axis '" + t + "' (expected height, hotspot_radius, density, beamwidth or threshold)");
}

double axis_value_to_internal(SweepAxis axis, double v) {
    switch (axis) {
    case SweepAxis::Density: return v * 1e-6;
    case SweepAxis::Beamwidth: return v * kPi / 180.0;
    case SweepAxis::Threshold: return std::pow(10.0, v / 10.0);
    default: return v;
    }
}

double axis_value_to_field(SweepAxis axis, double v) {
    switch (axis) {
    case SweepAxis::Density: return v * 1e6;
    case SweepAxis::Beamwidth: return v * 180.0 / kPi;
    case SweepAxis::Threshold: return 10.0 * std::log10(v);
    default: return v;
    }
}

void validate(const SweepConfig& cfg) {
    validate(cfg.env);
    validate(cfg.radio);
    validate(cfg.dep);
    if (cfg.axis_values.empty()) throw std::invalid_argument("axis values must be nonempty");
    check_axis_grid(cfg.axis, cfg.axis_values);
    if (cfg.strategies.empty()) throw std::invalid_argument("strategies must be nonempty");
    if (cfg.engines.empty()) throw std::invalid_argument("engines must be nonempty");
    for (std::size_t i = 0; i < cfg.strategies.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.strategies.size(); ++j)
            if (cfg.strategies[i] == cfg.strategies[j])
                throw std::invalid_argument("strategies must not repeat");
    for (std::size_t i = 0; i < cfg.engines.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.engines.size(); ++j)
            if (cfg.engines[i] == cfg.engines[j])
                throw std::invalid_argument("engines must not repeat");
    const bool has_analytic =
        std::find(cfg.engines.begin(), cfg.engines.end(), Engine::Analytic) != cfg.engines.end();
    const bool has_mc =
        std::find(cfg.engines.begin(), cfg.engines.end(), Engine::MonteCarlo) != cfg.engines.end();
    if (has_analytic)
        for (Strategy s : cfg.strategies)
            if (!analytic_capable(s))
                throw std::invalid_argument(
                    "the analytic engine supports hotspot and ppp strategies only");
    if (has_mc && cfg.n_trials < 100)
        throw std::invalid_argument("n_trials must be at least 100");
    if (cfg.users_per_hotspot < 1)
        throw std::invalid_argument("users_per_hotspot must be at least 1");
    if (!(cfg.window_scale >= 1.0))
        throw std::invalid_argument("window_scale must be at least 1");
    if (cfg.n_threads < 0) throw std::invalid_argument("threads must be nonnegative");
    if (cfg.output_path.empty()) throw std::invalid_argument("output path must be nonempty");
}

SweepConfig parse_config(const std::string& text) {
    SweepConfig cfg;
    std::set<std::string> seen;
    std::vector<double> staged_values;
    bool values_are_internal = false;
    bool have_strategies = false;
    bool have_engines = false;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "environment" && section != "radio" && section != "deployment" &&
                section != "sweep")
                fail(lineno, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (section.empty()) fail(lineno, "key '" + key + "' appears before any section");
        if (!seen.insert(section + "." + canonical_key(key)).second)
            fail(lineno, "duplicate key '" + key + "' in [" + section + "]");

        if (section == "environment") {
            if (key == "buildings_per_km2")
                cfg.env.beta_per_m2 = to_double(val, lineno, key) * 1e-6;
            else if (key == "buildings_per_m2")
                cfg.env.beta_per_m2 = to_double(val, lineno, key);
            else if (key == "built_fraction")
                cfg.env.delta = to_double(val, lineno, key);
            else if (key == "building_height_scale_m")
                cfg.env.kappa_m = to_double(val, lineno, key);
            else
                fail(lineno, "unknown key '" + key + "' in [environment]");
        } else if (section == "radio") {
            if (key == "alpha_los")
                cfg.radio.alpha_los = to_double(val, lineno, key);
            else if (key == "alpha_nlos")
                cfg.radio.alpha_nlos = to_double(val, lineno, key);
            else if (key == "m_los")
                cfg.radio.m_los = to_double(val, lineno, key);
            else if (key == "m_nlos")
                cfg.radio.m_nlos = to_double(val, lineno, key);
            else if (key == "tx_power_w")
                cfg.radio.tx_power_w = to_double(val, lineno, key);
            else if (key == "noise_w")
                cfg.radio.noise_w = to_double(val, lineno, key);
            else if (key == "beamwidth_deg")
                cfg.radio.beamwidth_rad = to_double(val, lineno, key) * kPi / 180.0;
            else if (key == "beamwidth_rad")
                cfg.radio.beamwidth_rad = to_double(val, lineno, key);
            else if (key == "threshold_db")
                cfg.radio.threshold_linear = std::pow(10.0, to_double(val, lineno, key) / 10.0);
            else if (key == "threshold_linear")
                cfg.radio.threshold_linear = to_double(val, lineno, key);
            else
                fail(lineno, "unknown key '" + key + "' in [radio]");
        } else if (section == "deployment") {
            if (key == "height_m")
                cfg.dep.height_m = to_double(val, lineno, key);
            else if (key == "density_per_km2")
                cfg.dep.density_per_m2 = to_double(val, lineno, key) * 1e-6;
            else if (key == "density_per_m2")
                cfg.dep.density_per_m2 = to_double(val, lineno, key);
            else if (key == "hotspot_radius_m")
                cfg.dep.hotspot_radius_m = to_double(val, lineno, key);
            else if (key == "strategy")
                cfg.dep.strategy = strategy_from(val, lineno);
            else
                fail(lineno, "unknown key '" + key + "' in [deployment]");
        } else { // sweep
            if (key == "axis")
                cfg.axis = axis_from(val, lineno);
            else if (key == "values" || key == "values_internal") {
                values_are_internal = (key == "values_internal");
                for (const std::string& item : split_list(val, lineno, key))
                    staged_values.push_back(to_double(item, lineno, key));
            } else if (key == "strategies") {
                for (const std::string& item : split_list(val, lineno, key))
                    cfg.strategies.push_back(strategy_from(item, lineno));
                have_strategies = true;
            } else if (key == "engines") {
                for (const std::string& item : split_list(val, lineno, key))
                    cfg.engines.push_back(engine_from(item, lineno));
                have_engines = true;
            } else if (key == "n_trials") {
                cfg.n_trials = to_long(val, lineno, key);
                if (cfg.n_trials < 1) fail(lineno, "n_trials must be positive");
            } else if (key == "seed")
                cfg.master_seed = to_u64(val, lineno, key);
            else if (key == "threads") {
                const long t = to_long(val, lineno, key);
                if (t < 0) fail(lineno, "threads must be nonnegative");
                cfg.n_threads = static_cast<int>(t);
            } else if (key == "users_per_hotspot") {
                const long n = to_long(val, lineno, key);
                if (n < 1) fail(lineno, "users_per_hotspot must be at least 1");
                cfg.users_per_hotspot = static_cast<int>(n);
            } else if (key == "window_scale")
                cfg.window_scale = to_double(val, lineno, key);
            else if (key == "metrics") {
                bool coverage = false, se = false;
                for (const std::string& item : split_list(val, lineno, key)) {
                    if (item == "coverage" && !coverage)
                        coverage = true;
                    else if (item == "se" && !se)
                        se = true;
                    else
                        fail(lineno, "metrics must be 'coverage' or 'coverage,se'");
                }
                if (!coverage) fail(lineno, "metrics must include coverage");
                cfg.with_se = se;
            } else if (key == "output") {
                if (val.empty()) fail(lineno, "output path must be nonempty");
                cfg.output_path = val;
            } else
                fail(lineno, "unknown key '" + key + "' in [sweep]");
        }
    }

    for (double v : staged_values)
        cfg.axis_values.push_back(values_are_internal ? v
                                                      : axis_value_to_internal(cfg.axis, v));
    if (!have_strategies) cfg.strategies = {cfg.dep.strategy};
    if (!have_engines) {
        const bool all_analytic = std::all_of(cfg.strategies.begin(), cfg.strategies.end(),
                                              analytic_capable);
        cfg.engines = all_analytic ? std::vector<Engine>{Engine::Analytic, Engine::MonteCarlo}
                                   : std::vector<Engine>{Engine::MonteCarlo};
    }

    validate(cfg.env);
    validate(cfg.radio);
    validate(cfg.dep);
    if (!cfg.axis_values.empty()) check_axis_grid(cfg.axis, cfg.axis_values);
    return cfg;
}

SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string render_manifest(const SweepConfig& cfg) {
    std::ostringstream out;
    out << "# run manifest, artifact " << kArtifactVersion << "\n";
    out << "[environment]\n";
    out << "buildings_per_m2 = " << num(cfg.env.beta_per_m2) << "\n";
    out << "built_fraction = " << num(cfg.env.delta) << "\n";
    out << "building_height_scale_m = " << num(cfg.env.kappa_m) << "\n";
    out << "[radio]\n";
    out << "alpha_los = " << num(cfg.radio.alpha_los) << "\n";
    out << "alpha_nlos = " << num(cfg.radio.alpha_nlos) << "\n";
    out << "m_los = " << num(cfg.radio.m_los) << "\n";
    out << "m_nlos = " << num(cfg.radio.m_nlos) << "\n";
    out << "tx_power_w = " << num(cfg.radio.tx_power_w) << "\n";
    out << "noise_w = " << num(cfg.radio.noise_w) << "\n";
    out << "beamwidth_rad = " << num(cfg.radio.beamwidth_rad) << "\n";
    out << "threshold_linear = " << num(cfg.radio.threshold_linear) << "\n";
    out << "[deployment]\n";
    out << "height_m = " << num(cfg.dep.height_m) << "\n";
    out << "density_per_m2 = " << num(cfg.dep.density_per_m2) << "\n";
    out << "hotspot_radius_m = " << num(cfg.dep.hotspot_radius_m) << "\n";
    out << "strategy = " << to_string(cfg.dep.strategy) << "\n";
    out << "[sweep]\n";
    out << "axis = " << to_string(cfg.axis) << "\n";
    if (!cfg.axis_values.empty()) {
        out << "values_internal = ";
        for (std::size_t i = 0; i < cfg.axis_values.size(); ++i)
            out << (i ? "," : "") << num(cfg.axis_values[i]);
        out << "\n";
    }
    out << "strategies = ";
    for (std::size_t i = 0; i < cfg.strategies.size(); ++i)
        out << (i ? "," : "") << to_string(cfg.strategies[i]);
    out << "\n";
    out << "engines = ";
    for (std::size_t i = 0; i < cfg.engines.size(); ++i)
        out << (i ? "," : "") << to_string(cfg.engines[i]);
    out << "\n";
    out << "n_trials = " << cfg.n_trials << "\n";
    out << "seed = " << cfg.master_seed << "\n";
    out << "threads = " << cfg.n_threads << "\n";
    out << "users_per_hotspot = " << cfg.users_per_hotspot << "\n";
    out << "window_scale = " << num(cfg.window_scale) << "\n";
    out << "metrics = " << (cfg.with_se ? "coverage,se" : "coverage") << "\n";
    out << "output = " << cfg.output_path << "\n";
    return out.str();
}

} // namespace uavcov
