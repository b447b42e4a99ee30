#include "uavcov/config.hpp"
#include "uavcov/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace uavcov;

namespace {

// The wall-time column is the one legitimately run-dependent field.
std::string strip_wall_time(const std::string& csv) {
    std::istringstream in(csv);
    std::string out, line;
    while (std::getline(in, line)) {
        const auto cut = line.rfind(',');
        out += line.substr(0, cut);
        out += '\n';
    }
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("height sweep rows agree across engines") {
    SweepConfig cfg = parse_config(R"(
[sweep]
axis = height
values = 40, 120, 200
strategies = hotspot
engines = analytic, mc
n_trials = 20000
seed = 1
)");
    cfg.with_se = false;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        CHECK(rows[i].engine == Engine::Analytic);
        CHECK(rows[i + 1].engine == Engine::MonteCarlo);
        CHECK(rows[i].axis_value == rows[i + 1].axis_value);
        CHECK(rows[i].coverage >= 0.0);
        CHECK(rows[i].coverage <= 1.0);
        CHECK(std::abs(rows[i].coverage - rows[i + 1].coverage) <= 0.02);
        CHECK(rows[i].n_trials == 0);
        CHECK(rows[i + 1].n_trials == 20000);
        CHECK(rows[i + 1].coverage_ci95 > 0.0);
    }
}

TEST_CASE("sweep output format") {
    SweepConfig cfg = parse_config(R"(
[sweep]
axis = density
values = 1, 5
strategies = grid
n_trials = 1000
)");
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 2);
    const std::string csv = format_csv(cfg.axis, rows);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "axis_value,strategy,engine,coverage,coverage_ci95,se,se_ci95,n_trials,seed,wall_time_s");
    std::string line;
    std::getline(in, line);
    // Axis values echo in field units: 1 per km^2, not 1e-6 per m^2.
    CHECK(line.substr(0, 2) == "1,");
    CHECK(line.find(",grid,") != std::string::npos);
    CHECK(line.find(",mc,") != std::string::npos);
    std::getline(in, line);
    CHECK(line.substr(0, 2) == "5,");
    CHECK(!std::getline(in, line));
}

TEST_CASE("analytic rows leave spectral-efficiency fields empty when disabled") {
    SweepConfig cfg = parse_config(R"(
[sweep]
values = 100
strategies = ppp
engines = analytic
)");
    cfg.with_se = false;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(!rows[0].has_se);
    const std::string csv = format_csv(cfg.axis, rows);
    const auto second_line = csv.substr(csv.find('\n') + 1);
    CHECK(second_line.find(",,") != std::string::npos);
}

TEST_CASE("identical configurations produce identical tables") {
    SweepConfig cfg = parse_config(R"(
[sweep]
axis = height
values = 60, 140
strategies = hotspot, kmeans
engines = mc
n_trials = 2000
seed = 13
)");
    const std::string a = strip_wall_time(format_csv(cfg.axis, run_sweep(cfg)));
    const std::string b = strip_wall_time(format_csv(cfg.axis, run_sweep(cfg)));
    CHECK(a == b);
    SweepConfig threaded = cfg;
    threaded.n_threads = 3;
    const std::string c = strip_wall_time(format_csv(threaded.axis, run_sweep(threaded)));
    CHECK(a == c);
}

TEST_CASE("sweep outputs land on disk with their manifest") {
    SweepConfig cfg = parse_config(R"(
[sweep]
values = 100
strategies = ppp
engines = analytic
output = sweep_test_out.csv
)");
    const auto rows = run_sweep(cfg);
    const std::string manifest_path = write_sweep_outputs(cfg, rows);
    CHECK(manifest_path == "sweep_test_out.csv.manifest");
    const std::string csv = slurp("sweep_test_out.csv");
    CHECK(csv == format_csv(cfg.axis, rows));
    // Re-running from the manifest reproduces the table.
    const SweepConfig back = parse_config(slurp(manifest_path));
    const auto rows2 = run_sweep(back);
    CHECK(strip_wall_time(format_csv(back.axis, rows2)) ==
          strip_wall_time(format_csv(cfg.axis, rows)));
    std::remove("sweep_test_out.csv");
    std::remove("sweep_test_out.csv.manifest");
}

TEST_CASE("sweep validation") {
    SweepConfig cfg = parse_config("[sweep]\nvalues = 100\n");
    cfg.strategies.clear();
    CHECK_THROWS_AS((void)run_sweep(cfg), std::invalid_argument);

    SweepConfig grid_analytic = parse_config("[sweep]\nvalues = 100\nstrategies = grid\n");
    grid_analytic.engines = {Engine::Analytic};
    CHECK_THROWS_AS((void)run_sweep(grid_analytic), std::invalid_argument);

    SweepConfig empty_vals = parse_config("[sweep]\nstrategies = hotspot\n");
    empty_vals.axis_values.clear();
    CHECK_THROWS_AS((void)run_sweep(empty_vals), std::invalid_argument);

    SweepConfig thin = parse_config("[sweep]\nvalues = 100\nn_trials = 200\n");
    thin.n_trials = 50; // below the Monte-Carlo floor
    CHECK_THROWS_AS((void)run_sweep(thin), std::invalid_argument);
}

TEST_CASE("height optimization") {
    SUBCASE("single-element grids are returned unchanged") {
        SweepConfig cfg = parse_config("[sweep]\nvalues = 100\nstrategies = hotspot\n");
        const auto res = find_optimum_height(cfg);
        CHECK(res.gamma_opt == 100.0);
    }

    SUBCASE("wider hotspots push the optimum height upward") {
        SweepConfig cfg = parse_config(R"(
[sweep]
axis = height
values = 10, 20, 30, 40, 60, 80, 100
strategies = hotspot
engines = analytic
)");
        cfg.dep.hotspot_radius_m = 50.0;
        const auto small = find_optimum_height(cfg);
        cfg.dep.hotspot_radius_m = 200.0;
        const auto large = find_optimum_height(cfg);
        CHECK(small.gamma_opt <= large.gamma_opt);
        CHECK(large.gamma_opt > small.gamma_opt + 10.0);
        CHECK(small.metric_at_opt > 0.9);
        CHECK(!small.flat_profile);
    }

    SUBCASE("non-height axes cannot be optimized") {
        SweepConfig cfg = parse_config("[sweep]\naxis = density\nvalues = 1, 5\n");
        CHECK_THROWS_AS((void)find_optimum_height(cfg), std::invalid_argument);
    }

    SUBCASE("simulation-only strategies cannot be optimized") {
        SweepConfig cfg =
            parse_config("[sweep]\nvalues = 40, 80\nstrategies = grid\n");
        CHECK_THROWS_AS((void)find_optimum_height(cfg), std::invalid_argument);
    }
}
