// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failures. Every check runs the shipped library end to end; nothing here
// depends on recorded outputs.

#include "uavcov/analytic.hpp"
#include "uavcov/config.hpp"
#include "uavcov/montecarlo.hpp"
#include "uavcov/selftest.hpp"
#include "uavcov/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace uavcov;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int criterion, const std::string& label, bool pass, const std::string& detail,
            double seconds) {
    std::printf("%s  criterion %d: %s (%s; %.1f s)\n", pass ? "PASS" : "FAIL", criterion,
                label.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void run(int criterion, const std::string& label,
         const std::function<std::pair<bool, std::string>()>& body) {
    const auto t0 = Clock::now();
    bool pass = false;
    std::string detail;
    try {
        auto [p, d] = body();
        pass = p;
        detail = d;
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(criterion, label, pass, detail, secs);
}

struct Point {
    UrbanEnvironment env{};
    RadioConfig radio{};
    Deployment dep{};
};

Point make_point(Strategy strat, double lambda_per_km2, double r_max, double gamma) {
    Point p;
    p.dep.strategy = strat;
    p.dep.density_per_m2 = lambda_per_km2 * 1e-6;
    p.dep.hotspot_radius_m = r_max;
    p.dep.height_m = gamma;
    return p;
}

double analytic_coverage(const Point& p) {
    return AnalyticModel(p.env, p.radio, p.dep).coverage_probability();
}

McResult mc(const Point& p, long trials) {
    return estimate(p.dep.strategy, p.env, p.radio, p.dep, trials, 1);
}

std::vector<double> heights_40_200() {
    std::vector<double> h;
    for (double g = 40.0; g <= 200.0; g += 20.0) h.push_back(g);
    return h;
}

double optimum_height(Strategy strat, double lambda_per_km2, double r_max,
                      std::vector<double> grid) {
    SweepConfig cfg;
    cfg.dep.strategy = strat;
    cfg.dep.density_per_m2 = lambda_per_km2 * 1e-6;
    cfg.dep.hotspot_radius_m = r_max;
    cfg.axis = SweepAxis::Height;
    cfg.axis_values = std::move(grid);
    cfg.strategies = {strat};
    cfg.engines = {Engine::Analytic};
    cfg.with_se = false;
    return find_optimum_height(cfg).gamma_opt;
}

std::vector<double> low_grid() {
    std::vector<double> g;
    for (double v = 10.0; v <= 200.0; v += 10.0) g.push_back(v);
    return g;
}

// Ordering claim "a >= b" under Monte-Carlo noise: clean when the 95%
// intervals are disjoint in the right order; ambiguous overlaps escalate to
// a 4x budget; only a wrong-order separation fails.
struct OrderCheck {
    bool pass = false;
    std::string detail;
};

OrderCheck check_order(const Point& a, const Point& b, const char* label, long trials) {
    auto eval = [&](long n) {
        const auto ra = mc(a, n);
        const auto rb = mc(b, n);
        return std::pair{ra.coverage, rb.coverage};
    };
    auto [ea, eb] = eval(trials);
    std::ostringstream os;
    os.precision(4);
    auto disjoint_right = [](const Estimate& x, const Estimate& y) {
        return x.mean - y.mean > x.half_width_95 + y.half_width_95;
    };
    auto disjoint_wrong = [&](const Estimate& x, const Estimate& y) {
        return y.mean - x.mean > x.half_width_95 + y.half_width_95;
    };
    os << label << " " << ea.mean << " vs " << eb.mean;
    if (disjoint_right(ea, eb)) return {true, os.str()};
    if (!disjoint_wrong(ea, eb)) {
        // Statistical tie: escalate the trial budget by 4x.
        auto [fa, fb] = eval(4 * trials);
        os << "; escalated " << fa.mean << " vs " << fb.mean;
        if (disjoint_wrong(fa, fb)) return {false, os.str()};
        if (!disjoint_right(fa, fb)) os << " (tie within CI)";
        return {true, os.str()};
    }
    return {false, os.str()};
}

std::vector<McResult> g_fig2_mc; // criterion 1 runs, reused by criterion 3

} // namespace

int main() {
    run(1, "analytic coverage matches simulation across heights", [] {
        double worst = 0.0;
        for (double g : heights_40_200()) {
            const Point p = make_point(Strategy::HotspotCenter, 5.0, 100.0, g);
            const auto res = mc(p, 20000);
            g_fig2_mc.push_back(res);
            worst = std::max(worst, std::abs(analytic_coverage(p) - res.coverage.mean));
        }
        std::ostringstream os;
        os << "max |analytic - mc| = " << worst << " over 9 heights, tol 0.02";
        return std::pair{worst <= 0.02, os.str()};
    });

    run(2, "independent-placement coverage matches simulation", [] {
        double worst = 0.0;
        for (double lam : {1.0, 5.0, 10.0}) {
            for (double g : heights_40_200()) {
                const Point p = make_point(Strategy::UniformPPP, lam, 100.0, g);
                const double diff = std::abs(analytic_coverage(p) - mc(p, 20000).coverage.mean);
                worst = std::max(worst, diff);
            }
        }
        std::ostringstream os;
        os << "max |analytic - mc| = " << worst << " over 27 points, tol 0.02";
        return std::pair{worst <= 0.02, os.str()};
    });

    run(3, "spectral efficiency matches simulation", [] {
        if (g_fig2_mc.size() != 9) return std::pair{false, std::string("criterion 1 runs missing")};
        double worst = 0.0;
        const auto hs = heights_40_200();
        for (std::size_t i = 0; i < hs.size(); ++i) {
            const Point p = make_point(Strategy::HotspotCenter, 5.0, 100.0, hs[i]);
            const double se = AnalyticModel(p.env, p.radio, p.dep).spectral_efficiency();
            worst = std::max(worst, std::abs(se - g_fig2_mc[i].se.mean));
        }
        std::ostringstream os;
        os << "max |analytic - mc| = " << worst << " bits/s/Hz over 9 heights, tol 0.1";
        return std::pair{worst <= 0.1, os.str()};
    });

    run(4, "optimum height grows with the hotspot radius", [] {
        std::ostringstream os;
        bool ok = true;
        double prev = -1.0;
        for (double r_max : {50.0, 100.0, 150.0, 200.0}) {
            const double opt = optimum_height(Strategy::HotspotCenter, 5.0, r_max, low_grid());
            if (prev >= 0.0) os << "; ";
            os << "r_max " << r_max << " -> " << opt << " m";
            ok = ok && opt + 1e-9 >= prev;
            prev = opt;
        }
        return std::pair{ok, os.str()};
    });

    run(5, "denser hotspots degrade coverage at a stable optimum height", [] {
        bool strict = true;
        for (double g : heights_40_200()) {
            double prev = 2.0;
            for (double lam : {1.0, 5.0, 25.0}) {
                const double c =
                    analytic_coverage(make_point(Strategy::HotspotCenter, lam, 100.0, g));
                strict = strict && c < prev;
                prev = c;
            }
        }
        double lo = 1e9, hi = -1e9;
        std::ostringstream os;
        os << (strict ? "strictly decreasing at all 9 heights" : "ordering violated")
           << "; gamma_opt";
        for (double lam : {1.0, 5.0, 25.0}) {
            const double opt = optimum_height(Strategy::HotspotCenter, lam, 100.0, low_grid());
            lo = std::min(lo, opt);
            hi = std::max(hi, opt);
            os << " lambda" << lam << " -> " << opt << " m,";
        }
        os << " spread " << (hi - lo) << " m, tol 15";
        return std::pair{strict && (hi - lo) < 15.0, os.str()};
    });

    run(6, "peak independent-placement coverage is density-invariant", [] {
        std::vector<double> grid;
        for (double g = 40.0; g <= 440.0; g += 20.0) grid.push_back(g);
        double lo = 1e9, hi = -1e9;
        std::ostringstream os;
        for (double lam : {1.0, 5.0, 10.0}) {
            SweepConfig cfg;
            cfg.dep.strategy = Strategy::UniformPPP;
            cfg.dep.density_per_m2 = lam * 1e-6;
            cfg.axis = SweepAxis::Height;
            cfg.axis_values = grid;
            cfg.strategies = {Strategy::UniformPPP};
            cfg.engines = {Engine::Analytic};
            cfg.with_se = false;
            const auto res = find_optimum_height(cfg);
            os << "lambda " << lam << " -> peak " << res.metric_at_opt << " at "
               << res.gamma_opt << " m; ";
            lo = std::min(lo, res.metric_at_opt);
            hi = std::max(hi, res.metric_at_opt);
        }
        os << "spread " << (hi - lo) << ", tol 0.05";
        return std::pair{hi - lo <= 0.05, os.str()};
    });

    run(7, "placement ranking flips as density grows", [] {
        // Sparse: clustering on hotspot centers wins at its own best height.
        const double g5 = optimum_height(Strategy::HotspotCenter, 5.0, 100.0, low_grid());
        auto sparse = check_order(make_point(Strategy::HotspotCenter, 5.0, 100.0, g5),
                                  make_point(Strategy::RectGrid, 5.0, 100.0, g5),
                                  "hotspot>=grid:", 20000);
        // Dense: regular placements win around the lattice's best height,
        // taken as the simulated argmax over the swept grid.
        double g25 = 40.0, best = -1.0;
        for (double g : heights_40_200()) {
            const double c = mc(make_point(Strategy::RectGrid, 25.0, 100.0, g), 20000)
                                 .coverage.mean;
            if (c > best) {
                best = c;
                g25 = g;
            }
        }
        auto dense_a = check_order(make_point(Strategy::RectGrid, 25.0, 100.0, g25),
                                   make_point(Strategy::HotspotCenter, 25.0, 100.0, g25),
                                   "grid>=hotspot:", 20000);
        auto dense_b = check_order(make_point(Strategy::KMeans, 25.0, 100.0, g25),
                                   make_point(Strategy::RectGrid, 25.0, 100.0, g25),
                                   "kmeans>=grid:", 20000);
        std::ostringstream os;
        os << "at " << g5 << " m: " << sparse.detail << " | at " << g25
           << " m: " << dense_a.detail << " | " << dense_b.detail;
        return std::pair{sparse.pass && dense_a.pass && dense_b.pass, os.str()};
    });

    run(8, "wide hotspots converge to the independent-placement model", [] {
        double worst = 0.0;
        for (double g : {60.0, 100.0, 160.0}) {
            const double wide =
                analytic_coverage(make_point(Strategy::HotspotCenter, 5.0, 5000.0, g));
            const double ppp = analytic_coverage(make_point(Strategy::UniformPPP, 5.0, 100.0, g));
            worst = std::max(worst, std::abs(wide - ppp));
        }
        std::ostringstream os;
        os << "max |hotspot(r_max=5000) - ppp| = " << worst << ", tol 0.02";
        return std::pair{worst <= 0.02, os.str()};
    });

    run(9, "oracle suite passes inside its time budget", [] {
        const auto t0 = Clock::now();
        const auto results = run_selftest();
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        bool all = true;
        std::ostringstream os;
        for (const auto& r : results) {
            all = all && r.pass;
            if (!r.pass) os << "[" << r.name << ": " << r.detail << "] ";
        }
        os << results.size() << " checks in " << secs << " s, budget 120";
        return std::pair{all && secs < 120.0, os.str()};
    });

    run(10, "sweeps are reproducible across runs and thread counts", [] {
        SweepConfig cfg;
        cfg.axis = SweepAxis::Height;
        cfg.axis_values = {60.0, 100.0, 140.0};
        cfg.strategies = {Strategy::HotspotCenter, Strategy::RectGrid};
        cfg.engines = {Engine::MonteCarlo};
        cfg.n_trials = 3000;
        cfg.master_seed = 21;
        auto table = [&](int threads) {
            cfg.n_threads = threads;
            std::string csv = format_csv(cfg.axis, run_sweep(cfg));
            // Drop the wall-time column, the one legitimately varying field.
            std::string out;
            std::istringstream in(csv);
            std::string line;
            while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
            return out;
        };
        const std::string a = table(1);
        const bool ok = a == table(1) && a == table(2) && a == table(4);
        return std::pair{ok, std::string(ok ? "identical tables" : "tables diverged")};
    });

    std::printf("%s: %d of 10 criteria failed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
