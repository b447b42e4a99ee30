#include "uavcov/selftest.hpp"

#include "uavcov/analytic.hpp"
#include "uavcov/environment.hpp"
#include "uavcov/montecarlo.hpp"
#include "uavcov/oracle.hpp"
#include "uavcov/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

namespace uavcov {

namespace {

std::string describe(double worst, double tol) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst relative error %.3g (tolerance %.3g)", worst, tol);
    return buf;
}

double rel_err(double got, double want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

CheckResult check_2f1_against_euler() {
    double worst = 0.0;
    for (double alpha : {2.1, 4.0})
        for (int k = 1; k <= 3; ++k)
            for (int p = 0; p <= 2; ++p) {
                const double b = 2.0 / alpha + p;
                const Hyp2F1Args base{static_cast<double>(k + p), b, b + 1.0, 0.0};
                for (double expo = -3.0; expo <= 6.01; expo += 0.5) {
                    Hyp2F1Args args = base;
                    args.z = -std::pow(10.0, expo);
                    const double mine = gauss_2f1(args);
                    const double ref = oracle::hyp2f1_euler(args.a, args.b, args.c, args.z);
                    worst = std::max(worst, rel_err(mine, ref));
                }
            }
    constexpr double tol = 1e-8;
    return {"hypergeometric vs Euler integral", worst <= tol, describe(worst, tol)};
}

CheckResult check_i0_against_quadrature() {
    const UrbanEnvironment env{};
    const RadioConfig radio{};
    const Deployment dep{};
    const AnalyticModel model(env, radio, dep);
    const LosProfile& profile = model.profile();
    const double r_max = dep.hotspot_radius_m;
    const double lim = std::min(model.cone_radius_m(), r_max);

    std::mt19937_64 g(7);
    const auto unit = [&] { return (g() >> 11) * 0x1.0p-53; };
    double worst = 0.0;
    int checked = 0;
    while (checked < 50) {
        const ChannelType t = (g() & 1) ? ChannelType::Los : ChannelType::Nlos;
        const double r_star = 0.5 + unit() * (lim - 1.0);
        const InterferenceBounds b = model.interference_bounds(t, r_star);
        const double b0 = model.prob_b0(b);
        if (b0 < 1e-6) continue;
        const double s = std::pow(10.0, -2.0 + 12.0 * unit());
        const double mine = model.laplace_i0(s, t, r_star);

        double total = 0.0;
        for (ChannelType j : {ChannelType::Los, ChannelType::Nlos}) {
            const double cj = b.of(j);
            if (cj >= r_max) continue;
            std::vector<double> cuts{cj, r_max};
            for (double e : profile.edges())
                if (e > cj && e < r_max) cuts.push_back(e);
            const double u = model.cone_radius_m();
            if (u > cj && u < r_max) cuts.push_back(u);
            std::sort(cuts.begin(), cuts.end());
            const auto f = [&](double r) {
                return model.g_kernel(r, s, j) * profile.p(j, r) * 2.0 * r / (r_max * r_max);
            };
            for (std::size_t i = 1; i < cuts.size(); ++i)
                total += oracle::tanh_sinh(f, cuts[i - 1], cuts[i], 1e-12);
        }
        worst = std::max(worst, rel_err(mine, total / b0));
        ++checked;
    }
    constexpr double tol = 1e-6;
    return {"interference transform vs direct quadrature", worst <= tol, describe(worst, tol)};
}

CheckResult check_derivatives_against_fd() {
    const UrbanEnvironment env{};
    const RadioConfig radio{};
    const Deployment dep{};
    const AnalyticModel model(env, radio, dep);
    const double r_max = dep.hotspot_radius_m;
    const double lim = std::min(model.cone_radius_m(), r_max);
    const double gamma = dep.height_m;

    std::mt19937_64 g(13);
    const auto unit = [&] { return (g() >> 11) * 0x1.0p-53; };
    double worst = 0.0;
    int compared = 0;
    // A central difference of f cannot resolve derivatives below its rounding
    // floor (eps |f| / h for order 1, eps |f| / h^2 for order 2); comparisons
    // are made only where the floor sits at least five decades under the
    // derivative, so the check tests the formulas rather than the oracle.
    const auto compare = [&](const std::function<double(double)>& f, double s, double d1,
                             double d2) {
        constexpr double kEps = 2.2e-16;
        const double f0 = std::abs(f(s));
        const double h1 = 1e-4 * s;
        const double h2 = 3e-4 * s;
        if (std::abs(d1) > 0.0 && kEps * f0 / (2.0 * h1 * std::abs(d1)) <= 1e-5) {
            worst = std::max(worst, rel_err(oracle::fd1(f, s, h1), d1));
            ++compared;
        }
        if (std::abs(d2) > 0.0 && 4.0 * kEps * f0 / (h2 * h2 * std::abs(d2)) <= 1e-5) {
            worst = std::max(worst, rel_err(oracle::fd2(f, s, h2), d2));
            ++compared;
        }
    };
    for (int i = 0; i < 20; ++i) {
        const ChannelType t = (g() & 1) ? ChannelType::Los : ChannelType::Nlos;
        const double r_star = 1.0 + unit() * (lim - 2.0);
        const double theta = std::pow(10.0, -2.0 + 4.0 * unit());
        const double s =
            nakagami_m_of(radio, t) * theta /
            (model.gain_w() * pathloss(r_star, gamma, alpha_of(radio, t)));
        const InterferenceBounds b = model.interference_bounds(t, r_star);

        if (model.prob_b0(b) > 1e-6)
            compare([&](double x) { return model.laplace_i0(x, t, r_star); }, s,
                    model.laplace_i0_deriv(1, s, t, r_star),
                    model.laplace_i0_deriv(2, s, t, r_star));

        for (ChannelType j : {ChannelType::Los, ChannelType::Nlos}) {
            if (b.of(j) >= model.cone_radius_m()) continue;
            compare([&](double x) { return model.laplace_ppp(x, j, b); }, s,
                    model.laplace_ppp_deriv(1, s, j, b), model.laplace_ppp_deriv(2, s, j, b));
        }

        const ServingClass v = (t == ChannelType::Los)
                                   ? ((g() & 1) ? ServingClass::HotspotLos : ServingClass::NearestLos)
                                   : ((g() & 1) ? ServingClass::HotspotNlos
                                                : ServingClass::NearestNlos);
        compare([&](double x) { return model.laplace_total_deriv(0, x, v, r_star); }, s,
                model.laplace_total_deriv(1, s, v, r_star),
                model.laplace_total_deriv(2, s, v, r_star));
    }
    constexpr double tol = 1e-4;
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst relative error %.3g over %d comparisons (tolerance %.3g)",
                  worst, compared, tol);
    return {"transform derivatives vs finite differences", worst <= tol && compared >= 20, buf};
}

CheckResult check_laplace_at_zero() {
    const UrbanEnvironment env{};
    const RadioConfig radio{};
    const Deployment dep{};
    const AnalyticModel model(env, radio, dep);
    double worst = 0.0;
    for (double r_star : {10.0, 40.0, 80.0})
        for (ChannelType t : {ChannelType::Los, ChannelType::Nlos}) {
            worst = std::max(worst, std::abs(model.laplace_i0(0.0, t, r_star) - 1.0));
            const InterferenceBounds b = model.interference_bounds(t, r_star);
            for (ChannelType j : {ChannelType::Los, ChannelType::Nlos})
                worst = std::max(worst, std::abs(model.laplace_ppp(0.0, j, b) - 1.0));
        }
    constexpr double tol = 1e-9;
    return {"transforms equal one at s = 0", worst <= tol, describe(worst, tol)};
}

CheckResult check_ppp_laplace_empirical() {
    const UrbanEnvironment env{};
    const RadioConfig radio{};
    const Deployment dep{};
    const AnalyticModel model(env, radio, dep);
    const double gamma = dep.height_m;
    const InterferenceBounds b = model.interference_bounds(ChannelType::Los, 50.0);

    double worst_sigma = 0.0;
    int i = 0;
    for (auto [j, theta] : std::initializer_list<std::pair<ChannelType, double>>{
             {ChannelType::Los, 0.3},
             {ChannelType::Los, 1.0},
             {ChannelType::Los, 3.0},
             {ChannelType::Nlos, 0.3},
             {ChannelType::Nlos, 1.0}}) {
        const double s = nakagami_m_of(radio, j) * theta /
                         (model.gain_w() * pathloss(120.0, gamma, alpha_of(radio, j)));
        const double mine = model.laplace_ppp(s, j, b);
        const auto ref = oracle::empirical_laplace(env, radio, dep, j, b.of(j), s, 100000,
                                                   1000 + static_cast<std::uint64_t>(i++));
        worst_sigma = std::max(worst_sigma, std::abs(mine - ref.mean) / ref.se);
    }
    constexpr double tol = 3.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst deviation %.2f standard errors (tolerance %.1f)",
                  worst_sigma, tol);
    return {"field transform vs sampled interference", worst_sigma <= tol, buf};
}

CheckResult check_class_masses_mc() {
    const UrbanEnvironment env{};
    const RadioConfig radio{};
    const Deployment dep{};
    const AnalyticModel model(env, radio, dep);
    const auto masses = model.class_masses();
    McOptions opt;
    opt.n_trials = 20000;
    opt.master_seed = 11;
    opt.n_threads = 1;
    const McResult res = estimate(Strategy::HotspotCenter, env, radio, dep, opt);

    const std::pair<ServingClass, double> expected[] = {
        {ServingClass::HotspotLos, masses.hotspot_los},
        {ServingClass::HotspotNlos, masses.hotspot_nlos},
        {ServingClass::NearestLos, masses.nearest_los},
        {ServingClass::NearestNlos, masses.nearest_nlos},
        {ServingClass::None, masses.void_mass},
    };
    double worst_sigma = 0.0;
    bool pass = true;
    for (const auto& [cls, mass] : expected) {
        const auto it = res.class_freq.find(cls);
        const double freq = it == res.class_freq.end() ? 0.0 : it->second.mean;
        const double se =
            std::sqrt(mass * (1.0 - mass) / static_cast<double>(opt.n_trials));
        if (se == 0.0) {
            if (freq != mass) pass = false;
            continue;
        }
        worst_sigma = std::max(worst_sigma, std::abs(freq - mass) / se);
    }
    constexpr double tol = 3.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst deviation %.2f standard errors (tolerance %.1f)",
                  worst_sigma, tol);
    return {"association classes vs simulation", pass && worst_sigma <= tol, buf};
}

} // namespace

std::vector<CheckResult> run_selftest() {
    return {
        check_2f1_against_euler(),
        check_i0_against_quadrature(),
        check_derivatives_against_fd(),
        check_laplace_at_zero(),
        check_ppp_laplace_empirical(),
        check_class_masses_mc(),
    };
}

} // namespace uavcov
