#include "uavcov/environment.hpp"

#include <algorithm>
#include <cmath>

namespace uavcov {

namespace {

// LOS probability across exactly d buildings.
double plos_for_d(const UrbanEnvironment& env, double gamma, long d) {
    if (d <= 0) return 1.0;
    double p = 1.0;
    for (long n = 0; n < d; ++n) {
        const double h = gamma - (n + 0.5) * gamma / static_cast<double>(d);
        const double q = 1.0 - std::exp(-h * h / (2.0 * env.kappa_m * env.kappa_m));
        p *= q;
        if (p == 0.0) break;
    }
    return p;
}

long buildings_crossed(double r, const UrbanEnvironment& env) {
    return static_cast<long>(std::floor(r * std::sqrt(env.beta_per_m2 * env.delta)));
}

} // namespace

double cone_radius(const RadioConfig& radio, const Deployment& dep) {
    return std::tan(0.5 * radio.beamwidth_rad) * dep.height_m;
}

double antenna_gain(double r, const RadioConfig& radio, const Deployment& dep) {
    if (r > cone_radius(radio, dep)) return 0.0;
    return radio.tx_power_w * 16.0 * 3.141592653589793 /
           (radio.beamwidth_rad * radio.beamwidth_rad);
}

double pathloss(double r, double gamma, double alpha) {
    return std::pow(r * r + gamma * gamma, -0.5 * alpha);
}

double los_probability(double r, const UrbanEnvironment& env, double gamma) {
    return plos_for_d(env, gamma, buildings_crossed(r, env));
}

std::vector<double> los_breakpoints(const UrbanEnvironment& env, double r_upper) {
    std::vector<double> out;
    if (r_upper <= 0.0) return out;
    const double s = std::sqrt(env.beta_per_m2 * env.delta);
    const long q_max = static_cast<long>(std::floor(r_upper * s));
    out.reserve(static_cast<std::size_t>(std::max(0L, q_max)));
    for (long q = 1; q <= q_max; ++q) out.push_back(static_cast<double>(q) / s);
    return out;
}

LosProfile::LosProfile(const UrbanEnvironment& env, double gamma, double r_upper)
    : step_(1.0 / std::sqrt(env.beta_per_m2 * env.delta)),
      r_upper_(r_upper),
      gamma_(gamma),
      env_(env) {
    const long q_max = buildings_crossed(r_upper, env);
    plateau_.reserve(static_cast<std::size_t>(q_max + 1));
    for (long q = 0; q <= q_max; ++q) plateau_.push_back(plos_for_d(env, gamma, q));
    edges_ = los_breakpoints(env, r_upper);
}

double LosProfile::p_los(double r) const {
    const long q = static_cast<long>(std::floor(r / step_));
    if (q >= 0 && static_cast<std::size_t>(q) < plateau_.size())
        return plateau_[static_cast<std::size_t>(q)];
    return plos_for_d(env_, gamma_, q);
}

double LosProfile::radial_mass(ChannelType j, double a, double b) const {
    a = std::max(a, 0.0);
    if (b <= a) return 0.0;
    double sum = 0.0;
    long q = static_cast<long>(std::floor(a / step_));
    double lo = a;
    while (lo < b) {
        const double edge = static_cast<double>(q + 1) * step_;
        const double hi = std::min(b, edge);
        if (hi > lo) {
            const double pl = (static_cast<std::size_t>(q) < plateau_.size())
                                  ? plateau_[static_cast<std::size_t>(q)]
                                  : plos_for_d(env_, gamma_, q);
            const double pj = (j == ChannelType::Los) ? pl : 1.0 - pl;
            sum += pj * 0.5 * (hi * hi - lo * lo);
        }
        lo = edge;
        ++q;
    }
    return sum;
}

} // namespace uavcov
