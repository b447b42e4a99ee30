#pragma once

#include "uavcov/params.hpp"

#include <vector>

namespace uavcov {

// Ground radius of the antenna cone: tan(omega/2) * gamma.
double cone_radius(const RadioConfig& radio, const Deployment& dep);

// Effective radiated power toward a user at horizontal distance r:
// tx_power * 16*pi / omega^2 inside the cone (r <= cone_radius), else 0.
// The boundary is included.
double antenna_gain(double r, const RadioConfig& radio, const Deployment& dep);

// (r^2 + gamma^2)^(-alpha/2).
double pathloss(double r, double gamma, double alpha);

// Building-grid LOS probability at horizontal distance r for a UAV at height
// gamma. With d = floor(r*sqrt(beta*delta)) buildings crossed:
//   d = 0  ->  1
//   else      prod_{n=0}^{d-1} [1 - exp(-(gamma - (n+1/2)gamma/d)^2 / (2 kappa^2))]
double los_probability(double r, const UrbanEnvironment& env, double gamma);

// Radii q/sqrt(beta*delta), q = 1..floor(r_upper*sqrt(beta*delta)), where the
// LOS probability steps.
std::vector<double> los_breakpoints(const UrbanEnvironment& env, double r_upper);

// Piecewise-constant LOS profile for one (environment, height) pair, cached up
// to a given radius. The channel probability is constant on each plateau
// [q/s, (q+1)/s) with s = sqrt(beta*delta), which makes radial integrals of
// P_j(t)*t exact finite sums; those integrals drive every association and void
// probability in the analytic model.
class LosProfile {
public:
    LosProfile(const UrbanEnvironment& env, double gamma, double r_upper);

    double p_los(double r) const;
    double p(ChannelType j, double r) const { return j == ChannelType::Los ? p_los(r) : 1.0 - p_los(r); }

    // Exact integral of P_j(t) * t over [a, b] (clamped to a <= b).
    double radial_mass(ChannelType j, double a, double b) const;

    // Breakpoints within (0, r_upper].
    const std::vector<double>& edges() const { return edges_; }
    double edge_step() const { return step_; }
    double r_upper() const { return r_upper_; }

private:
    double step_;      // 1 / sqrt(beta*delta)
    double r_upper_;
    double gamma_;
    UrbanEnvironment env_;
    std::vector<double> plateau_; // plateau_[q] = P_los on [q*step, (q+1)*step)
    std::vector<double> edges_;
};

} // namespace uavcov
