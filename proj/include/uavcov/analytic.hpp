#pragma once

#include "uavcov/environment.hpp"
#include "uavcov/params.hpp"

#include <vector>

namespace uavcov {

// Exclusion radii for LOS/NLOS interferers given the serving UAV's channel
// type and distance: no interferer of type j may offer a stronger long-term
// power than the serving link, which bounds its horizontal distance below.
struct InterferenceBounds {
    double c_los = 0.0;
    double c_nlos = 0.0;
    double of(ChannelType j) const { return j == ChannelType::Los ? c_los : c_nlos; }
};

// Analytical downlink model for one (environment, radio, deployment) triple:
// association probabilities, interference Laplace transforms with their
// s-derivatives, and the coverage / spectral-efficiency integrals.
//
// Only HotspotCenter and UniformPPP deployments have analytic forms; the
// grid and k-means strategies are simulation-only.
class AnalyticModel {
public:
    AnalyticModel(const UrbanEnvironment& env, const RadioConfig& radio, const Deployment& dep,
                  const QuadratureSpec& quad = {});

    double cone_radius_m() const { return u_; }
    double gain_w() const { return eta_; }

    InterferenceBounds interference_bounds(ChannelType t_star, double r_star) const;

    // Distance (and joint distance/channel) densities of the user's own
    // hotspot UAV, and of the nearest UAV of channel type j.
    double pdf_hotspot_distance(double r) const;
    double pdf_hotspot_joint(double r, ChannelType j) const;
    double pdf_nearest(double r, ChannelType j) const;

    // Probability that no other UAV outbids the hotspot UAV serving at
    // (t_star, r_star): a void probability over both exclusion disks.
    double assoc_prob_hotspot(ChannelType t_star, double r_star) const;

    // Probability that the own hotspot UAV is weaker than the serving
    // candidate described by the exclusion bounds.
    double prob_b0(const InterferenceBounds& b) const;
    double prob_b0(ChannelType t_star, double r_star) const;

    // Probability that the nearest type-j UAV at r_star is the serving UAV.
    double assoc_prob_nearest(ChannelType j, double r_star) const;

    // Laplace kernel of one interferer's faded power at horizontal distance
    // r0: E[exp(-s eta H l)] = (1 + c s)^{-m_j}, c = eta l(r0)/m_j; equals 1
    // beyond the cone. g_kernel_deriv gives the p-th s-derivative.
    double g_kernel(double r0, double s, ChannelType j) const;
    double g_kernel_deriv(int p, double r0, double s, ChannelType j) const;

    // Laplace transform of the interference from the (non-serving) hotspot
    // UAV of the reference user, and its s-derivatives.
    double laplace_i0(double s, ChannelType t_star, double r_star) const;
    double laplace_i0_deriv(int i, double s, ChannelType t_star, double r_star) const;

    // Laplace transform of the field of type-j interferers outside the
    // exclusion radius (probability generating functional of the thinned
    // PPP, truncated at the cone), and its s-derivatives.
    double laplace_ppp(double s, ChannelType j, const InterferenceBounds& b) const;
    double laplace_ppp_deriv(int n, double s, ChannelType j, const InterferenceBounds& b) const;

    // k-th s-derivative of the product of all interference transforms and
    // the noise factor exp(-s sigma^2), via the general Leibniz rule.
    double laplace_total_deriv(int k, double s, ServingClass v, double r_star) const;

    double coverage_probability() const;
    double coverage_probability(double threshold_linear) const;
    double spectral_efficiency() const;

    struct ClassMasses {
        double hotspot_los = 0.0;
        double hotspot_nlos = 0.0;
        double nearest_los = 0.0;
        double nearest_nlos = 0.0;
        double void_mass = 0.0; // no UAV inside the antenna cone
        double sum() const {
            return hotspot_los + hotspot_nlos + nearest_los + nearest_nlos + void_mass;
        }
    };
    ClassMasses class_masses() const;

    const UrbanEnvironment& env() const { return env_; }
    const RadioConfig& radio() const { return radio_; }
    const Deployment& dep() const { return dep_; }
    const LosProfile& profile() const { return profile_; }

private:
    std::vector<double> laplace_i0_all(int imax, double s, ChannelType t_star,
                                       const InterferenceBounds& b) const;
    std::vector<double> laplace_ppp_all(int nmax, double s, ChannelType j, double c_j) const;
    std::vector<double> total_deriv_all(int kmax, double s, ServingClass v, double r_star) const;
    double class_integrand(ServingClass v, double r_star, double threshold) const;
    double association_weight(ServingClass v, double r_star) const;
    std::vector<double> outer_splits(ChannelType t_star, double upper) const;
    double integrate_class(ServingClass v, double threshold) const;
    double class_mass(ServingClass v) const;

    UrbanEnvironment env_;
    RadioConfig radio_;
    Deployment dep_;
    QuadratureSpec quad_;
    LosProfile profile_;
    double u_;     // cone radius
    double eta_;   // in-cone effective radiated power
    double sqrt_bd_;
};

} // namespace uavcov
