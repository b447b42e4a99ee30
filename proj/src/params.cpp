#include "uavcov/params.hpp"

#include <cmath>

namespace uavcov {

const char* to_string(ChannelType t) {
    return t == ChannelType::Los ? "los" : "nlos";
}

const char* to_string(Strategy s) {
    switch (s) {
    case Strategy::HotspotCenter: return "hotspot";
    case Strategy::UniformPPP: return "ppp";
    case Strategy::RectGrid: return "grid";
    case Strategy::KMeans: return "kmeans";
    }
    return "?";
}

const char* to_string(ServingClass v) {
    switch (v) {
    case ServingClass::HotspotLos: return "hotspot_los";
    case ServingClass::HotspotNlos: return "hotspot_nlos";
    case ServingClass::NearestLos: return "nearest_los";
    case ServingClass::NearestNlos: return "nearest_nlos";
    case ServingClass::None: return "none";
    }
    return "?";
}

namespace {
void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}
} // namespace

void validate(const UrbanEnvironment& env) {
    require(std::isfinite(env.beta_per_m2) && env.beta_per_m2 > 0.0,
            "building density must be positive");
    require(std::isfinite(env.delta) && env.delta > 0.0 && env.delta < 1.0,
            "built-up fraction must lie in (0,1)");
    require(std::isfinite(env.kappa_m) && env.kappa_m > 0.0,
            "building height scale must be positive");
}

void validate(const RadioConfig& radio) {
    require(std::isfinite(radio.alpha_los) && radio.alpha_los > 2.0,
            "LOS pathloss exponent must exceed 2");
    require(std::isfinite(radio.alpha_nlos) && radio.alpha_nlos >= radio.alpha_los,
            "NLOS pathloss exponent must be at least the LOS exponent");
    require(radio.m_nlos >= 1, "NLOS Nakagami shape must be a positive integer");
    require(radio.m_los >= radio.m_nlos,
            "LOS Nakagami shape must be at least the NLOS shape");
    require(std::isfinite(radio.tx_power_w) && radio.tx_power_w > 0.0,
            "transmit power must be positive");
    require(std::isfinite(radio.noise_w) && radio.noise_w >= 0.0,
            "noise power must be nonnegative");
    require(std::isfinite(radio.beamwidth_rad) && radio.beamwidth_rad > 0.0 &&
                radio.beamwidth_rad < 3.141592653589793,
            "beamwidth must lie in (0,pi) radians");
    require(std::isfinite(radio.threshold_linear) && radio.threshold_linear > 0.0,
            "SINR threshold must be positive");
}

void validate(const Deployment& dep) {
    require(std::isfinite(dep.height_m) && dep.height_m > 0.0,
            "UAV height must be positive");
    require(std::isfinite(dep.density_per_m2) && dep.density_per_m2 > 0.0,
            "hotspot density must be positive");
    require(std::isfinite(dep.hotspot_radius_m) && dep.hotspot_radius_m > 0.0,
            "hotspot radius must be positive");
}

} // namespace uavcov
