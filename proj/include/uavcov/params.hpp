#pragma once

#include <stdexcept>
#include <string>

namespace uavcov {

// Thrown when an iterative numeric routine fails to converge; carries the
// offending arguments so sweep drivers can report the failing point.
class NumericFailure : public std::runtime_error {
public:
    explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

enum class ChannelType { Los, Nlos };

enum class Strategy { HotspotCenter, UniformPPP, RectGrid, KMeans };

// Serving-link classes: the reference user's own hotspot UAV (LOS or NLOS
// channel) or the strongest remaining UAV of either channel type.
enum class ServingClass { HotspotLos, HotspotNlos, NearestLos, NearestNlos, None };

// Building grid: beta buildings per square metre, delta the built-up area
// fraction, kappa the Rayleigh scale of building heights in metres.
struct UrbanEnvironment {
    double beta_per_m2 = 300.0e-6;
    double delta = 0.5;
    double kappa_m = 20.0;
};

struct RadioConfig {
    double alpha_los = 2.1;
    double alpha_nlos = 4.0;
    int m_los = 3;
    int m_nlos = 1;
    double tx_power_w = 0.1;
    double noise_w = 1.0e-9;
    double beamwidth_rad = 2.6179938779914944; // 150 degrees
    double threshold_linear = 1.0;             // 0 dB
};

struct Deployment {
    double height_m = 100.0;
    double density_per_m2 = 5.0e-6; // UAVs (= hotspots) per square metre
    double hotspot_radius_m = 100.0;
    Strategy strategy = Strategy::HotspotCenter;
};

struct QuadratureSpec {
    double abs_tol = 1.0e-10;
    double rel_tol = 1.0e-9;
    int max_subdivisions = 512;
};

inline double alpha_of(const RadioConfig& radio, ChannelType t) {
    return t == ChannelType::Los ? radio.alpha_los : radio.alpha_nlos;
}

inline int nakagami_m_of(const RadioConfig& radio, ChannelType t) {
    return t == ChannelType::Los ? radio.m_los : radio.m_nlos;
}

const char* to_string(ChannelType t);
const char* to_string(Strategy s);
const char* to_string(ServingClass v);

// All validators throw std::invalid_argument naming the violated constraint.
void validate(const UrbanEnvironment& env);
void validate(const RadioConfig& radio);
void validate(const Deployment& dep);

} // namespace uavcov
