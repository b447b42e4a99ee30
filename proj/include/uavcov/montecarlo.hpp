#pragma once

#include "uavcov/params.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace uavcov {

struct Scenario {
    Eigen::Vector2d reference_user{0.0, 0.0}; // origin by construction
    std::vector<Eigen::Vector2d> hotspot_centers; // [0] is the reference user's own
    std::vector<Eigen::Vector2d> users;           // populated for KMeans only
    std::vector<Eigen::Vector2d> uav_positions;
    std::vector<ChannelType> channel_types; // one per UAV
    int hotspot_uav_index = -1; // the reference hotspot's UAV under HotspotCenter
};

struct Estimate {
    double mean = 0.0;
    double half_width_95 = 0.0;
    long n_trials = 0;
};

struct TrialResult {
    double sinr = 0.0;
    ServingClass serving = ServingClass::None;
    double se_sample = 0.0; // log2(1 + sinr)
};

struct McOptions {
    long n_trials = 20000;
    std::uint64_t master_seed = 1;
    int n_threads = 0;          // 0: hardware concurrency
    double window_scale = 1.0;  // scales the u + r_max window (sufficiency checks)
    int users_per_hotspot = 10; // KMeans user sample size, reference user included
};

struct McResult {
    Estimate coverage;
    Estimate se;
    std::map<ServingClass, Estimate> class_freq;
};

// Counter-based RNG substreams: every trial derives independent generators
// for each sampling phase from (master_seed, trial_index), so results do not
// depend on how trials are distributed over threads. Sampling one phase more
// or fewer times never shifts the draws of another phase, which keeps paired
// runs (e.g. enlarged-window checks) maximally correlated.
struct TrialStream {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;

    enum Phase : std::uint64_t {
        kGeometry = 1, // reference hotspot + other hotspot centers
        kUsers = 2,    // per-hotspot user draws
        kPlacement = 3,// strategy-specific UAV placement randomness
        kChannel = 4,  // per-UAV LOS/NLOS draws
        kFading = 5,   // per-UAV fading draws
    };

    std::mt19937_64 phase(std::uint64_t tag) const;
};

// Uniform double in [0,1) from the top 53 bits of the generator.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Geometry around the typical user at the origin: its hotspot center at
// distance r_max*sqrt(U), remaining hotspot centers a homogeneous PPP in the
// disk of radius (u + r_max) * window_scale, UAVs per strategy, and one
// channel-type draw per UAV. UAV lists are ordered by distance from the
// origin (the reference hotspot's UAV first under HotspotCenter).
Scenario sample_typical_scenario(Strategy strategy, const UrbanEnvironment& env,
                                 const RadioConfig& radio, const Deployment& dep,
                                 const TrialStream& rng, const McOptions& opt = {});

// Lloyd's algorithm from k-means++ seeding; runs to an assignment fixpoint or
// 100 iterations; empty clusters are re-seeded at the point farthest from its
// current centroid. Throws std::invalid_argument unless 1 <= k <= |points|.
std::vector<Eigen::Vector2d> kmeans_centroids(const std::vector<Eigen::Vector2d>& points, int k,
                                              std::mt19937_64& rng);

// Associates by long-term mean power (fading averaged out), then draws
// Nakagami-m power fading (Gamma with shape m, mean 1) per in-cone UAV in
// list order and forms SINR = S_star / (I + noise). No in-cone UAV: SINR 0,
// class none.
TrialResult run_trial(const Scenario& sc, const UrbanEnvironment& env, const RadioConfig& radio,
                      const Deployment& dep, std::mt19937_64& fading_rng);

// Averages over n_trials independent scenarios. Deterministic for a given
// master_seed regardless of thread count: trials use counter-based substreams
// and land in per-trial slots reduced in index order.
McResult estimate(Strategy strategy, const UrbanEnvironment& env, const RadioConfig& radio,
                  const Deployment& dep, const McOptions& opt);
McResult estimate(Strategy strategy, const UrbanEnvironment& env, const RadioConfig& radio,
                  const Deployment& dep, long n_trials, std::uint64_t master_seed);

} // namespace uavcov
