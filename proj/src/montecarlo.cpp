#include "uavcov/montecarlo.hpp"

#include "uavcov/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace uavcov {

namespace {

constexpr double kPi = 3.141592653589793;

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Squared-radius inversion: the squared radii of a homogeneous PPP in a disk
// form a unit-dimensional Poisson process of rate intensity*pi, so cumulative
// exponential gaps give the points sorted by distance. Enlarging the disk
// extends the same realization instead of redrawing it.
void append_ppp_disk(std::vector<Eigen::Vector2d>& out, double intensity, double radius,
                     std::mt19937_64& g) {
    if (intensity <= 0.0 || radius <= 0.0) return;
    const double rate = intensity * kPi;
    const double w2 = radius * radius;
    double a = 0.0;
    for (;;) {
        a += -std::log1p(-uniform01(g)) / rate;
        if (a > w2) break;
        const double ang = 2.0 * kPi * uniform01(g);
        const double r = std::sqrt(a);
        out.emplace_back(r * std::cos(ang), r * std::sin(ang));
    }
}

struct RadialOrder {
    bool operator()(const Eigen::Vector2d& p, const Eigen::Vector2d& q) const {
        const double np = p.squaredNorm(), nq = q.squaredNorm();
        if (np != nq) return np < nq;
        if (p.x() != q.x()) return p.x() < q.x();
        return p.y() < q.y();
    }
};

} // namespace

std::mt19937_64 TrialStream::phase(std::uint64_t tag) const {
    std::uint64_t s = mix64(master_seed);
    s = mix64(s ^ trial_index);
    s = mix64(s ^ tag);
    return std::mt19937_64(s);
}

Scenario sample_typical_scenario(Strategy strategy, const UrbanEnvironment& env,
                                 const RadioConfig& radio, const Deployment& dep,
                                 const TrialStream& rng, const McOptions& opt) {
    validate(env);
    validate(radio);
    validate(dep);
    const double gamma = dep.height_m;
    const double window = (cone_radius(radio, dep) + dep.hotspot_radius_m) * opt.window_scale;
    const double lam = dep.density_per_m2;
    // Clustering is a global solve: centroids near the window edge are pulled
    // inward by their truncated clusters, and the distortion cascades a few
    // UAV spacings toward the origin. Padding the k-means geometry keeps the
    // solution around the cone boundary-stable; UAVs beyond the cone still
    // contribute zero gain, so the coverage window itself is unchanged.
    const double geometry_window =
        strategy == Strategy::KMeans ? window + 2.0 / std::sqrt(lam) : window;

    Scenario sc;
    auto geom = rng.phase(TrialStream::kGeometry);
    {
        // Center such that the origin user is uniform in the hotspot disk.
        const double r0 = dep.hotspot_radius_m * std::sqrt(uniform01(geom));
        const double a0 = 2.0 * kPi * uniform01(geom);
        sc.hotspot_centers.emplace_back(r0 * std::cos(a0), r0 * std::sin(a0));
    }
    append_ppp_disk(sc.hotspot_centers, lam, geometry_window, geom);

    if (strategy == Strategy::KMeans) {
        auto us = rng.phase(TrialStream::kUsers);
        const int per = std::max(1, opt.users_per_hotspot);
        sc.users.push_back(sc.reference_user);
        for (std::size_t h = 0; h < sc.hotspot_centers.size(); ++h) {
            const int want = (h == 0) ? per - 1 : per;
            for (int i = 0; i < want; ++i) {
                const double r = dep.hotspot_radius_m * std::sqrt(uniform01(us));
                const double a = 2.0 * kPi * uniform01(us);
                sc.users.emplace_back(sc.hotspot_centers[h].x() + r * std::cos(a),
                                      sc.hotspot_centers[h].y() + r * std::sin(a));
            }
        }
    }

    switch (strategy) {
    case Strategy::HotspotCenter:
        sc.uav_positions = sc.hotspot_centers;
        sc.hotspot_uav_index = 0;
        break;
    case Strategy::UniformPPP: {
        auto pl = rng.phase(TrialStream::kPlacement);
        append_ppp_disk(sc.uav_positions, lam, window, pl);
        break;
    }
    case Strategy::RectGrid: {
        auto pl = rng.phase(TrialStream::kPlacement);
        const double spacing = 1.0 / std::sqrt(lam);
        const double ox = spacing * uniform01(pl);
        const double oy = spacing * uniform01(pl);
        const long imin = static_cast<long>(std::floor((-window - ox) / spacing)) - 1;
        const long imax = static_cast<long>(std::ceil((window - ox) / spacing)) + 1;
        const long jmin = static_cast<long>(std::floor((-window - oy) / spacing)) - 1;
        const long jmax = static_cast<long>(std::ceil((window - oy) / spacing)) + 1;
        const double w2 = window * window;
        for (long i = imin; i <= imax; ++i) {
            for (long j = jmin; j <= jmax; ++j) {
                const Eigen::Vector2d p(ox + static_cast<double>(i) * spacing,
                                        oy + static_cast<double>(j) * spacing);
                if (p.squaredNorm() <= w2) sc.uav_positions.push_back(p);
            }
        }
        std::sort(sc.uav_positions.begin(), sc.uav_positions.end(), RadialOrder{});
        break;
    }
    case Strategy::KMeans: {
        auto pl = rng.phase(TrialStream::kPlacement);
        // One UAV per hotspot in the window, matching the per-realization
        // UAV count of the other placements rather than its expectation.
        long k = static_cast<long>(sc.hotspot_centers.size());
        k = std::max(1L, std::min(k, static_cast<long>(sc.users.size())));
        sc.uav_positions = kmeans_centroids(sc.users, static_cast<int>(k), pl);
        std::sort(sc.uav_positions.begin(), sc.uav_positions.end(), RadialOrder{});
        break;
    }
    }

    auto ch = rng.phase(TrialStream::kChannel);
    sc.channel_types.reserve(sc.uav_positions.size());
    for (const auto& p : sc.uav_positions) {
        const double pl = los_probability(p.norm(), env, gamma);
        sc.channel_types.push_back(uniform01(ch) < pl ? ChannelType::Los : ChannelType::Nlos);
    }
    return sc;
}

std::vector<Eigen::Vector2d> kmeans_centroids(const std::vector<Eigen::Vector2d>& points, int k,
                                              std::mt19937_64& rng) {
    const std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("k-means needs a nonempty point set");
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("k-means cluster count must lie in [1, number of points]");

    std::vector<Eigen::Vector2d> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    // k-means++ seeding with hand-rolled cumulative selection.
    {
        std::size_t first = std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * n));
        centroids.push_back(points[first]);
        std::vector<double> d2(n);
        for (std::size_t i = 0; i < n; ++i) d2[i] = (points[i] - centroids[0]).squaredNorm();
        while (centroids.size() < static_cast<std::size_t>(k)) {
            double total = 0.0;
            for (double d : d2) total += d;
            std::size_t pick = 0;
            if (total > 0.0) {
                const double target = uniform01(rng) * total;
                double cum = 0.0;
                pick = n - 1;
                for (std::size_t i = 0; i < n; ++i) {
                    cum += d2[i];
                    if (cum > target) {
                        pick = i;
                        break;
                    }
                }
            } else {
                pick = std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * n));
            }
            centroids.push_back(points[pick]);
            for (std::size_t i = 0; i < n; ++i)
                d2[i] = std::min(d2[i], (points[i] - centroids.back()).squaredNorm());
        }
    }

    std::vector<int> assign(n, -1);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double bd = (points[i] - centroids[0]).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double d = (points[i] - centroids[static_cast<std::size_t>(c)]).squaredNorm();
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        std::vector<int> count(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) ++count[static_cast<std::size_t>(assign[i])];
        for (int c = 0; c < k; ++c) {
            if (count[static_cast<std::size_t>(c)] > 0) continue;
            // Re-seed an empty cluster at the point farthest from its centroid.
            std::size_t far = 0;
            double fd = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (count[static_cast<std::size_t>(assign[i])] <= 1) continue;
                const double d =
                    (points[i] - centroids[static_cast<std::size_t>(assign[i])]).squaredNorm();
                if (d > fd) {
                    fd = d;
                    far = i;
                }
            }
            --count[static_cast<std::size_t>(assign[far])];
            assign[far] = c;
            ++count[static_cast<std::size_t>(c)];
            centroids[static_cast<std::size_t>(c)] = points[far];
            changed = true;
        }
        std::vector<Eigen::Vector2d> sums(static_cast<std::size_t>(k), Eigen::Vector2d::Zero());
        for (std::size_t i = 0; i < n; ++i) sums[static_cast<std::size_t>(assign[i])] += points[i];
        for (int c = 0; c < k; ++c)
            centroids[static_cast<std::size_t>(c)] =
                sums[static_cast<std::size_t>(c)] / count[static_cast<std::size_t>(c)];
        if (!changed) break;
    }
    return centroids;
}

TrialResult run_trial(const Scenario& sc, const UrbanEnvironment&, const RadioConfig& radio,
                      const Deployment& dep, std::mt19937_64& fading_rng) {
    const double u = cone_radius(radio, dep);
    const double gamma = dep.height_m;
    const double eta = antenna_gain(0.0, radio, dep);
    const std::size_t n = sc.uav_positions.size();

    // Association on long-term mean power; fading averages out (E[H] = 1).
    int best = -1;
    double best_power = 0.0;
    std::vector<double> mean_power(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = sc.uav_positions[i].norm();
        if (r > u) continue;
        const double p = eta * pathloss(r, gamma, alpha_of(radio, sc.channel_types[i]));
        mean_power[i] = p;
        if (p > best_power) {
            best_power = p;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) return {0.0, ServingClass::None, 0.0};

    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (mean_power[i] <= 0.0) continue;
        const int m = nakagami_m_of(radio, sc.channel_types[i]);
        std::gamma_distribution<double> fade(static_cast<double>(m), 1.0 / m);
        const double p = mean_power[i] * fade(fading_rng);
        if (static_cast<int>(i) == best)
            signal = p;
        else
            interference += p;
    }
    const double denom = interference + radio.noise_w;
    const double sinr =
        denom > 0.0 ? signal / denom : std::numeric_limits<double>::infinity();

    ServingClass cls;
    const bool own = best == sc.hotspot_uav_index;
    if (sc.channel_types[static_cast<std::size_t>(best)] == ChannelType::Los)
        cls = own ? ServingClass::HotspotLos : ServingClass::NearestLos;
    else
        cls = own ? ServingClass::HotspotNlos : ServingClass::NearestNlos;
    return {sinr, cls, std::log2(1.0 + sinr)};
}

namespace {

Estimate bernoulli_estimate(double count, long n) {
    const double p = count / static_cast<double>(n);
    const double var = (n > 1) ? p * (1.0 - p) * n / (n - 1.0) : 0.0;
    return {p, 1.96 * std::sqrt(var / static_cast<double>(n)), n};
}

double kahan_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace

McResult estimate(Strategy strategy, const UrbanEnvironment& env, const RadioConfig& radio,
                  const Deployment& dep, const McOptions& opt) {
    validate(env);
    validate(radio);
    validate(dep);
    if (opt.n_trials < 100) throw std::invalid_argument("n_trials must be at least 100");
    const long n = opt.n_trials;
    Deployment d = dep;
    d.strategy = strategy;

    std::vector<double> se(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> covered(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> cls(static_cast<std::size_t>(n));

    auto worker = [&](long lo, long hi) {
        for (long t = lo; t < hi; ++t) {
            const TrialStream ts{opt.master_seed, static_cast<std::uint64_t>(t)};
            const Scenario sc = sample_typical_scenario(strategy, env, radio, d, ts, opt);
            auto fading = ts.phase(TrialStream::kFading);
            const TrialResult tr = run_trial(sc, env, radio, d, fading);
            covered[static_cast<std::size_t>(t)] = tr.sinr > radio.threshold_linear ? 1 : 0;
            se[static_cast<std::size_t>(t)] = tr.se_sample;
            cls[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(tr.serving);
        }
    };

    int threads = opt.n_threads > 0 ? opt.n_threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<long>(threads, n));
    if (threads == 1) {
        worker(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        const long chunk = (n + threads - 1) / threads;
        for (int i = 0; i < threads; ++i) {
            const long lo = i * chunk;
            const long hi = std::min(n, lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    McResult res;
    double covered_count = 0.0;
    for (auto c : covered) covered_count += c;
    res.coverage = bernoulli_estimate(covered_count, n);

    const double se_mean = kahan_sum(se) / static_cast<double>(n);
    std::vector<double> dev(se.size());
    for (std::size_t i = 0; i < se.size(); ++i) {
        const double e = se[i] - se_mean;
        dev[i] = e * e;
    }
    const double se_var = (n > 1) ? kahan_sum(dev) / (n - 1.0) : 0.0;
    res.se = {se_mean, 1.96 * std::sqrt(se_var / static_cast<double>(n)), n};

    for (ServingClass v : {ServingClass::HotspotLos, ServingClass::HotspotNlos,
                           ServingClass::NearestLos, ServingClass::NearestNlos,
                           ServingClass::None}) {
        double count = 0.0;
        for (auto c : cls)
            if (c == static_cast<std::uint8_t>(v)) count += 1.0;
        res.class_freq[v] = bernoulli_estimate(count, n);
    }
    return res;
}

McResult estimate(Strategy strategy, const UrbanEnvironment& env, const RadioConfig& radio,
                  const Deployment& dep, long n_trials, std::uint64_t master_seed) {
    McOptions opt;
    opt.n_trials = n_trials;
    opt.master_seed = master_seed;
    return estimate(strategy, env, radio, dep, opt);
}

} // namespace uavcov
