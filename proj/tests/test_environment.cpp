#include "uavcov/environment.hpp"
#include "uavcov/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace uavcov;

namespace {

RadioConfig default_radio() { return {}; }

Deployment at_height(double gamma) {
    Deployment dep;
    dep.height_m = gamma;
    return dep;
}

} // namespace

TEST_CASE("cone radius follows the beam geometry") {
    CHECK(cone_radius(default_radio(), at_height(100.0)) ==
          doctest::Approx(373.20508).epsilon(1e-6));
    RadioConfig right_angle;
    right_angle.beamwidth_rad = M_PI / 2.0;
    CHECK(cone_radius(right_angle, at_height(50.0)) == doctest::Approx(50.0).epsilon(1e-12));
    RadioConfig narrow;
    narrow.beamwidth_rad = 1e-3;
    CHECK(cone_radius(narrow, at_height(100.0)) < 0.1);
}

TEST_CASE("antenna gain is constant inside the cone and zero outside") {
    const RadioConfig radio = default_radio();
    const Deployment dep = at_height(100.0);
    const double inside = antenna_gain(0.0, radio, dep);
    CHECK(inside == doctest::Approx(0.73339).epsilon(1e-4));
    CHECK(antenna_gain(200.0, radio, dep) == inside);
    // The boundary belongs to the cone.
    CHECK(antenna_gain(cone_radius(radio, dep), radio, dep) == inside);
    CHECK(antenna_gain(400.0, radio, dep) == 0.0);
    CHECK(antenna_gain(std::nextafter(cone_radius(radio, dep), 1e9), radio, dep) == 0.0);
}

TEST_CASE("pathloss closed values and monotonicity") {
    CHECK(pathloss(0.0, 100.0, 2.0) == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(pathloss(0.0, 100.0, 2.1) == doctest::Approx(6.3096e-5).epsilon(1e-4));
    double prev = pathloss(0.0, 100.0, 4.0);
    for (double r = 10.0; r <= 500.0; r += 10.0) {
        const double v = pathloss(r, 100.0, 4.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("LOS probability closed values") {
    const UrbanEnvironment env;
    CHECK(los_probability(0.0, env, 100.0) == 1.0);
    // One building crossed at r = 100 for the default grid: the blocking
    // screen sits at half height, so P = 1 - exp(-(gamma/2)^2 / (2 kappa^2)).
    CHECK(los_probability(100.0, env, 100.0) ==
          doctest::Approx(1.0 - std::exp(-3.125)).epsilon(1e-9));
    CHECK(los_probability(100.0, env, 1e9) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("LOS step radii") {
    const UrbanEnvironment env;
    auto pts = los_breakpoints(env, 100.0);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == doctest::Approx(81.6497).epsilon(1e-4));
    CHECK(los_breakpoints(env, 81.0).empty());
    CHECK(los_breakpoints(env, 0.0).empty());
    auto many = los_breakpoints(env, 1000.0);
    CHECK(many.size() == 12);
    for (std::size_t q = 0; q < many.size(); ++q)
        CHECK(many[q] == doctest::Approx((q + 1) * many[0]).epsilon(1e-12));
}

TEST_CASE("LOS probability is a valid nonincreasing step function") {
    const UrbanEnvironment env;
    for (double gamma : {50.0, 100.0, 200.0}) {
        double prev = 1.0;
        for (double r = 0.0; r <= 2000.0; r += 1.0) {
            const double p = los_probability(r, env, gamma);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            CHECK(p <= prev + 1e-12);
            prev = p;
        }
    }
    // Constant between consecutive step radii.
    auto edges = los_breakpoints(env, 500.0);
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (std::size_t q = 0; q + 1 < edges.size(); ++q) {
        const double left = los_probability(edges[q] + 1e-9, env, 100.0);
        for (int i = 0; i < 8; ++i) {
            const double r = edges[q] + u01(g) * (edges[q + 1] - edges[q] - 2e-9) + 1e-9;
            CHECK(los_probability(r, env, 100.0) == left);
        }
    }
}

TEST_CASE("LOS profile matches the pointwise rule and integrates exactly") {
    const UrbanEnvironment env;
    const double gamma = 100.0;
    LosProfile prof(env, gamma, 600.0);
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> u(0.0, 900.0); // beyond the cache too
    for (int i = 0; i < 200; ++i) {
        const double r = u(g);
        CHECK(prof.p_los(r) == doctest::Approx(los_probability(r, env, gamma)).epsilon(1e-14));
        CHECK(prof.p(ChannelType::Los, r) + prof.p(ChannelType::Nlos, r) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    for (ChannelType j : {ChannelType::Los, ChannelType::Nlos}) {
        for (auto [a, b] : {std::pair{0.0, 50.0}, {10.0, 300.0}, {81.0, 82.0}, {0.0, 600.0}}) {
            auto pts = normalize_splits(los_breakpoints(env, b), a, b);
            const double want =
                integrate_split([&](double t) { return prof.p(j, t) * t; }, pts,
                                {1e-12, 1e-12, 2048});
            CHECK(prof.radial_mass(j, a, b) == doctest::Approx(want).epsilon(1e-10));
        }
        CHECK(prof.radial_mass(j, 5.0, 5.0) == 0.0);
        CHECK(prof.radial_mass(j, 9.0, 2.0) == 0.0);
    }
}
