#include "uavcov/oracle.hpp"

#include "uavcov/environment.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace uavcov {
namespace oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.5707963267948966;
} // namespace

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    if (a > b) return -tanh_sinh(f, b, a, rel_tol);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    // The distance of a node from its endpoint, 1 - tanh(sh) = 2/(1+e^{2sh}),
    // is formed directly: going through tanh would cancel near the endpoints
    // and truncate integrable singularities there.
    const auto node_sum = [&](double u) {
        const double sh = kHalfPi * std::sinh(u);
        const double dist = 2.0 / (1.0 + std::exp(2.0 * sh));
        const double w = kHalfPi * std::cosh(u) / (std::cosh(sh) * std::cosh(sh));
        if (w < 1e-300 || dist < 1e-290) return std::pair<double, bool>{0.0, false};
        double acc = 0.0;
        const double xr = b - half * dist;
        const double xl = a + half * dist;
        if (xr < b) acc += f(xr);
        if (xl > a) acc += f(xl);
        return std::pair<double, bool>{w * acc, true};
    };

    double h = 1.0;
    double sum = kHalfPi * f(mid); // u = 0 node
    for (int k = 1;; ++k) {
        const auto [v, alive] = node_sum(k * h);
        if (!alive) break;
        sum += v;
    }
    double integral = h * sum;
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        for (int k = 1;; k += 2) {
            const auto [v, alive] = node_sum(k * h);
            if (!alive) break;
            sum += v;
        }
        const double refined = h * sum;
        const bool settled = std::abs(refined - integral) <=
                             rel_tol * std::abs(refined) + 1e-300;
        integral = refined;
        if (settled && level >= 5) break;
    }
    return half * integral;
}

double hyp2f1_euler(double a, double b, double c, double z) {
    if (!(c > b && b > 0.0)) throw std::invalid_argument("hyp2f1_euler needs c > b > 0");
    if (!(z <= 0.0)) throw std::invalid_argument("hyp2f1_euler needs z <= 0");
    const double prefactor = std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b));
    const auto integrand = [&](double t) {
        double lg = (b - 1.0) * std::log(t);
        if (c - b != 1.0) lg += (c - b - 1.0) * std::log1p(-t);
        lg -= a * std::log1p(-z * t);
        return std::exp(lg);
    };
    return prefactor * tanh_sinh(integrand, 0.0, 1.0, 1e-13);
}

double fd1(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double fd2(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

MeanSe empirical_laplace(const UrbanEnvironment& env, const RadioConfig& radio,
                         const Deployment& dep, ChannelType j, double c_j, double s,
                         long n_realizations, std::uint64_t seed) {
    if (n_realizations < 2) throw std::invalid_argument("need at least 2 realizations");
    const double u = cone_radius(radio, dep);
    const double eta = antenna_gain(0.0, radio, dep);
    const double alpha = alpha_of(radio, j);
    const double m = nakagami_m_of(radio, j);
    const LosProfile profile(env, dep.height_m, u);

    std::mt19937_64 g(seed);
    std::poisson_distribution<long> count(dep.density_per_m2 * kPi * u * u);
    std::gamma_distribution<double> fading(m, 1.0 / m);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double sum = 0.0, sumsq = 0.0;
    for (long trial = 0; trial < n_realizations; ++trial) {
        const long n = count(g);
        double interference = 0.0;
        for (long i = 0; i < n; ++i) {
            const double r = u * std::sqrt(unit(g));
            const bool kept = unit(g) < profile.p(j, r);
            if (!kept || r <= c_j) continue;
            interference += eta * pathloss(r, dep.height_m, alpha) * fading(g);
        }
        const double v = std::exp(-s * interference);
        sum += v;
        sumsq += v * v;
    }
    const double n = static_cast<double>(n_realizations);
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

double chi_square_stat(const std::vector<long>& counts, const std::vector<double>& probs) {
    if (counts.size() != probs.size() || counts.empty())
        throw std::invalid_argument("counts and probs must be equal-length and nonempty");
    long total = 0;
    for (long c : counts) total += c;
    double stat = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = probs[i] * static_cast<double>(total);
        if (!(expected > 0.0)) throw std::invalid_argument("expected bin count must be positive");
        const double d = static_cast<double>(counts[i]) - expected;
        stat += d * d / expected;
    }
    return stat;
}

} // namespace oracle
} // namespace uavcov
