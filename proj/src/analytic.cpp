#include "uavcov/analytic.hpp"

#include "uavcov/quadrature.hpp"
#include "uavcov/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace uavcov {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kB0Floor = 1.0e-12;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

ChannelType opposite(ChannelType j) {
    return j == ChannelType::Los ? ChannelType::Nlos : ChannelType::Los;
}

ChannelType channel_of(ServingClass v) {
    switch (v) {
    case ServingClass::HotspotLos:
    case ServingClass::NearestLos: return ChannelType::Los;
    case ServingClass::HotspotNlos:
    case ServingClass::NearestNlos: return ChannelType::Nlos;
    case ServingClass::None: break;
    }
    throw std::invalid_argument("serving class carries no channel");
}

bool is_hotspot_class(ServingClass v) {
    return v == ServingClass::HotspotLos || v == ServingClass::HotspotNlos;
}

const UrbanEnvironment& checked(const UrbanEnvironment& e) { validate(e); return e; }
const RadioConfig& checked(const RadioConfig& r) { validate(r); return r; }
const Deployment& checked(const Deployment& d) { validate(d); return d; }
const QuadratureSpec& checked(const QuadratureSpec& q) {
    if (!(q.abs_tol > 0.0) || !(q.rel_tol > 0.0))
        throw std::invalid_argument("quadrature tolerances must be positive");
    if (q.max_subdivisions < 1)
        throw std::invalid_argument("quadrature subdivision budget must be positive");
    return q;
}

double profile_extent(const RadioConfig& radio, const Deployment& dep) {
    return std::max(cone_radius(radio, dep), dep.hotspot_radius_m);
}

} // namespace

AnalyticModel::AnalyticModel(const UrbanEnvironment& env, const RadioConfig& radio,
                             const Deployment& dep, const QuadratureSpec& quad)
    : env_(checked(env)),
      radio_(checked(radio)),
      dep_(checked(dep)),
      quad_(checked(quad)),
      profile_(env, dep.height_m, profile_extent(radio, dep)),
      u_(cone_radius(radio, dep)),
      eta_(antenna_gain(0.0, radio, dep)),
      sqrt_bd_(std::sqrt(env.beta_per_m2 * env.delta)) {}

InterferenceBounds AnalyticModel::interference_bounds(ChannelType t_star, double r_star) const {
    const double g2 = dep_.height_m * dep_.height_m;
    const double d2 = r_star * r_star + g2;
    InterferenceBounds b;
    if (t_star == ChannelType::Los) {
        b.c_los = r_star;
        b.c_nlos =
            std::sqrt(std::max(0.0, std::pow(d2, radio_.alpha_los / radio_.alpha_nlos) - g2));
    } else {
        b.c_nlos = r_star;
        b.c_los = std::min(
            u_, std::sqrt(std::max(0.0, std::pow(d2, radio_.alpha_nlos / radio_.alpha_los) - g2)));
    }
    return b;
}

double AnalyticModel::pdf_hotspot_distance(double r) const {
    const double rmax = dep_.hotspot_radius_m;
    if (r < 0.0 || r > rmax) return 0.0;
    return 2.0 * r / (rmax * rmax);
}

double AnalyticModel::pdf_hotspot_joint(double r, ChannelType j) const {
    const double f = pdf_hotspot_distance(r);
    return f == 0.0 ? 0.0 : profile_.p(j, r) * f;
}

double AnalyticModel::pdf_nearest(double r, ChannelType j) const {
    if (r < 0.0) return 0.0;
    const double lam = dep_.density_per_m2;
    const double twopil = 2.0 * kPi * lam;
    return twopil * profile_.p(j, r) * r * std::exp(-twopil * profile_.radial_mass(j, 0.0, r));
}

double AnalyticModel::assoc_prob_hotspot(ChannelType t_star, double r_star) const {
    const InterferenceBounds b = interference_bounds(t_star, r_star);
    const double lam = dep_.density_per_m2;
    const double mass = profile_.radial_mass(ChannelType::Los, 0.0, b.c_los) +
                        profile_.radial_mass(ChannelType::Nlos, 0.0, b.c_nlos);
    return std::exp(-2.0 * kPi * lam * mass);
}

double AnalyticModel::prob_b0(const InterferenceBounds& b) const {
    const double rmax = dep_.hotspot_radius_m;
    const double mass =
        profile_.radial_mass(ChannelType::Los, 0.0, std::min(b.c_los, rmax)) +
        profile_.radial_mass(ChannelType::Nlos, 0.0, std::min(b.c_nlos, rmax));
    return std::clamp(1.0 - 2.0 * mass / (rmax * rmax), 0.0, 1.0);
}

double AnalyticModel::prob_b0(ChannelType t_star, double r_star) const {
    return prob_b0(interference_bounds(t_star, r_star));
}

double AnalyticModel::assoc_prob_nearest(ChannelType j, double r_star) const {
    const InterferenceBounds b = interference_bounds(j, r_star);
    const ChannelType jo = opposite(j);
    const double lam = dep_.density_per_m2;
    double a = std::exp(-2.0 * kPi * lam * profile_.radial_mass(jo, 0.0, b.of(jo)));
    if (dep_.strategy == Strategy::HotspotCenter) a *= prob_b0(b);
    return a;
}

double AnalyticModel::g_kernel(double r0, double s, ChannelType j) const {
    if (r0 > u_) return 1.0;
    const int m = nakagami_m_of(radio_, j);
    const double c = eta_ * pathloss(r0, dep_.height_m, alpha_of(radio_, j)) / m;
    return std::exp(-m * std::log1p(c * s));
}

double AnalyticModel::g_kernel_deriv(int p, double r0, double s, ChannelType j) const {
    if (p < 0) throw std::invalid_argument("derivative order must be nonnegative");
    if (p == 0) return g_kernel(r0, s, j);
    if (r0 > u_) return 0.0;
    const int m = nakagami_m_of(radio_, j);
    const double c = eta_ * pathloss(r0, dep_.height_m, alpha_of(radio_, j)) / m;
    return std::pow(-c, p) * pochhammer(m, p) * std::pow(1.0 + c * s, -(m + p));
}

std::vector<double> AnalyticModel::laplace_i0_all(int imax, double s, ChannelType,
                                                  const InterferenceBounds& b) const {
    std::vector<double> L(static_cast<std::size_t>(imax) + 1, 0.0);
    const double rmax = dep_.hotspot_radius_m;
    const double b0 = prob_b0(b);
    if (b0 < kB0Floor) {
        L[0] = 1.0;
        return L;
    }
    const double norm = 1.0 / (rmax * rmax * b0);

    if (s == 0.0) {
        if (imax >= 1)
            throw std::invalid_argument("interference transform derivatives require s > 0");
        double acc = 0.0;
        for (ChannelType j : {ChannelType::Los, ChannelType::Nlos})
            acc += 2.0 * profile_.radial_mass(j, std::min(b.of(j), rmax), rmax);
        L[0] = acc * norm;
        return L;
    }

    const double lim = std::min(rmax, u_);
    const double g2 = dep_.height_m * dep_.height_m;
    std::vector<double> acc(L.size(), 0.0);
    std::vector<double> phi(L.size()), phi_prev(L.size());

    for (ChannelType j : {ChannelType::Los, ChannelType::Nlos}) {
        const double cj = b.of(j);
        if (cj < lim) {
            const double alpha = alpha_of(radio_, j);
            const int m = nakagami_m_of(radio_, j);
            const double bsym = 2.0 / alpha;
            const double csym = 1.0 + bsym;
            // Plateau edges covering [cj, lim]; the closed form telescopes
            // over per-edge potentials weighted by the plateau LOS value.
            const std::vector<double> edges = normalize_splits(profile_.edges(), cj, lim);
            for (std::size_t e = 0; e < edges.size(); ++e) {
                const double x = edges[e];
                const double bq = x * x + g2;
                const double z = -m * std::pow(bq, 0.5 * alpha) / (eta_ * s);
                std::fill(phi.begin(), phi.end(), 0.0);
                phi[0] = x * x;
                for (int k = 1; k <= m; ++k) {
                    const double bc = binomial_coeff(m, k) * ((k % 2) ? -1.0 : 1.0);
                    const Hyp2F1Args args{static_cast<double>(k), bsym, csym, z};
                    phi[0] += bc * bq * gauss_2f1(args);
                    // i-th s-derivative of bq * 2F1(..., z(s)) with z = K/s:
                    // (-1)^i s^-i sum_p (i!/p!) C(i-1,p-1) z^p d^p(2F1)/dz^p.
                    double spow = 1.0;
                    for (int i = 1; i <= imax; ++i) {
                        spow *= s;
                        double sum = 0.0;
                        double zp = 1.0;
                        for (int p = 1; p <= i; ++p) {
                            zp *= z;
                            sum += factorial(i) / factorial(p) * binomial_coeff(i - 1, p - 1) *
                                   zp * gauss_2f1_param_deriv(args, p);
                        }
                        phi[static_cast<std::size_t>(i)] +=
                            bc * bq * ((i % 2) ? -1.0 : 1.0) / spow * sum;
                    }
                }
                if (e > 0) {
                    const double pj = profile_.p(j, 0.5 * (edges[e - 1] + x));
                    for (std::size_t i = 0; i < L.size(); ++i)
                        acc[i] += pj * (phi[i] - phi_prev[i]);
                }
                std::swap(phi, phi_prev);
            }
        }
        const double lo = std::max(cj, u_);
        if (rmax > lo) acc[0] += 2.0 * profile_.radial_mass(j, lo, rmax);
    }
    for (std::size_t i = 0; i < L.size(); ++i) L[i] = acc[i] * norm;
    return L;
}

std::vector<double> AnalyticModel::laplace_ppp_all(int nmax, double s, ChannelType j,
                                                   double c_j) const {
    std::vector<double> L(static_cast<std::size_t>(nmax) + 1, 0.0);
    if (c_j >= u_) {
        L[0] = 1.0;
        return L;
    }
    const double twopil = 2.0 * kPi * dep_.density_per_m2;
    const double alpha = alpha_of(radio_, j);
    const int m = nakagami_m_of(radio_, j);
    const std::vector<double> splits = normalize_splits(profile_.edges(), std::max(0.0, c_j), u_);
    const QuadratureSpec qs{1.0e-13, 1.0e-9, 200};
    const double gamma = dep_.height_m;

    std::vector<double> F(static_cast<std::size_t>(nmax) + 1, 0.0);
    F[0] = -twopil * integrate_split(
                         [&](double r) {
                             const double c = eta_ * pathloss(r, gamma, alpha) / m;
                             return -std::expm1(-m * std::log1p(c * s)) * profile_.p(j, r) * r;
                         },
                         splits, qs);
    for (int p = 1; p <= nmax; ++p) {
        F[static_cast<std::size_t>(p)] =
            twopil * integrate_split(
                         [&](double r) { return g_kernel_deriv(p, r, s, j) * profile_.p(j, r) * r; },
                         splits, qs);
    }
    L[0] = std::exp(F[0]);
    for (int n = 1; n <= nmax; ++n) {
        double acc = 0.0;
        for (int k = 0; k <= n - 1; ++k)
            acc += binomial_coeff(n - 1, k) * F[static_cast<std::size_t>(n - k)] *
                   L[static_cast<std::size_t>(k)];
        L[static_cast<std::size_t>(n)] = acc;
    }
    return L;
}

std::vector<double> AnalyticModel::total_deriv_all(int kmax, double s, ServingClass v,
                                                   double r_star) const {
    const ChannelType t = channel_of(v);
    const InterferenceBounds b = interference_bounds(t, r_star);
    std::vector<double> L0(static_cast<std::size_t>(kmax) + 1, 0.0);
    if (is_hotspot_class(v) || dep_.strategy == Strategy::UniformPPP)
        L0[0] = 1.0;
    else
        L0 = laplace_i0_all(kmax, s, t, b);
    const auto Ll = laplace_ppp_all(kmax, s, ChannelType::Los, b.c_los);
    const auto Ln = laplace_ppp_all(kmax, s, ChannelType::Nlos, b.c_nlos);
    const double sig2 = radio_.noise_w;
    const double noise0 = std::exp(-s * sig2);
    std::vector<double> T(static_cast<std::size_t>(kmax) + 1, 0.0);
    for (int k = 0; k <= kmax; ++k) {
        double acc = 0.0;
        for (int i0 = 0; i0 <= k; ++i0)
            for (int il = 0; il <= k - i0; ++il)
                for (int in = 0; in <= k - i0 - il; ++in) {
                    const int is = k - i0 - il - in;
                    const double coeff = factorial(k) / (factorial(i0) * factorial(il) *
                                                         factorial(in) * factorial(is));
                    acc += coeff * L0[static_cast<std::size_t>(i0)] *
                           Ll[static_cast<std::size_t>(il)] * Ln[static_cast<std::size_t>(in)] *
                           std::pow(-sig2, is) * noise0;
                }
        T[static_cast<std::size_t>(k)] = acc;
    }
    return T;
}

double AnalyticModel::laplace_i0(double s, ChannelType t_star, double r_star) const {
    return laplace_i0_all(0, s, t_star, interference_bounds(t_star, r_star))[0];
}

double AnalyticModel::laplace_i0_deriv(int i, double s, ChannelType t_star, double r_star) const {
    if (i < 0) throw std::invalid_argument("derivative order must be nonnegative");
    return laplace_i0_all(i, s, t_star,
                          interference_bounds(t_star, r_star))[static_cast<std::size_t>(i)];
}

double AnalyticModel::laplace_ppp(double s, ChannelType j, const InterferenceBounds& b) const {
    return laplace_ppp_all(0, s, j, b.of(j))[0];
}

double AnalyticModel::laplace_ppp_deriv(int n, double s, ChannelType j,
                                        const InterferenceBounds& b) const {
    if (n < 0) throw std::invalid_argument("derivative order must be nonnegative");
    return laplace_ppp_all(n, s, j, b.of(j))[static_cast<std::size_t>(n)];
}

double AnalyticModel::laplace_total_deriv(int k, double s, ServingClass v, double r_star) const {
    if (k < 0) throw std::invalid_argument("derivative order must be nonnegative");
    return total_deriv_all(k, s, v, r_star)[static_cast<std::size_t>(k)];
}

double AnalyticModel::association_weight(ServingClass v, double r_star) const {
    const ChannelType t = channel_of(v);
    if (is_hotspot_class(v))
        return assoc_prob_hotspot(t, r_star) * pdf_hotspot_joint(r_star, t);
    return assoc_prob_nearest(t, r_star) * pdf_nearest(r_star, t);
}

double AnalyticModel::class_integrand(ServingClass v, double r_star, double threshold) const {
    const double w = association_weight(v, r_star);
    if (w <= 0.0) return 0.0;
    const ChannelType t = channel_of(v);
    const int m = nakagami_m_of(radio_, t);
    const double s_r =
        m * threshold / (eta_ * pathloss(r_star, dep_.height_m, alpha_of(radio_, t)));
    const auto T = total_deriv_all(m - 1, s_r, v, r_star);
    double inner = 0.0;
    double sk = 1.0; // s_r^k / k!
    for (int k = 0; k <= m - 1; ++k) {
        if (k > 0) sk *= s_r / k;
        inner += ((k % 2) ? -1.0 : 1.0) * sk * T[static_cast<std::size_t>(k)];
    }
    return w * inner;
}

std::vector<double> AnalyticModel::outer_splits(ChannelType t_star, double upper) const {
    std::vector<double> pts(profile_.edges());
    pts.push_back(dep_.hotspot_radius_m);
    const double g2 = dep_.height_m * dep_.height_m;
    const double al = radio_.alpha_los;
    const double an = radio_.alpha_nlos;
    // The exclusion radius of the opposite channel is (r^2+g^2)^e - g^2 under
    // a square root; invert it so the outer quadrature splits wherever that
    // radius crosses a LOS plateau edge, the cone radius, or the hotspot rim.
    auto add_inverse = [&](double x, double expo) {
        const double t = std::pow(x * x + g2, 1.0 / expo) - g2;
        if (t > 0.0 && t < upper * upper) pts.push_back(std::sqrt(t));
    };
    const double expo = (t_star == ChannelType::Los) ? al / an : an / al;
    for (double x : profile_.edges()) add_inverse(x, expo);
    add_inverse(dep_.hotspot_radius_m, expo);
    if (t_star == ChannelType::Los)
        add_inverse(0.0, expo); // release point of the max(0, .) clamp
    else
        add_inverse(u_, expo); // engagement point of the min(u, .) clamp
    return normalize_splits(pts, 0.0, upper);
}

double AnalyticModel::integrate_class(ServingClass v, double threshold) const {
    const double upper = is_hotspot_class(v) ? std::min(u_, dep_.hotspot_radius_m) : u_;
    if (upper <= 0.0) return 0.0;
    const auto splits = outer_splits(channel_of(v), upper);
    return integrate_split([&](double r) { return class_integrand(v, r, threshold); }, splits,
                           quad_);
}

double AnalyticModel::class_mass(ServingClass v) const {
    const double upper = is_hotspot_class(v) ? std::min(u_, dep_.hotspot_radius_m) : u_;
    if (upper <= 0.0) return 0.0;
    const auto splits = outer_splits(channel_of(v), upper);
    return integrate_split([&](double r) { return association_weight(v, r); }, splits, quad_);
}

double AnalyticModel::coverage_probability(double threshold_linear) const {
    if (!(threshold_linear > 0.0) || !std::isfinite(threshold_linear))
        throw std::invalid_argument("SINR threshold must be positive");
    if (dep_.strategy != Strategy::HotspotCenter && dep_.strategy != Strategy::UniformPPP)
        throw std::invalid_argument(
            "analytic coverage is defined for hotspot and ppp placements only");
    double total = 0.0;
    if (dep_.strategy == Strategy::HotspotCenter) {
        total += integrate_class(ServingClass::HotspotLos, threshold_linear);
        total += integrate_class(ServingClass::HotspotNlos, threshold_linear);
    }
    total += integrate_class(ServingClass::NearestLos, threshold_linear);
    total += integrate_class(ServingClass::NearestNlos, threshold_linear);
    return total;
}

double AnalyticModel::coverage_probability() const {
    return coverage_probability(radio_.threshold_linear);
}

AnalyticModel::ClassMasses AnalyticModel::class_masses() const {
    if (dep_.strategy != Strategy::HotspotCenter && dep_.strategy != Strategy::UniformPPP)
        throw std::invalid_argument(
            "analytic class masses are defined for hotspot and ppp placements only");
    ClassMasses cm;
    const double lam = dep_.density_per_m2;
    const double ppp_void = std::exp(-kPi * lam * u_ * u_);
    if (dep_.strategy == Strategy::HotspotCenter) {
        cm.hotspot_los = class_mass(ServingClass::HotspotLos);
        cm.hotspot_nlos = class_mass(ServingClass::HotspotNlos);
        const double rmax = dep_.hotspot_radius_m;
        const double frac = std::min(u_, rmax) / rmax;
        cm.void_mass = (1.0 - frac * frac) * ppp_void;
    } else {
        cm.void_mass = ppp_void;
    }
    cm.nearest_los = class_mass(ServingClass::NearestLos);
    cm.nearest_nlos = class_mass(ServingClass::NearestNlos);
    return cm;
}

double AnalyticModel::spectral_efficiency() const {
    constexpr double kCut = 1.0e-4;
    struct Node {
        double theta, t, p;
    };
    auto eval = [&](double th) { return coverage_probability(th); };

    std::vector<Node> nodes;
    const int n0 = 64;
    const double lo = 1.0e-3;
    const double hi = 1.0e6;
    bool beyond_cut = false;
    for (int i = 0; i < n0; ++i) {
        const double th = lo * std::pow(hi / lo, static_cast<double>(i) / (n0 - 1));
        const double p = beyond_cut ? 0.0 : eval(th);
        if (p < kCut) beyond_cut = true;
        nodes.push_back({th, std::log2(1.0 + th), std::max(p, 0.0)});
    }

    auto trapz = [](const std::vector<Node>& ns) {
        double se = ns.front().t * ns.front().p;
        for (std::size_t i = 0; i + 1 < ns.size(); ++i)
            se += 0.5 * (ns[i].p + ns[i + 1].p) * (ns[i + 1].t - ns[i].t);
        return se;
    };

    double prev = trapz(nodes);
    for (int iter = 0; iter < 5; ++iter) {
        std::vector<Node> next;
        next.reserve(nodes.size() * 2);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            next.push_back(nodes[i]);
            if (i + 1 < nodes.size() && std::max(nodes[i].p, nodes[i + 1].p) >= kCut) {
                const double th = std::sqrt(nodes[i].theta * nodes[i + 1].theta);
                next.push_back({th, std::log2(1.0 + th), std::max(eval(th), 0.0)});
            }
        }
        nodes.swap(next);
        const double cur = trapz(nodes);
        const double diff = std::abs(cur - prev);
        prev = cur;
        if (diff < 0.01) return cur;
    }
    throw NumericFailure("spectral-efficiency grid refinement did not converge");
}

} // namespace uavcov
