#include "uavcov/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace uavcov {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kTermTol = 1.0e-16;

[[noreturn]] void fail_convergence(const Hyp2F1Args& a, const char* where) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "2F1 series did not converge (%s) at a=%.17g b=%.17g c=%.17g z=%.17g",
                  where, a.a, a.b, a.c, a.z);
    throw NumericFailure(buf);
}

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Power series sum_{n>=0} (a)_n (b)_n / (c)_n z^n / n! for |z| < 1.
double series_2f1(double a, double b, double c, double z, const Hyp2F1Args& orig,
                  const char* where) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= kTermTol * std::abs(sum)) return sum;
        if (!std::isfinite(sum)) fail_convergence(orig, where);
    }
    fail_convergence(orig, where);
}

struct SignedLog {
    double log_abs;
    int sign;
};

// log |Gamma(x)| and sign of Gamma(x) for non-integer or positive x.
SignedLog log_gamma_signed(double x) {
    if (x > 0.0) return {std::lgamma(x), 1};
    int sign = (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
    return {std::lgamma(x), sign};
}

// 2F1 via the connection formula in 1/z (valid for a-b not an integer):
//   2F1(a,b;c;z) = G(c)G(b-a)/(G(b)G(c-a)) (-z)^{-a} 2F1(a, a-c+1; a-b+1; 1/z)
//               + G(c)G(a-b)/(G(a)G(c-b)) (-z)^{-b} 2F1(b, b-c+1; b-a+1; 1/z)
double inverse_z_2f1(const Hyp2F1Args& args) {
    const double a = args.a, b = args.b, c = args.c, z = args.z;
    const double w = 1.0 / z;
    const double log_neg_z = std::log(-z);
    const SignedLog gc = log_gamma_signed(c);

    double result = 0.0;
    // Two symmetric terms: (a,b) and (b,a) swapped.
    const double first[2] = {a, b};
    const double second[2] = {b, a};
    for (int i = 0; i < 2; ++i) {
        const double p = first[i], q = second[i];
        // Gamma(c-p) or Gamma(q) pole would zero this term's prefactor.
        if (is_nonpositive_integer(c - p) || is_nonpositive_integer(q)) continue;
        const SignedLog gqp = log_gamma_signed(q - p);
        const SignedLog gq = log_gamma_signed(q);
        const SignedLog gcp = log_gamma_signed(c - p);
        const double s = series_2f1(p, p - c + 1.0, p - q + 1.0, w, args, "1/z");
        const double log_mag =
            gc.log_abs + gqp.log_abs - gq.log_abs - gcp.log_abs - p * log_neg_z;
        const int sign = gc.sign * gqp.sign * gq.sign * gcp.sign;
        result += sign * std::exp(log_mag) * s;
    }
    return result;
}

} // namespace

double gauss_2f1(const Hyp2F1Args& args) {
    const double a = args.a, b = args.b, c = args.c, z = args.z;
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(z)))
        throw std::invalid_argument("2F1 arguments must be finite");
    if (z > 0.0) throw std::invalid_argument("2F1 argument z must be nonpositive");
    if (is_nonpositive_integer(c))
        throw std::invalid_argument("2F1 parameter c must not be a nonpositive integer");
    if (z == 0.0 || a == 0.0 || b == 0.0) return 1.0;

    if (z >= -0.7) return series_2f1(a, b, c, z, args, "series");

    const double ab = a - b;
    const bool ab_near_integer = std::abs(ab - std::round(ab)) < 1.0e-3;
    if (z > -4.0 || ab_near_integer) {
        // Pfaff: series argument z/(z-1) lies in (0,1).
        const double w = z / (z - 1.0);
        return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, w, args, "pfaff");
    }
    return inverse_z_2f1(args);
}

double gauss_2f1_param_deriv(const Hyp2F1Args& args, int p) {
    if (p < 0) throw std::invalid_argument("derivative order must be nonnegative");
    if (p == 0) return gauss_2f1(args);
    const double pref = pochhammer(args.a, p) * pochhammer(args.b, p) / pochhammer(args.c, p);
    if (pref == 0.0) return 0.0;
    return pref * gauss_2f1({args.a + p, args.b + p, args.c + p, args.z});
}

double pochhammer(double x, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer order must be nonnegative");
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x + i;
    return r;
}

double binomial_coeff(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double upper_gamma_ratio(int m, double x) {
    if (m < 1) throw std::invalid_argument("gamma shape must be a positive integer");
    if (x < 0.0) throw std::invalid_argument("gamma argument must be nonnegative");
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < m; ++k) {
        term *= x / k;
        sum += term;
    }
    double r = std::exp(-x) * sum;
    return r > 1.0 ? 1.0 : r;
}

} // namespace uavcov
