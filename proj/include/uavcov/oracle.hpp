#pragma once

#include "uavcov/params.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace uavcov {
namespace oracle {

// Double-exponential (tanh-sinh) quadrature on (a, b); tolerates integrable
// endpoint singularities. Deliberately independent of the Gauss-Kronrod
// machinery used by the model, so the two can check each other.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

// Euler-integral evaluation of the Gauss hypergeometric function,
// Gamma(c) / (Gamma(b) Gamma(c-b)) * int_0^1 t^(b-1) (1-t)^(c-b-1) (1-zt)^(-a) dt,
// valid for c > b > 0 and z <= 0.
double hyp2f1_euler(double a, double b, double c, double z);

// Central finite differences, first and second order.
double fd1(const std::function<double(double)>& f, double x, double h);
double fd2(const std::function<double(double)>& f, double x, double h);

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

// Sample mean (with standard error) of exp(-s I) where I is the interference
// from a fresh Poisson field of intensity dep.density_per_m2 on the annulus
// (c_j, cone radius), thinned to channel type j and faded Nakagami-m. Checks
// the probability generating functional result by brute force.
MeanSe empirical_laplace(const UrbanEnvironment& env, const RadioConfig& radio,
                         const Deployment& dep, ChannelType j, double c_j, double s,
                         long n_realizations, std::uint64_t seed);

// Pearson chi-square statistic of observed counts against expected
// probabilities (which must sum to 1).
double chi_square_stat(const std::vector<long>& counts, const std::vector<double>& probs);

} // namespace oracle
} // namespace uavcov
