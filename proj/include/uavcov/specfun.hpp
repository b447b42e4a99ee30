#pragma once

#include "uavcov/params.hpp"

namespace uavcov {

struct Hyp2F1Args {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double z = 0.0;
};

// Gauss hypergeometric 2F1(a,b;c;z) for z <= 0.
//
// Three evaluation regimes:
//   z in [-0.7, 0]   direct power series;
//   z in (-4, -0.7)  Pfaff transformation (1-z)^{-a} 2F1(a, c-b; c; z/(z-1));
//   z <= -4          inverse-argument linear transformation (series in 1/z).
// The Pfaff series argument z/(z-1) tends to 1 as z -> -infinity, so for very
// negative z it needs O(|z|) terms; the 1/z form keeps the series argument in
// [-0.25, 0) and converges in a few dozen terms. The 1/z form requires a-b
// not an integer; when a-b is within 1e-3 of an integer the Pfaff route is
// used instead regardless of magnitude.
//
// Throws std::invalid_argument for z > 0 or c a nonpositive integer, and
// NumericFailure if the series fails to converge within 10000 terms.
double gauss_2f1(const Hyp2F1Args& args);

// p-th derivative with respect to z:
//   d^p/dz^p 2F1(a,b;c;z) = [(a)_p (b)_p / (c)_p] 2F1(a+p, b+p; c+p; z).
double gauss_2f1_param_deriv(const Hyp2F1Args& args, int p);

// Rising factorial x(x+1)...(x+n-1); 1 for n=0.
double pochhammer(double x, int n);

// Binomial coefficient n choose k as a double.
double binomial_coeff(int n, int k);

// Regularized upper incomplete gamma for integer shape:
//   Gamma(m, x)/Gamma(m) = exp(-x) sum_{k=0}^{m-1} x^k / k!.
double upper_gamma_ratio(int m, double x);

} // namespace uavcov
