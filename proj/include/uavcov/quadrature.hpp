#pragma once

#include "uavcov/params.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace uavcov {

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1,1] (positive half).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkEstimate {
    double value;
    double error;
};

template <class F>
GkEstimate gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double fv[15];
    fv[14] = fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[(j - 1) / 2] * (f1 + f2);
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));
    resasc *= std::abs(h);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {resk * h, err};
}

} // namespace detail

// Adaptive quadrature of f over [a,b]: bisect the segment with the largest
// local error until the summed error satisfies the tolerances. Throws
// NumericFailure when the subdivision budget is exhausted.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    if (a == b) return 0.0;
    struct Segment {
        double a, b, value, error;
        bool operator<(const Segment& o) const { return error < o.error; }
    };
    auto first = detail::gk15(f, a, b);
    std::vector<Segment> heap{{a, b, first.value, first.error}};
    double total = first.value;
    double total_err = first.error;
    for (int n = 0; n < spec.max_subdivisions; ++n) {
        if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;
        std::pop_heap(heap.begin(), heap.end());
        Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Segment at floating-point resolution: accept its estimate.
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end());
            break;
        }
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push_back({worst.a, mid, left.value, left.error});
        std::push_heap(heap.begin(), heap.end());
        heap.push_back({mid, worst.b, right.value, right.error});
        std::push_heap(heap.begin(), heap.end());
    }
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;
    throw NumericFailure("adaptive quadrature failed to converge");
}

// Integrate over [pts.front(), pts.back()] split at the interior points,
// which should include every kink of the integrand.
template <class F>
double integrate_split(F&& f, const std::vector<double>& pts, const QuadratureSpec& spec = {}) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] > pts[i]) sum += integrate(f, pts[i], pts[i + 1], spec);
    }
    return sum;
}

// Sort, deduplicate (with absolute slack), and clip a split-point list to
// [lo, hi]; the result always starts at lo and ends at hi.
std::vector<double> normalize_splits(std::vector<double> pts, double lo, double hi);

} // namespace uavcov
