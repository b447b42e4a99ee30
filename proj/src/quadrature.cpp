#include "uavcov/quadrature.hpp"

namespace uavcov {

std::vector<double> normalize_splits(std::vector<double> pts, double lo, double hi) {
    std::vector<double> out{lo};
    std::sort(pts.begin(), pts.end());
    const double slack = 1.0e-9 * std::max(1.0, std::abs(hi - lo));
    for (double p : pts) {
        if (p <= lo + slack || p >= hi - slack) continue;
        if (p - out.back() > slack) out.push_back(p);
    }
    out.push_back(hi);
    return out;
}

} // namespace uavcov
