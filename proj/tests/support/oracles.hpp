#pragma once

// Brute-force references, deliberately independent of the library's quadrature:
// plain midpoint sums of the generator on uniform grids.

#include <cmath>

#include "shearlet/generators.hpp"

namespace oracle {

// int over {y1 <= 0} of psi (2D), n x n midpoint cells on [lo, 0] x [-r, r].
inline double flat_wedge_2d(const shearlet::generators::Generator& g, int n = 2048) {
    const double lo = g.wavelet.lo(), r = g.bump.radius();
    const double h1 = (0.0 - lo) / n, h2 = 2 * r / n;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        const double w = g.wavelet(lo + (i + 0.5) * h1);
        double row = 0;
        for (int k = 0; k < n; ++k) row += g.bump(-r + (k + 0.5) * h2);
        sum += w * row;
    }
    return sum * h1 * h2;
}

// The same in 3D, n^3 cells.
inline double flat_wedge_3d(const shearlet::generators::Generator& g, int n = 256) {
    const double lo = g.wavelet.lo(), r = g.bump.radius();
    const double h1 = (0.0 - lo) / n, h2 = 2 * r / n;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        const double w = g.wavelet(lo + (i + 0.5) * h1);
        for (int k = 0; k < n; ++k) {
            const double pk = g.bump(-r + (k + 0.5) * h2);
            for (int m = 0; m < n; ++m) sum += w * pk * g.bump(-r + (m + 0.5) * h2);
        }
    }
    return sum * h1 * h2 * h2;
}

// Least-squares slope of log|c| against log a.
template <class A, class C>
double loglog_slope(const A& a, const C& c) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = std::log(a[i]), y = std::log(std::abs(c[i]));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
