#pragma once

// Shared quadrature kernel: exact integration of the wavelet factor along the
// generator's fine axis plus Gauss-Legendre panels across it.

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "shearlet/common.hpp"
#include "shearlet/generators.hpp"

namespace shearlet::detail {

inline constexpr std::array<double, 4> gl4_nodes{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                                 0.8611363115940526};
inline constexpr std::array<double, 4> gl4_weights{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                                   0.3478548451374538};

// int chi(origin + y1 dir) psi1(y1) dy1 over the wavelet support. Membership is
// sampled on `scan` points; each state change is located by bisection and the
// integral is assembled from the closed-form primitive of psi1.
template <class Point, class Inside>
double line_integral(const Inside& inside, const Point& origin, const Point& dir, const generators::Wavelet1D& w,
                     int scan, int iters = 40) {
    const double lo = w.lo(), hi = w.hi();
    const double step = (hi - lo) / (scan - 1);
    auto at = [&](double y) { return inside(Point(origin + y * dir)); };
    bool prev = at(lo);
    double acc = prev ? -w.primitive(lo) : 0.0;
    for (int k = 1; k < scan; ++k) {
        const double yk = k == scan - 1 ? hi : lo + k * step;
        const bool cur = at(yk);
        if (cur != prev) {
            double l = lo + (k - 1) * step, h = yk;
            for (int it = 0; it < iters; ++it) {
                const double m = 0.5 * (l + h);
                if (at(m) == prev) l = m;
                else h = m;
            }
            const double e = 0.5 * (l + h);
            acc += prev ? w.primitive(e) : -w.primitive(e);
            prev = cur;
        }
    }
    if (prev) acc += w.primitive(hi);
    return acc;
}

struct TransverseResult {
    double value;
    double previous;
    int panels;
    bool converged;
};

// int_{-r}^{r} weight(t) J(t) dt with panel doubling.
template <class Weight, class Line>
TransverseResult transverse1d(const Weight& weight, const Line& J, double r, const QuadratureConfig& q, double atol) {
    double prev = 0.0;
    bool have_prev = false;
    int n = q.min_panels;
    std::vector<double> vals;
    while (true) {
        const int m = 4 * n;
        vals.assign(m, 0.0);
        const double w = 2.0 * r / n;
        auto node = [&](int idx) { return -r + (idx / 4 + 0.5) * w + 0.5 * w * gl4_nodes[idx % 4]; };
        tbb::parallel_for(tbb::blocked_range<int>(0, m), [&](const tbb::blocked_range<int>& rg) {
            for (int i = rg.begin(); i != rg.end(); ++i) {
                const double t = node(i);
                const double wt = weight(t);
                vals[i] = wt == 0.0 ? 0.0 : wt * J(t);
            }
        });
        double sum = 0.0;
        for (int i = 0; i < m; ++i) sum += 0.5 * w * gl4_weights[i % 4] * vals[i];
        if (have_prev && std::abs(sum - prev) <= std::max(q.rtol * std::abs(sum), atol))
            return {sum, prev, n, true};
        if (2 * n > q.max_panels) return {sum, prev, n, false};
        prev = sum;
        have_prev = true;
        n *= 2;
    }
}

// int over [-r, r]^2 of weight(t1, t2) J(t1, t2) by adaptive panel refinement.
// Each square panel carries its 4x4 Gauss value and the value from its four
// children; their difference is the panel's error estimate. Rounds refine the
// panels that hold the largest share of the error until the total estimate is
// within tolerance. Kinks of J along arbitrary lines (edges, apex rays) then cost
// O(1/h) extra panels instead of a global refinement.
template <class Weight, class Line>
TransverseResult transverse2d(const Weight& weight, const Line& J, double r, const QuadratureConfig& q, double atol) {
    struct Panel {
        double x, y, w;
        std::array<double, 4> child{};  // 4x4 Gauss value of each quadrant
        double coarse = 0;
        double fine() const { return child[0] + child[1] + child[2] + child[3]; }
        double err() const { return std::abs(fine() - coarse); }
    };
    auto f = [&](double t1, double t2) {
        const double wt = weight(t1, t2);
        return wt == 0.0 ? 0.0 : wt * J(t1, t2);
    };
    auto gauss = [&](double x, double y, double w) {
        double acc = 0.0;
        for (int i = 0; i < 4; ++i) {
            double row = 0.0;
            const double t1 = x + 0.5 * w * (1.0 + gl4_nodes[i]);
            for (int j = 0; j < 4; ++j) row += gl4_weights[j] * f(t1, y + 0.5 * w * (1.0 + gl4_nodes[j]));
            acc += gl4_weights[i] * row;
        }
        return 0.25 * w * w * acc;
    };
    auto fill_children = [&](Panel& p) {
        const double h = 0.5 * p.w;
        for (int c = 0; c < 4; ++c) p.child[c] = gauss(p.x + (c % 2) * h, p.y + (c / 2) * h, h);
    };

    const int n0 = std::max(1, q.min_panels);
    const double w0 = 2.0 * r / n0;
    std::vector<Panel> panels;
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n0; ++j) panels.push_back({-r + i * w0, -r + j * w0, w0});
    tbb::parallel_for(std::size_t{0}, panels.size(), [&](std::size_t k) {
        panels[k].coarse = gauss(panels[k].x, panels[k].y, panels[k].w);
        fill_children(panels[k]);
    });

    // budget in panel evaluations, matching a uniform max_panels x max_panels grid
    const double budget = static_cast<double>(q.max_panels) * q.max_panels;
    double spent = 5.0 * panels.size();
    double prev = 0.0;
    for (const Panel& p : panels) prev += p.coarse;
    while (true) {
        double total = 0.0, err = 0.0;
        for (const Panel& p : panels) total += p.fine(), err += p.err();
        const double tol = std::max(q.rtol * std::abs(total), atol);
        const int equivalent = static_cast<int>(std::ceil(std::sqrt(spent)));
        if (err <= tol) return {total, prev, equivalent, true};
        if (spent >= budget) return {total, prev, equivalent, false};
        prev = total;

        std::vector<std::size_t> order(panels.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return panels[a].err() > panels[b].err(); });
        std::vector<std::size_t> split;
        double covered = 0.0;
        for (std::size_t k : order) {
            if (covered >= 0.5 * err || panels[k].err() == 0.0) break;
            split.push_back(k);
            covered += panels[k].err();
        }
        std::sort(split.begin(), split.end());
        std::vector<Panel> fresh(4 * split.size());
        for (std::size_t m = 0; m < split.size(); ++m) {
            const Panel& p = panels[split[m]];
            const double h = 0.5 * p.w;
            for (int c = 0; c < 4; ++c) fresh[4 * m + c] = {p.x + (c % 2) * h, p.y + (c / 2) * h, h, {}, p.child[c]};
        }
        tbb::parallel_for(std::size_t{0}, fresh.size(), [&](std::size_t k) { fill_children(fresh[k]); });
        spent += 4.0 * fresh.size();
        std::vector<Panel> next;
        next.reserve(panels.size() + 3 * split.size());
        std::size_t m = 0;
        for (std::size_t k = 0; k < panels.size(); ++k) {
            if (m < split.size() && split[m] == k) {
                for (int c = 0; c < 4; ++c) next.push_back(fresh[4 * m + c]);
                ++m;
            } else {
                next.push_back(panels[k]);
            }
        }
        panels = std::move(next);
    }
}

}  // namespace shearlet::detail
