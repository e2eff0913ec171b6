#include "shearlet/frames.hpp"

#include <tbb/parallel_for.h>

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <random>

namespace shearlet::frames {

using boost::math::quadrature::gauss;
using generators::Generator;

void FrameConfig::validate() const {
    if (!(gamma > 0.0)) throw ConfigError("scale ceiling must be positive");
    if (!(xi > 0.0)) throw ConfigError("shear ceiling must be positive");
    for (double t : {u, v, w})
        if (!(t > 0.0 && t < xi)) throw ConfigError("pyramid thresholds must satisfy 0 < u, v, w < shear ceiling");
    if (!(rtol > 0.0 && rtol < 0.1)) throw ConfigError("rtol must lie in (0, 0.1)");
    if (!(tail_rel > 0.0 && tail_rel < 1e-2)) throw ConfigError("tail_rel must lie in (0, 0.01)");
    if (max_doublings < 1) throw ConfigError("max_doublings must be at least 1");
    if (grid.radii.empty() || grid.slopes < 1) throw ConfigError("frequency grid is empty");
    for (double r : grid.radii)
        if (!(r >= 1.0)) throw ConfigError("grid radii are in units of u and must be >= 1");
}

bool FrameConfig::in_pyramid(const Vec3& f) const {
    const double a = std::abs(f.x());
    return a >= u && std::abs(f.y()) <= v * a && std::abs(f.z()) <= w * a;
}

namespace {

double g16(const auto& f, double a, double b) { return gauss<double, 16>::integrate(f, a, b); }

// int_B^inf f with panels of width `period`; stops once the last panel's peak,
// extended over the covered range, is negligible against the running total.
template <class F>
double upper_integral(const F& f, double from, double period, double tail_rel) {
    double acc = 0.0;
    double x = from;
    for (int k = 0; k < 2000000; ++k) {
        const double hi = x + period;
        acc += g16(f, x, hi);
        double peak = 0.0;
        for (int i = 0; i <= 4; ++i) peak = std::max(peak, std::abs(f(x + 0.25 * i * period)));
        x = hi;
        if (k >= 8 && x * peak <= tail_rel * std::abs(acc)) return acc;
        if (acc == 0.0 && k >= 8 && peak == 0.0) return 0.0;
    }
    throw NumericalError("frequency tail did not decay");
}

// int_0^B f over dyadic panels [B 2^-j-1, B 2^-j]; the top panel is split into n
// pieces, narrower panels into proportionally fewer.
template <class F>
double dyadic_integral(const F& f, double B, int n, double floor_rel) {
    double acc = 0.0;
    int quiet = 0;
    for (int j = 0; j < 400; ++j) {
        const int m = std::max(1, j < 30 ? n >> j : 0);
        const double hi = B * std::ldexp(1.0, -j), lo = 0.5 * hi, w = (hi - lo) / m;
        double part = 0.0;
        for (int k = 0; k < m; ++k) part += g16(f, lo + k * w, lo + (k + 1) * w);
        acc += part;
        quiet = std::abs(part) <= floor_rel * std::abs(acc) ? quiet + 1 : 0;
        if (quiet >= 3) return acc;
    }
    throw NumericalError("scale integral does not decay near zero");
}

// Doubles the sub-panel count until two passes agree.
template <class F>
double dyadic_converged(const F& f, double B, const FrameConfig& cfg, int n0 = 1) {
    double prev = dyadic_integral(f, B, n0, 1e-3 * cfg.rtol);
    int n = n0;
    for (int d = 0; d < cfg.max_doublings; ++d) {
        n *= 2;
        const double cur = dyadic_integral(f, B, n, 1e-3 * cfg.rtol);
        if (std::abs(cur - prev) <= cfg.rtol * std::abs(cur)) return cur;
        prev = cur;
    }
    throw NonConvergenceError("scale integral did not reach self-agreement", prev, prev);
}

double support_length(const Generator& g) { return g.wavelet.hi() - g.wavelet.lo(); }

void require_dimension(const Generator& g, int d) {
    if (g.dimension != d) throw ConfigError("this frame quantity needs a " + std::to_string(d) + "D generator");
}

void require_moments(const Generator& g, int needed, const char* what) {
    if (g.wavelet.vanishing_moments() < needed)
        throw NumericalError(std::string("admissibility failure: ") + what + " diverges at xi1 = 0 (wavelet has " +
                             std::to_string(g.wavelet.vanishing_moments()) + " vanishing moments, needs " +
                             std::to_string(needed) + ")");
}

// int_0^inf |psi1^(x)|^2 x^-power dx: dyadic panels below the main band, uniform
// panels above it.
double radial_wavelet_integral(const Generator& g, double power, const FrameConfig& cfg) {
    const double L = support_length(g);
    auto f = [&](double x) { return std::norm(generators::fourier_factor(g.wavelet, x)) * std::pow(x, -power); };
    const double x0 = 1.0 / L;
    const double low = dyadic_converged(f, x0, cfg);
    const double high = upper_integral(f, x0, 0.5 / L, cfg.tail_rel);
    return low + high;
}

}  // namespace

// ---------------------------------------------------------------- spectrum cache

Spectrum::Spectrum(const Generator& g, const FrameConfig& cfg) : gen_(g) {
    cfg.validate();
    const double period = 0.5 / g.bump.radius();  // oscillation period of |phi^|^2
    step_ = period / 16.0;
    auto p = [&](double e) { return bump_power(e); };
    // the table ends once |phi^| stays below tail_rel times its peak for a full period
    std::vector<double> parts;
    double top = 0.0, recent = 0.0;
    for (int k = 0;; ++k) {
        const double lo = k * step_, hi = lo + step_;
        parts.push_back(g16(p, lo, hi));
        const double v = p(hi);
        top = std::max(top, v);
        recent = std::max(recent, v);
        if (k % 16 == 15) {
            if (k >= 128 && std::sqrt(recent) <= cfg.tail_rel * std::sqrt(top)) break;
            recent = 0.0;
        }
        if (k > 10000000) throw NumericalError("bump spectrum does not decay");
    }
    cutoff_ = step_ * static_cast<double>(parts.size());
    tail_.assign(parts.size() + 1, 0.0);
    for (std::size_t k = parts.size(); k-- > 0;) tail_[k] = tail_[k + 1] + parts[k];
    density_.resize(tail_.size());
    for (std::size_t k = 0; k < density_.size(); ++k) density_[k] = p(static_cast<double>(k) * step_);
    total_ = 2.0 * tail_[0];
}

double Spectrum::wavelet_power(double xi) const { return std::norm(generators::fourier_factor(gen_.wavelet, xi)); }
double Spectrum::bump_power(double eta) const { return std::norm(generators::fourier_factor(gen_.bump, eta)); }

// cubic Hermite interpolation of the tail, whose derivative is -|phi^|^2
double Spectrum::upper(double x) const {
    if (x >= cutoff_) return 0.0;
    const auto k = static_cast<std::size_t>(x / step_);
    const double t = x / step_ - static_cast<double>(k);
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    return h00 * tail_[k] - h10 * step_ * density_[k] + h01 * tail_[k + 1] - h11 * step_ * density_[k + 1];
}

double Spectrum::bump_mass(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    if (lo >= 0.0) return upper(lo) - upper(hi);
    if (hi <= 0.0) return upper(-hi) - upper(-lo);
    return total_ - upper(-lo) - upper(hi);
}

double Spectrum::bump_outside(double lo, double hi) const {
    if (hi <= lo) return total_;
    const double right = hi >= 0.0 ? upper(hi) : total_ - upper(-hi);
    const double left = lo <= 0.0 ? upper(-lo) : total_ - upper(lo);
    return left + right;
}

// ---------------------------------------------------------------- admissibility

double admissibility_2d(const Generator& g, const FrameConfig& cfg) {
    cfg.validate();
    require_dimension(g, 2);
    require_moments(g, 1, "int |psi^|^2 / xi1^2");
    const Spectrum sp(g, cfg);
    return radial_wavelet_integral(g, 2.0, cfg) * sp.bump_energy();
}

double admissibility_3d(const Generator& g, const FrameConfig& cfg) {
    cfg.validate();
    require_dimension(g, 3);
    require_moments(g, 2, "int |psi^|^2 / |xi1|^3");
    const Spectrum sp(g, cfg);
    return radial_wavelet_integral(g, 3.0, cfg) * sp.bump_energy() * sp.bump_energy();
}

double admissibility_3d_group(const Generator& g, const Vec3& ref, const FrameConfig& cfg) {
    cfg.validate();
    require_dimension(g, 3);
    require_moments(g, 2, "the group integral");
    if (ref.x() == 0.0) throw ConfigError("reference frequency needs xi1 != 0");
    const double r = g.bump.radius();
    const double x1 = std::abs(ref.x());
    const Spectrum sp(g, cfg);  // only for the eta cutoff scale
    const double eta_max = [&] {
        double e = 0.5 / r;
        while (sp.bump_mass(-e, e) < (1.0 - cfg.tail_rel) * sp.bump_energy()) e *= 1.25;
        return e;
    }();
    // int over s in R of |phi^(sqrt a (xi_k + s xi1))|^2, numerically in s
    auto shear_integral = [&](double a, double xk) {
        const double scale = std::sqrt(a) * x1;
        const double center = -xk / ref.x();
        const double half = eta_max / scale;
        const double period = 0.5 / (r * scale);
        const int n = std::max(4, static_cast<int>(std::ceil(2.0 * half / period)));
        const double w = 2.0 * half / n;
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            const double lo = center - half + k * w;
            acc += g16([&](double s) { return sp.bump_power(std::sqrt(a) * (xk + s * ref.x())); }, lo, lo + w);
        }
        return acc;
    };
    auto integrand = [&](double a) {
        const double pw = sp.wavelet_power(a * ref.x());
        if (pw == 0.0) return 0.0;
        return pw * shear_integral(a, ref.y()) * shear_integral(a, ref.z()) / (a * a);
    };
    // scale variable a, with the main band at a xi1 ~ 1 / L
    const double L = support_length(g);
    const double a0 = 1.0 / (L * x1);
    const double low = dyadic_converged(integrand, a0, cfg);
    const double high = upper_integral(integrand, a0, 0.5 / (L * x1), cfg.tail_rel);
    return low + high;
}

// ---------------------------------------------------------------- multiplier

namespace {
struct Masses {
    double m2, m3, o2, o3;
};
Masses masses(const Spectrum& sp, const Vec3& f, double b, const FrameConfig& cfg) {
    const double x1 = std::abs(f.x());
    const double ra = std::sqrt(b / x1);
    const double l2 = ra * (f.y() - cfg.xi * x1), h2 = ra * (f.y() + cfg.xi * x1);
    const double l3 = ra * (f.z() - cfg.xi * x1), h3 = ra * (f.z() + cfg.xi * x1);
    return {sp.bump_mass(l2, h2), sp.bump_mass(l3, h3), sp.bump_outside(l2, h2), sp.bump_outside(l3, h3)};
}
}  // namespace

double delta_multiplier(const Spectrum& sp, const Vec3& f, const FrameConfig& cfg) {
    if (!cfg.in_pyramid(f)) return 0.0;
    const double B = cfg.gamma * std::abs(f.x());
    auto integrand = [&](double b) {
        const double pw = sp.wavelet_power(b);
        if (pw == 0.0) return 0.0;
        const Masses m = masses(sp, f, b, cfg);
        return pw * m.m2 * m.m3 / (b * b * b);
    };
    const double L = support_length(sp.generator());
    const int n0 = std::max(1, static_cast<int>(std::ceil(B * L)));
    return std::max(0.0, dyadic_converged(integrand, B, cfg, n0));
}

double delta_multiplier(const Generator& g, const Vec3& f, const FrameConfig& cfg) {
    require_dimension(g, 3);
    return delta_multiplier(Spectrum(g, cfg), f, cfg);
}

MonteCarloEstimate delta_monte_carlo(const Generator& g, const Vec3& f, const FrameConfig& cfg, std::int64_t samples,
                                     std::uint64_t seed) {
    cfg.validate();
    require_dimension(g, 3);
    if (samples < 1000) throw ConfigError("Monte-Carlo estimate needs at least 1000 samples");
    if (!cfg.in_pyramid(f)) return {0.0, 0.0, samples};
    // log a uniform on [a_min, gamma]; below a_min the integrand is negligible
    const double L = support_length(g);
    const double a_min = 1e-6 / (L * std::abs(f.x()));
    const double la = std::log(a_min), lg = std::log(cfg.gamma);
    const double volume = (lg - la) * 4.0 * cfg.xi * cfg.xi;
    constexpr int chunks = 64;
    std::vector<double> sum(chunks, 0.0), sum2(chunks, 0.0);
    tbb::parallel_for(0, chunks, [&](int c) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(c)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const std::int64_t n = samples / chunks + (c < samples % chunks ? 1 : 0);
        for (std::int64_t i = 0; i < n; ++i) {
            const double a = std::exp(la + (lg - la) * unit(rng));
            const double s1 = cfg.xi * (2.0 * unit(rng) - 1.0), s2 = cfg.xi * (2.0 * unit(rng) - 1.0);
            const double ra = std::sqrt(a);
            const double v = std::norm(generators::fourier_factor(g.wavelet, a * f.x())) *
                             std::norm(generators::fourier_factor(g.bump, ra * (f.y() + s1 * f.x()))) *
                             std::norm(generators::fourier_factor(g.bump, ra * (f.z() + s2 * f.x()))) / a;
            sum[c] += v;
            sum2[c] += v * v;
        }
    });
    double s = 0.0, s2 = 0.0;
    for (int c = 0; c < chunks; ++c) s += sum[c], s2 += sum2[c];
    const double n = static_cast<double>(samples);
    const double mean = s / n;
    const double var = std::max(0.0, s2 / n - mean * mean);
    return {volume * mean, volume * std::sqrt(var / n), samples};
}

// ---------------------------------------------------------------- bounds and window

FrameBounds frame_bounds(const Spectrum& sp, const FrameConfig& cfg) {
    cfg.validate();
    std::vector<Vec3> pts;
    const int m = cfg.grid.slopes;
    auto slope = [&](int i, double lim) { return m == 1 ? 0.0 : 0.999 * lim * (-1.0 + 2.0 * i / (m - 1)); };
    for (int sign : {1, -1}) {
        if (sign < 0 && !cfg.grid.both_signs) continue;
        for (double r : cfg.grid.radii)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    const double x1 = sign * r * cfg.u;
                    pts.emplace_back(x1, x1 * slope(i, cfg.v), x1 * slope(j, cfg.w));
                }
    }
    std::vector<double> vals(pts.size());
    tbb::parallel_for(std::size_t{0}, pts.size(), [&](std::size_t k) { vals[k] = delta_multiplier(sp, pts[k], cfg); });
    FrameBounds fb{vals[0], vals[0], pts[0], pts[0], static_cast<int>(pts.size()), {}};
    for (std::size_t k = 1; k < pts.size(); ++k) {
        if (vals[k] < fb.lower) fb.lower = vals[k], fb.argmin = pts[k];
        if (vals[k] > fb.upper) fb.upper = vals[k], fb.argmax = pts[k];
    }
    if (!(fb.lower > cfg.positivity_floor * fb.upper))
        fb.warnings.push_back("lower bound estimate is below the positivity floor; the system may fail to be a frame");
    return fb;
}

double window_spectrum(const Spectrum& sp, double c_psi, const Vec3& f, const FrameConfig& cfg) {
    if (!cfg.in_pyramid(f)) return 0.0;
    return c_psi - delta_multiplier(sp, f, cfg);
}

double window_complement(const Spectrum& sp, const Vec3& f, const FrameConfig& cfg) {
    if (!cfg.in_pyramid(f)) return 0.0;
    const double B = cfg.gamma * std::abs(f.x());
    const double T = sp.bump_energy();
    auto inside = [&](double b) {
        const double pw = sp.wavelet_power(b);
        if (pw == 0.0) return 0.0;
        const Masses m = masses(sp, f, b, cfg);
        return pw * (T * m.o3 + m.o2 * m.m3) / (b * b * b);
    };
    auto beyond = [&](double b) { return sp.wavelet_power(b) * T * T / (b * b * b); };
    const double L = support_length(sp.generator());
    const int n0 = std::max(1, static_cast<int>(std::ceil(B * L)));
    return dyadic_converged(inside, B, cfg, n0) + upper_integral(beyond, B, 0.5 / L, cfg.tail_rel);
}

RayDecay window_decay(const Spectrum& sp, double c_psi, const Vec3& direction, const std::vector<double>& ts,
                      const FrameConfig& cfg) {
    RayDecay out;
    out.samples.resize(ts.size());
    tbb::parallel_for(std::size_t{0}, ts.size(), [&](std::size_t k) {
        const Vec3 f = ts[k] * direction;
        const double d = delta_multiplier(sp, f, cfg);
        out.samples[k] = {ts[k], f, d, cfg.in_pyramid(f) ? c_psi - d : 0.0, window_complement(sp, f, cfg)};
    });
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const RaySample& s : out.samples) {
        if (!(s.complement > 0.0)) continue;
        const double x = std::log(s.t), y = std::log(s.complement);
        n += 1, sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    out.slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : std::numeric_limits<double>::quiet_NaN();
    return out;
}

FrameReport frame_report(const Generator& g, const FrameConfig& cfg) {
    FrameReport rep;
    rep.c_direct = admissibility_3d(g, cfg);
    rep.c_group = admissibility_3d_group(g, Vec3(1.0, 0.3, -0.2), cfg);
    rep.relative_gap = std::abs(rep.c_direct - rep.c_group) / std::abs(rep.c_direct);
    const Spectrum sp(g, cfg);
    rep.bounds = frame_bounds(sp, cfg);
    if (rep.relative_gap > 0.02) rep.warnings.push_back("the two admissibility forms differ by more than 2%");
    for (const auto& w : rep.bounds.warnings) rep.warnings.push_back(w);
    return rep;
}

}  // namespace shearlet::frames
