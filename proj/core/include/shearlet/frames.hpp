#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "shearlet/common.hpp"
#include "shearlet/generators.hpp"

namespace shearlet::frames {

// Sampling of the pyramid {|xi1| >= u, |xi2/xi1| <= v, |xi3/xi1| <= w} used for
// frame-bound estimates. Both signs of xi1 are sampled; the first radius and the
// outermost slopes sit just inside the thresholds.
struct FrequencyGrid {
    std::vector<double> radii{1.001, 2, 4, 8, 16, 32, 64, 128, 256};  // |xi1| in units of u
    int slopes = 5;                // per transverse axis, over [-0.999 v, 0.999 v]
    bool both_signs = true;
};

struct FrameConfig {
    double gamma = 1.0;  // scale ceiling
    double xi = 2.0;     // shear ceiling, s in [-xi, xi]^2
    double u = 1.0, v = 1.0, w = 1.0;
    double rtol = 1e-6;         // self-agreement of the scale integral under panel doubling
    int max_doublings = 12;
    double tail_rel = 1e-8;     // frequency tails cut where a factor falls below this share of its peak (energy share for integrals)
    double positivity_floor = 1e-12;  // A / B below this triggers a frame-failure warning
    FrequencyGrid grid;

    void validate() const;  // throws ConfigError
    bool in_pyramid(const Vec3& f) const;
};

// C_psi = int_{xi1 > 0} int |psi^(xi)|^2 / xi1^2 dxi (2D). Throws NumericalError
// (admissibility failure) when psi1 has no vanishing moment.
double admissibility_2d(const generators::Generator& g, const FrameConfig& cfg = {});
// int_{xi1 > 0} int int |psi^|^2 / xi1^3; needs two vanishing moments.
double admissibility_3d(const generators::Generator& g, const FrameConfig& cfg = {});
// Same constant through the group parametrization xi -> M_{a,s}^T xi with weight
// a^-2 over a > 0, s in R^2, for a reference frequency with xi1 != 0.
double admissibility_3d_group(const generators::Generator& g, const Vec3& reference = Vec3(1.0, 0.3, -0.2),
                              const FrameConfig& cfg = {});

// Cached spectral data of one generator: the wavelet factor and the cumulative
// energy of |phi^|^2. Read-only after construction, safe to share across threads.
class Spectrum {
public:
    Spectrum(const generators::Generator& g, const FrameConfig& cfg);

    double wavelet_power(double xi) const;  // |psi1^(xi)|^2
    double bump_power(double eta) const;    // |phi^(eta)|^2
    double bump_energy() const { return total_; }  // int over R of |phi^|^2
    // int_{lo}^{hi} |phi^|^2 and its complement in R
    double bump_mass(double lo, double hi) const;
    double bump_outside(double lo, double hi) const;
    const generators::Generator& generator() const { return gen_; }

private:
    double upper(double x) const;  // int_x^inf |phi^|^2 for x >= 0
    generators::Generator gen_;
    double step_ = 0, cutoff_ = 0, total_ = 0;
    std::vector<double> tail_;     // tail_[k] = int_{k step}^inf
    std::vector<double> density_;  // |phi^(k step)|^2
};

// Delta(xi) = chi_P(xi) int_0^gamma int_{|s| <= xi} |psi^(a xi1, sqrt a (xi2 + s1 xi1), sqrt a (xi3 + s2 xi1))|^2 a^-2 ds da
double delta_multiplier(const Spectrum& sp, const Vec3& f, const FrameConfig& cfg);
double delta_multiplier(const generators::Generator& g, const Vec3& f, const FrameConfig& cfg = {});

struct MonteCarloEstimate {
    double value;
    double std_error;
    std::int64_t samples;
};
// Independent estimate of Delta by sampling log a and s uniformly.
MonteCarloEstimate delta_monte_carlo(const generators::Generator& g, const Vec3& f, const FrameConfig& cfg,
                                     std::int64_t samples, std::uint64_t seed);

struct FrameBounds {
    double lower;  // A: min of Delta over the grid
    double upper;  // B
    Vec3 argmin, argmax;
    int points;
    std::vector<std::string> warnings;
};
FrameBounds frame_bounds(const Spectrum& sp, const FrameConfig& cfg);

// C_psi chi_P(xi) - Delta(xi)
double window_spectrum(const Spectrum& sp, double c_psi, const Vec3& f, const FrameConfig& cfg);
// The same quantity integrated directly over the complement of the (a, s) box,
// free of cancellation; used for decay fits far out.
double window_complement(const Spectrum& sp, const Vec3& f, const FrameConfig& cfg);

struct RaySample {
    double t;
    Vec3 frequency;
    double delta;
    double window;      // C chi_P - Delta
    double complement;  // direct complement integral
};
struct RayDecay {
    std::vector<RaySample> samples;
    double slope;  // log-log slope of the complement over the samples
};
// Samples t * direction for t in ts and fits the decay of the window spectrum.
RayDecay window_decay(const Spectrum& sp, double c_psi, const Vec3& direction, const std::vector<double>& ts,
                      const FrameConfig& cfg);

struct FrameReport {
    double c_direct;
    double c_group;
    double relative_gap;
    FrameBounds bounds;
    std::vector<std::string> warnings;
};
FrameReport frame_report(const generators::Generator& g, const FrameConfig& cfg = {});

}  // namespace shearlet::frames
