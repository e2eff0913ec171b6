#include <doctest.h>

#include <cmath>
#include <random>

#include "shearlet/frames.hpp"
#include "shearlet/io.hpp"

using namespace shearlet;

namespace {
const generators::Generator g3 = generators::default_3d();
}  // namespace

TEST_CASE("frame configuration") {
    frames::FrameConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.in_pyramid({2, 1, -1}));
    CHECK_FALSE(cfg.in_pyramid({2, 2.5, 0}));
    CHECK_FALSE(cfg.in_pyramid({0.5, 0, 0}));
    cfg.gamma = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("admissibility constants") {
    const double c2 = frames::admissibility_2d(generators::detector_2d());
    CHECK(std::isfinite(c2));
    CHECK(c2 > 0);

    const double direct = frames::admissibility_3d(g3);
    const double group = frames::admissibility_3d_group(g3, {1, 0.3, -0.2});
    CHECK(group == doctest::Approx(direct).epsilon(1e-4));
    CHECK(frames::admissibility_3d_group(g3, {-2, 0.5, 1.0}) == doctest::Approx(direct).epsilon(1e-4));

    // a wavelet with one vanishing moment is not admissible in 3D
    generators::Generator bad = g3;
    bad.wavelet = generators::Wavelet1D(generators::theta_derivative_profile(), g3.wavelet.width());
    CHECK_THROWS_AS(frames::admissibility_3d(bad), NumericalError);
    CHECK_THROWS_AS(frames::admissibility_2d(g3), ConfigError);
}

TEST_CASE("spectrum cache") {
    const frames::FrameConfig cfg;
    const frames::Spectrum sp(g3, cfg);
    CHECK(sp.bump_energy() == doctest::Approx(g3.bump.l2_norm_squared()).epsilon(1e-9));
    CHECK(sp.bump_mass(-1e9, 1e9) == doctest::Approx(sp.bump_energy()).epsilon(1e-9));
    CHECK(sp.bump_mass(0.3, 2.0) + sp.bump_outside(0.3, 2.0) == doctest::Approx(sp.bump_energy()));
    CHECK(sp.wavelet_power(0.0) == 0.0);
    CHECK(sp.wavelet_power(5.0) == doctest::Approx(std::norm(generators::fourier_factor(g3.wavelet, 5.0))));
}

TEST_CASE("frame multiplier properties") {
    frames::FrameConfig cfg;
    const frames::Spectrum sp(g3, cfg);
    CHECK(frames::delta_multiplier(sp, {0.5, 0, 0}, cfg) == 0.0);
    CHECK(frames::delta_multiplier(sp, {4, 5, 0}, cfg) == 0.0);

    // monotone in the scale and shear ceilings
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> r1(1.0, 60.0), r2(-1.0, 1.0);
    frames::FrameConfig wider = cfg;
    wider.gamma = 2.0;
    wider.xi = 3.0;
    const frames::Spectrum sp_wide(g3, wider);
    for (int i = 0; i < 20; ++i) {
        const double x = r1(rng);
        const Vec3 f(x, r2(rng) * x, r2(rng) * x);
        const double d = frames::delta_multiplier(sp, f, cfg);
        CHECK(d >= 0);
        CHECK(frames::delta_multiplier(sp_wide, f, wider) >= d * (1 - 1e-6));
    }

    // the window spectrum equals the direct complement integral
    const double c = frames::admissibility_3d(g3, cfg);
    const Vec3 f(16, 3, -2);
    CHECK(frames::window_spectrum(sp, c, f, cfg) ==
          doctest::Approx(frames::window_complement(sp, f, cfg)).epsilon(1e-4));
}

TEST_CASE("Monte-Carlo cross-check and reproducibility") {
    const frames::FrameConfig cfg;
    const Vec3 f(8, 1, 1);
    const double d = frames::delta_multiplier(g3, f, cfg);
    const auto mc = frames::delta_monte_carlo(g3, f, cfg, 200000, 5);
    CHECK(std::abs(mc.value - d) < 4 * mc.std_error + 0.01 * d);
    const auto again = frames::delta_monte_carlo(g3, f, cfg, 200000, 5);
    CHECK(again.value == mc.value);
}

TEST_CASE("frame bounds and window decay") {
    const frames::FrameConfig cfg;
    const auto rep = frames::frame_report(g3, cfg);
    CHECK(rep.relative_gap < 0.02);
    CHECK(rep.bounds.lower > 0);
    CHECK(rep.bounds.upper <= rep.c_direct * (1 + 1e-6));
    CHECK(rep.bounds.points == 450);
    CHECK(rep.warnings.empty());

    const frames::Spectrum sp(g3, cfg);
    const auto decay = frames::window_decay(sp, rep.c_direct, {1, 0.2, 0.2}, {16, 64, 256}, cfg);
    CHECK(decay.samples.size() == 3);
    CHECK(decay.slope < 0);
}
