// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <path-to-shearscan> <scenes-dir> <scratch-dir>

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "shearlet/classify.hpp"
#include "shearlet/frames.hpp"
#include "shearlet/generators.hpp"
#include "shearlet/regions.hpp"
#include "shearlet/transform2d.hpp"
#include "shearlet/transform3d.hpp"

using namespace shearlet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Paths {
    std::string shearscan;
    fs::path scenes;
    fs::path scratch;
};

const generators::Generator g2 = generators::default_2d();
const generators::Generator g3 = generators::default_3d();

std::vector<double> ladder(int j0, int j1) { return transform2d::dyadic_scales(j0, j1); }

double fit_slope(const transform2d::DecayProfile& p) { return classify::fit_exponent(p, {}).slope; }

// 1. flat boundary, 2D
Outcome flat_identity_2d() {
    const auto start = std::chrono::steady_clock::now();
    const double G0 = oracle::flat_wedge_2d(g2, 2048);
    const regions::Region2D half(regions::HalfPlane{{1, 0}, 0});
    double worst = 0;
    for (double a : ladder(4, 9)) {
        const double c = transform2d::coeff2d(half, g2, {a, 0.0, {0, 0}});
        worst = std::max(worst, std::abs(c - std::pow(a, 0.75) * G0) / (std::pow(a, 0.75) * g2.l1_norm()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= 1e-5 && secs < 10,
            fmt::format("max |c - a^3/4 G(0)| / (a^3/4 |psi|_1) = {:.2e} (<= 1e-5), {:.2f} s (< 10 s)", worst, secs)};
}

// 2. regular point, tracked shear
Outcome regular_rate_2d() {
    const regions::Region2D disk(regions::Disk{});
    const auto prof = transform2d::decay_profile2d(disk, g2, {1, 0}, transform2d::ShearPolicy::TrackOddNull, 0.0,
                                                   ladder(5, 9));
    const auto fit = classify::fit_exponent(prof, {});
    return {fit.slope >= 0.60 && fit.slope <= 0.90 && fit.r2 >= 0.99,
            fmt::format("exponent {:.4f} in [0.60, 0.90], R^2 {:.6f} >= 0.99", fit.slope, fit.r2)};
}

// 3. corners of the first and second type
Outcome corner_rates_2d() {
    using Clock = std::chrono::steady_clock;
    const regions::Region2D square(regions::ConvexPolygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}});
    auto t0 = Clock::now();
    const double first = fit_slope(
        transform2d::decay_profile2d(square, g2, {1, 1}, transform2d::ShearPolicy::Fixed, 0.5, ladder(4, 9)));
    const double t_first = std::chrono::duration<double>(Clock::now() - t0).count();

    // graph corner x2 = x1 + x1^2 (left) / x1 - x1^2 (right): equal tangents, curvature jump
    const regions::Region2D kink(
        regions::GraphRegion{Polynomial({0.0, 1.0, 1.0}), Polynomial({0.0, 1.0, -1.0}), {-1, -1}, {1, 1}, 0});
    t0 = Clock::now();
    const double second = fit_slope(
        transform2d::decay_profile2d(kink, g2, {0, 0}, transform2d::ShearPolicy::Fixed, 0.0, ladder(4, 9)));
    const double t_second = std::chrono::duration<double>(Clock::now() - t0).count();

    const bool ok = first >= 1.10 && first <= 1.40 && second >= 1.50 && second <= 2.00 && t_first < 60 &&
                    t_second < 60;
    return {ok, fmt::format("first type {:.4f} in [1.10, 1.40] ({:.2f} s), second type {:.4f} in [1.50, 2.00] "
                            "({:.2f} s)",
                            first, t_first, second, t_second)};
}

// 4. two-sided bound uniform over radii
Outcome uniformity_2d() {
    double lo = INFINITY, hi = 0;
    for (double R : {0.75, 1.0, 1.5, 2.0}) {
        const regions::Region2D disk(regions::Disk{{0, 0}, R});
        for (double a : ladder(4, 9)) {
            const double c = std::abs(transform2d::coeff2d(disk, g2, {a, 0.0, {R, 0}})) / std::pow(a, 0.75);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
    }
    return {hi / lo <= 3, fmt::format("c2 / c1 = {:.4f} <= 3 (c1 {:.5f}, c2 {:.5f})", hi / lo, lo, hi)};
}

// 5. curvature recovery
Outcome curvature_2d() {
    const generators::WedgeTable table(g2);
    std::string detail;
    bool ok = true;
    for (double R : {1.0, 2.0}) {
        const regions::Region2D disk(regions::Disk{{0, 0}, R});
        const double k = classify::estimate_curvature2d(disk, g2, {R, 0}, 0.0, table).curvature;
        const double err = std::abs(k * R - 1);
        ok = ok && err <= 0.05;
        detail += fmt::format("R={}: {:.5f} (err {:.2f}%), ", R, k, 100 * err);
    }
    // off-axis point at angle 0.2; the aligned shear is -tan 0.2 in this orientation convention
    const regions::Region2D disk(regions::Disk{});
    const auto est =
        classify::estimate_curvature2d(disk, g2, {std::cos(0.2), std::sin(0.2)}, -std::tan(0.2), table);
    const double err = std::abs(est.curvature - 1);
    ok = ok && err <= 0.10;
    detail += fmt::format("off-axis: {:.5f} (err {:.2f}%, s* = {:.4f})", est.curvature, 100 * err, est.shear);
    return {ok, detail};
}

// 6. 3D rates
Outcome rates_3d() {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    const double G0 = oracle::flat_wedge_3d(g3, 256);
    const regions::Region3D half(regions::HalfSpace{{1, 0, 0}, 0});
    double worst = 0;
    for (double a : ladder(3, 7)) {
        const double c = transform3d::coeff3d(half, g3, {a, {0, 0}, {0, 0, 0}, 1});
        worst = std::max(worst, std::abs(c - a * G0) / (a * g3.l1_norm()));
    }
    const classify::ClassifierConfig cfg;
    auto slope3 = [&](const regions::Region3D& r, const Vec3& p, const Vec2& s) {
        return classify::fit_exponent(transform3d::decay_profile3d(r, g3, p, s, cfg.scales3d), {}).slope;
    };
    const regions::Region3D ball(regions::Ball{});
    const regions::Region3D cut(regions::CutBall{{0, 0, 0}, 1, {0, 0, 1}, 0});
    const regions::Region3D pyramid(regions::Pyramid{{0, 0, 0}, {{1, -1, -1}, {1, 1, -1}, {1, 1, 1}, {1, -1, 1}}});
    const double e_ball = slope3(ball, {1, 0, 0}, {0, 0});
    const double e_cut = slope3(cut, {1, 0, 0}, {0, 0.5});
    const double e_apex = slope3(pyramid, {0, 0, 0}, {0, 0});
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool ok = worst <= 1e-5 && e_ball >= 0.85 && e_ball <= 1.15 && e_cut >= 1.35 && e_apex >= 1.75 &&
                    e_apex <= 2.4 && secs < 900;
    return {ok, fmt::format("half-space {:.2e} (<= 1e-5), ball {:.4f} in [0.85, 1.15], cut ball {:.4f} >= 1.35, "
                            "apex {:.4f} in [1.75, 2.4], {:.1f} s (< 900 s)",
                            worst, e_ball, e_cut, e_apex, secs)};
}

// 7. needle curvature
Outcome needle_3d() {
    const generators::WedgeTable table(g3, 2.0, 81, generators::WedgeTable::Kind::Needle);
    const regions::Region3D ball(regions::Ball{});
    bool ok = true;
    std::string detail = "ball:";
    for (double beta : {0.0, pi / 4, pi / 2}) {
        const double k = classify::directional_curvature3d(ball, g3, {1, 0, 0}, {0, 0}, beta, table).curvature;
        ok = ok && std::abs(k - 1) <= 0.10;
        detail += fmt::format(" {:.4f}", k);
    }
    const regions::Region3D cyl(regions::Cylinder{{0, 0, 0}, {0, 0, 1}, 1});
    double kmin = INFINITY, kmax = -INFINITY;
    for (int k = 0; k < 8; ++k) {
        const double v =
            classify::directional_curvature3d(cyl, g3, {1, 0, 0}, {0, 0}, pi * k / 8, table).curvature;
        kmin = std::min(kmin, v);
        kmax = std::max(kmax, v);
    }
    ok = ok && std::abs(kmax - 1) <= 0.10 && kmin <= 0.15;
    detail += fmt::format(" (1 +- 10%); cylinder sweep max {:.4f} (1 +- 10%), min {:.4f} (<= 0.15)", kmax, kmin);
    return {ok, detail};
}

// 8. supports entirely inside or outside
Outcome interior_exactness() {
    const QuadratureConfig q2 = QuadratureConfig::defaults_2d(), q3 = QuadratureConfig::defaults_3d();
    const regions::Region2D disk(regions::Disk{});
    const regions::Region3D ball(regions::Ball{});
    double worst = 0;  // |c| / atol
    for (double a : ladder(4, 9)) {
        const double atol = q2.atol_rel * g2.l1_norm() * std::pow(a, 0.75);
        for (const Vec2& p : {Vec2(0.3, 0.1), Vec2(0, 0), Vec2(2, 0), Vec2(-0.5, 1.5)})
            for (double s : {-0.7, 0.0, 0.4})
                worst = std::max(worst, std::abs(transform2d::coeff2d(disk, g2, {a, s, p})) / atol);
    }
    for (double a : ladder(3, 7)) {
        const double atol = q3.atol_rel * g3.l1_norm() * a;
        for (const Vec3& p : {Vec3(0.3, 0.1, -0.2), Vec3(0, 0, 0), Vec3(2, 0, 0)})
            for (int d = 1; d <= 3; ++d)
                worst = std::max(worst, std::abs(transform3d::coeff3d(ball, g3, {a, {0.3, -0.2}, p, d})) / atol);
    }
    return {worst <= 1, fmt::format("max |coefficient| / atol = {:.2e} (<= 1)", worst)};
}

// 9. frame diagnostics
Outcome frame_diagnostics() {
    const frames::FrameConfig cfg;
    const double direct = frames::admissibility_3d(g3, cfg);
    const double group = frames::admissibility_3d_group(g3, {1, 0.3, -0.2}, cfg);
    const double gap = std::abs(direct - group) / direct;
    const frames::Spectrum sp(g3, cfg);
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> logr(std::log(0.1), std::log(300.0)), ratio(-2.0, 2.0), coin(0, 1);
    int bad_sign = 0, bad_outside = 0, bad_window = 0, inside = 0;
    double wmin = INFINITY, wmax = -INFINITY;
    for (int i = 0; i < 1000; ++i) {
        const double x1 = std::exp(logr(rng)) * (coin(rng) < 0.5 ? -1 : 1);
        const Vec3 f(x1, ratio(rng) * std::abs(x1), ratio(rng) * std::abs(x1));
        const double d = frames::delta_multiplier(sp, f, cfg);
        const double w = frames::window_spectrum(sp, direct, f, cfg);
        const bool in = cfg.in_pyramid(f);
        inside += in;
        bad_sign += d < 0;
        bad_outside += !in && d != 0;
        bad_window += w < -0.01 * direct || w > 1.01 * direct;
        wmin = std::min(wmin, w / direct);
        wmax = std::max(wmax, w / direct);
    }
    const bool ok = gap <= 0.02 && bad_sign == 0 && bad_outside == 0 && bad_window == 0;
    return {ok, fmt::format("C direct {:.6e} vs group {:.6e}, gap {:.2e} (<= 2%); 1000 samples ({} in pyramid): "
                            "Delta < 0 at {}, nonzero outside at {}, window/C in [{:.4f}, {:.4f}] ({} out of range)",
                            direct, group, gap, inside, bad_sign, bad_outside, wmin, wmax, bad_window)};
}

// 10. detector conditions
Outcome detector_certification() {
    const auto& w = g2.wavelet;
    double shift = NAN;
    try {
        shift = generators::find_detector_shift(w);
    } catch (const NumericalError& e) {
        return {false, fmt::format("find_detector_shift failed: {}", e.what())};
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pick(w.lo() - 0.5 * (w.hi() - w.lo()), w.hi() + 0.5 * (w.hi() - w.lo()));
    std::vector<double> ts(20);
    for (double& t : ts) t = pick(rng);
    // scale of each identity: largest right-hand side over the sampled shifts
    double scale2 = 0, scale3 = 0;
    for (double t : ts) {
        const auto S = generators::partial_moments(w, t);
        scale2 = std::max(scale2, std::abs(2 * S[1]));
        scale3 = std::max(scale3, std::abs(3 * S[2]));
    }
    const double h = 1e-4 * w.width();
    double err2 = 0, err3 = 0;
    for (double t : ts) {
        const auto S = generators::partial_moments(w, t);
        const auto Sp = generators::partial_moments(w, t + h), Sm = generators::partial_moments(w, t - h);
        err2 = std::max(err2, std::abs((Sp[2] - Sm[2]) / (2 * h) - 2 * S[1]) / scale2);
        err3 = std::max(err3, std::abs((Sp[3] - Sm[3]) / (2 * h) - 3 * S[2]) / scale3);
    }
    return {err2 <= 1e-5 && err3 <= 1e-5,
            fmt::format("shift {:.6e}; relative error of dS2/dt = 2 S1: {:.2e}, dS3/dt = 3 S2: {:.2e} (<= 1e-5)",
                        shift, err2, err3)};
}

std::string read_all(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// Returns an empty string when the two trees hold the same files with the same bytes.
std::string compare_trees(const fs::path& a, const fs::path& b) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(a))
        if (e.is_regular_file()) files.push_back(fs::relative(e.path(), a));
    std::size_t count_b = 0;
    for (const auto& e : fs::recursive_directory_iterator(b)) count_b += e.is_regular_file();
    if (files.empty()) return "no output files";
    if (files.size() != count_b) return "different file sets";
    for (const auto& f : files)
        if (!fs::exists(b / f) || read_all(a / f) != read_all(b / f)) return "differs: " + f.string();
    return {};
}

// 11. determinism of the command-line tool
Outcome determinism(const Paths& paths) {
    struct Run {
        std::string name, args;
    };
    const std::string sc = paths.scenes.string();
    const std::vector<Run> runs{
        {"classify2d", fmt::format("classify --scene {0}/demo2d.json --points {0}/demo2d_points.json", sc)},
        {"classify3d", fmt::format("classify --scene {0}/demo3d.json --points {0}/demo3d_points.json", sc)},
        {"curvature", fmt::format("curvature --scene {0}/demo3d.json --points 1,0,0 --region ball --betas 4", sc)},
        {"frame", "frame --mc-samples 20000 --seed 99"},
    };
    fs::remove_all(paths.scratch);
    std::string detail;
    bool ok = true;
    for (const auto& r : runs) {
        std::vector<fs::path> dirs;
        for (const char* tag : {"a", "b", "w1"}) {
            const fs::path dir = paths.scratch / r.name / tag;
            const std::string workers = std::string(tag) == "w1" ? "1" : "4";
            const std::string cmd =
                fmt::format("\"{}\" {} --workers {} --out \"{}\"", paths.shearscan, r.args, workers, dir.string());
            const int rc = std::system(cmd.c_str());
            if (rc != 0) {
                ok = false;
                detail += fmt::format("{}: exit status {}; ", r.name, rc);
            }
            dirs.push_back(dir);
        }
        const std::string same = compare_trees(dirs[0], dirs[1]);
        const std::string workers = compare_trees(dirs[0], dirs[2]);
        ok = ok && same.empty() && workers.empty();
        detail += fmt::format("{}: repeat {}, 1 vs 4 workers {}; ", r.name, same.empty() ? "identical" : same,
                              workers.empty() ? "identical" : workers);
    }
    return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::cerr << "usage: acceptance <shearscan> <scenes-dir> <scratch-dir>\n";
        return 2;
    }
    const Paths paths{argv[1], argv[2], argv[3]};
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"flat boundary identity (2D)", flat_identity_2d},
        {"regular point rate (2D)", regular_rate_2d},
        {"corner rates (2D)", corner_rates_2d},
        {"uniform two-sided bound (2D)", uniformity_2d},
        {"curvature recovery (2D)", curvature_2d},
        {"3D rates", rates_3d},
        {"needle curvature (3D)", needle_3d},
        {"interior exactness", interior_exactness},
        {"frame diagnostics", frame_diagnostics},
        {"detector certification", detector_certification},
        {"determinism", [&] { return determinism(paths); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, fmt::format("threw: {}", e.what())};
        }
        failures += !o.pass;
        std::cout << fmt::format("[{}] {:2d} {}: {}", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail)
                  << std::endl;
    }
    std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
