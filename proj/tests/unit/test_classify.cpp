#include <doctest.h>

#include <cmath>

#include "shearlet/classify.hpp"

using namespace shearlet;
using classify::Verdict;

namespace {
const generators::Generator g2 = generators::default_2d();
const generators::Generator g3 = generators::default_3d();
}  // namespace

TEST_CASE("exponent fit on synthetic ladders") {
    const auto a = transform2d::dyadic_scales(4, 9);
    std::vector<double> c;
    for (double x : a) c.push_back(-3.0 * std::pow(x, 1.25));
    classify::FitOptions opt;
    opt.nominal = 1.25;
    const auto fit = classify::fit_exponent(a, c, opt);
    CHECK(fit.slope == doctest::Approx(1.25));
    CHECK(fit.r2 == doctest::Approx(1.0));
    CHECK(fit.limit == doctest::Approx(-3.0));  // signed
    CHECK(fit.enough);
    CHECK_FALSE(fit.rapid);

    // entries under the zero floor do not count; too few left means rapid decay
    std::vector<double> z(a.size(), 0.0);
    z[0] = 1e-3;
    opt.zero_floor = 1e-6;
    const auto zf = classify::fit_exponent(a, z, opt);
    CHECK_FALSE(zf.enough);
    CHECK(zf.rapid);

    std::vector<double> all0(a.size(), 0.0);
    CHECK(classify::fit_exponent(a, all0, opt).all_zero);
}

TEST_CASE("extrapolated limit removes the sqrt(a) and a corrections") {
    const auto a = transform2d::dyadic_scales(4, 10);
    std::vector<double> c;
    for (double x : a) c.push_back(std::pow(x, 0.75) * (0.018 + 0.01 * std::sqrt(x) - 0.2 * x));
    CHECK(classify::extrapolated_limit(a, c, 0.75) == doctest::Approx(0.018).epsilon(1e-10));
}

TEST_CASE("classifier configuration checks") {
    classify::ClassifierConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.bands2d[1] = {0.85, 0.15};  // overlaps the 3/4 band
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.scales2d = transform2d::dyadic_scales(4, 6);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    CHECK(cfg.zero_floor2d(g2) == doctest::Approx(10 * 1e-6 * g2.l1_norm()));
    CHECK(classify::to_string(Verdict::CornerFirstAligned) == "CornerFirstAligned");
}

TEST_CASE("cell normals") {
    const Vec2 h = classify::cell_normal(transform2d::Cone::Horizontal, 0.0);
    CHECK(h.x() == doctest::Approx(1.0));
    const Vec2 v = classify::cell_normal(transform2d::Cone::Vertical, 0.0);
    CHECK(v.y() == doctest::Approx(1.0));
    const Vec3 p2 = classify::cell_normal3d(2, {0, 0});
    CHECK(std::abs(p2.y()) == doctest::Approx(1.0));
    const Vec3 d = classify::needle_direction({0, 0}, pi / 2);
    CHECK(d.norm() == doctest::Approx(1.0));
    CHECK(std::abs(d.y()) == doctest::Approx(1.0));
}

TEST_CASE("2D verdicts on labeled points") {
    const regions::Region2D disk(regions::Disk{});
    const auto reg = classify::classify2d(disk, g2, {1, 0});
    CHECK(reg.verdict == Verdict::RegularAligned);
    REQUIRE(reg.shear);
    CHECK(std::abs(*reg.shear) < 0.02);
    REQUIRE(reg.normal2d);
    CHECK(std::abs(reg.normal2d->x()) == doctest::Approx(1.0).epsilon(1e-3));

    CHECK(classify::classify2d(disk, g2, {0.3, 0.1}).verdict == Verdict::OffBoundary);
    CHECK(classify::classify2d(disk, g2, {1.5, 0.0}).verdict == Verdict::OffBoundary);

    const regions::Region2D square(regions::ConvexPolygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}});
    CHECK(classify::classify2d(square, g2, {1, 1}, {}, 0.5).verdict == Verdict::CornerFirstNonAligned);
    CHECK(classify::classify2d(square, g2, {1, 1}, {}, 0.0).verdict == Verdict::CornerFirstAligned);
    CHECK(classify::classify2d(square, g2, {1, 0.3}, {}, 0.0).verdict == Verdict::RegularAligned);

    const regions::Region2D kink(regions::GraphRegion{Polynomial({0.0, 1.0, 1.0}), Polynomial({0.0, 1.0, -1.0}),
                                                      {-1, -1}, {1, 1}, 0});
    CHECK(classify::classify2d(kink, g2, {0, 0}, {}, 0.0).verdict == Verdict::CornerSecond);
}

TEST_CASE("2D curvature estimate") {
    const generators::WedgeTable table(g2);
    const regions::Region2D disk(regions::Disk{{0, 0}, 1.5});
    const auto est = classify::estimate_curvature2d(disk, g2, {1.5, 0}, 0.0, table);
    CHECK(est.curvature == doctest::Approx(1 / 1.5).epsilon(0.02));

    // concave side: the complement of a disk
    auto plane = std::make_shared<const regions::Region2D>(regions::HalfPlane{{1, 0}, 5});
    auto hole = std::make_shared<const regions::Region2D>(regions::Disk{{0, 0}, 1});
    const regions::Region2D outside(regions::BooleanDifference{plane, hole});
    const auto neg = classify::estimate_curvature2d(outside, g2, {-1, 0}, 0.0, table);
    CHECK(neg.curvature == doctest::Approx(-1.0).epsilon(0.02));
}

TEST_CASE("3D verdicts") {
    const regions::Region3D ball(regions::Ball{});
    CHECK(classify::classify3d(ball, g3, {1, 0, 0}, {}, Vec2(0, 0)).verdict == Verdict::Surface3D);
    CHECK(classify::classify3d(ball, g3, {0.2, 0.1, 0}, {}, Vec2(0, 0)).verdict == Verdict::OffBoundary);
    const regions::Region3D cut(regions::CutBall{{0, 0, 0}, 1, {0, 0, 1}, 0});
    CHECK(classify::classify3d(cut, g3, {1, 0, 0}, {}, Vec2(0, 0.5)).verdict == Verdict::SeparatingCurve3D);
    const regions::Region3D pyr(regions::Pyramid{{0, 0, 0}, {{1, -1, -1}, {1, 1, -1}, {1, 1, 1}, {1, -1, 1}}});
    CHECK(classify::classify3d(pyr, g3, {0, 0, 0}, {}, Vec2(0, 0)).verdict == Verdict::Corner3D);
}

TEST_CASE("needle curvature on a cylinder follows Euler's formula") {
    const generators::WedgeTable table(g3, 2.0, 81, generators::WedgeTable::Kind::Needle);
    const regions::Region3D cyl(regions::Cylinder{{0, 0, 0}, {0, 0, 1}, 1});
    for (double beta : {0.0, 0.7, pi / 2}) {
        const Vec3 dir = classify::needle_direction({0, 0}, beta);
        const double expect = dir.y() * dir.y();  // k = cos^2 of the angle to the circular direction
        CHECK(classify::directional_curvature3d(cyl, g3, {1, 0, 0}, {0, 0}, beta, table).curvature ==
              doctest::Approx(expect).epsilon(0.01).scale(1.0));
    }
}
