#include <doctest.h>

#include <cmath>
#include <Eigen/Geometry>
#include <memory>

#include "shearlet/regions.hpp"

using namespace shearlet;
using namespace shearlet::regions;

TEST_CASE("planar membership") {
    const Region2D disk(Disk{{1, 0}, 0.5});
    CHECK(disk.contains({1.2, 0.1}));
    CHECK(disk.contains({1.5, 0.0}));  // closed
    CHECK_FALSE(disk.contains({0.4, 0.0}));

    const Region2D ell(Ellipse{{0, 0}, {2, 1}, pi / 2});  // long axis along x2
    CHECK(ell.contains({0.0, 1.9}));
    CHECK_FALSE(ell.contains({1.9, 0.0}));

    const Region2D half(HalfPlane{{0, 2}, 1});  // normal is normalized: x2 <= 1
    CHECK(half.contains({5, 1}));
    CHECK_FALSE(half.contains({0, 1.01}));

    const Region2D tri(ConvexPolygon{{{0, 0}, {1, 0}, {0, 1}}});
    CHECK(tri.contains({0.2, 0.2}));
    CHECK_FALSE(tri.contains({0.6, 0.6}));

    const Region2D kink(GraphRegion{Polynomial({0.0, 0.0, 1.0}), Polynomial({0.0, 0.0, -1.0}), {-1, -1}, {1, 1}, 0});
    CHECK(kink.contains({0.5, -0.3}));
    CHECK_FALSE(kink.contains({0.5, -0.2}));
    CHECK(kink.contains({-0.5, 0.2}));
    CHECK_FALSE(kink.contains({0.0, 1.5}));  // outside the box

    auto outer = std::make_shared<const Region2D>(Disk{{0, 0}, 1});
    auto inner = std::make_shared<const Region2D>(Disk{{0, 0}, 0.5});
    const Region2D ring(BooleanDifference{outer, inner});
    CHECK(ring.contains({0.75, 0}));
    CHECK_FALSE(ring.contains({0.25, 0}));
}

TEST_CASE("invalid planar regions are rejected") {
    CHECK_THROWS_AS(Region2D(Disk{{0, 0}, 0}), ConfigError);
    CHECK_THROWS_AS(Region2D(Ellipse{{0, 0}, {1, -1}, 0}), ConfigError);
    CHECK_THROWS_AS(Region2D(HalfPlane{{0, 0}, 1}), ConfigError);
    CHECK_THROWS_AS(Region2D(ConvexPolygon{{{0, 0}, {0, 1}, {1, 0}}}), ConfigError);  // clockwise
    CHECK_THROWS_AS(Region2D(ConvexPolygon{{{0, 0}, {1, 0}}}), ConfigError);
    CHECK_THROWS_AS(Region2D(GraphRegion{Polynomial({0.1}), Polynomial({0.0}), {-1, -1}, {1, 1}, 0}), ConfigError);
    CHECK_THROWS_AS(Region2D(BooleanDifference{nullptr, nullptr}), ConfigError);
}

TEST_CASE("planar boundary data") {
    const Region2D disk(Disk{{0, 0}, 2});
    const auto bp = boundary_point(disk, {Locator2D::Kind::Angle, 0.3});
    CHECK(bp.position.norm() == doctest::Approx(2.0));
    CHECK(*bp.curvature == doctest::Approx(0.5));
    CHECK(bp.normals.front().dot(bp.position.normalized()) == doctest::Approx(1.0));

    const Region2D ell(Ellipse{{0, 0}, {2, 1}, 0});
    CHECK(*boundary_point(ell, {Locator2D::Kind::Angle, 0.0}).curvature == doctest::Approx(2.0));  // a / b^2
    CHECK(*boundary_point(ell, {Locator2D::Kind::Angle, pi / 2}).curvature == doctest::Approx(0.25));

    const Region2D sq(ConvexPolygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}});
    const auto corner = boundary_point(sq, {Locator2D::Kind::Vertex, 2});
    CHECK(corner.kind == PointKind::CornerFirst);
    CHECK(corner.normals.size() == 2);
    CHECK_THROWS_AS(boundary_point(sq, {Locator2D::Kind::Vertex, 7}), ConfigError);

    const Region2D kink(GraphRegion{Polynomial({0.0, 1.0, 1.0}), Polynomial({0.0, 1.0, -1.0}), {-1, -1}, {1, 1}, 0});
    const auto k = boundary_point(kink, {Locator2D::Kind::Parameter, 0.0});
    CHECK(k.kind == PointKind::CornerSecond);
    REQUIRE(k.side_curvatures);
    CHECK(k.side_curvatures->first == doctest::Approx(-2.0 / std::pow(2.0, 1.5)));
    CHECK(k.side_curvatures->second == doctest::Approx(2.0 / std::pow(2.0, 1.5)));
    CHECK(third_derivative_sup(std::get<GraphRegion>(kink.shape())) == doctest::Approx(0.0));
}

TEST_CASE("solid membership and validation") {
    const Region3D ball(Ball{{0, 0, 1}, 1});
    CHECK(ball.contains({0, 0, 1.9}));
    CHECK_FALSE(ball.contains({0, 0, -0.1}));

    const Region3D pyr(Pyramid{{0, 0, 0}, {{1, -1, -1}, {1, 1, -1}, {1, 1, 1}, {1, -1, 1}}});
    CHECK(pyr.contains({0.5, 0.1, -0.2}));
    CHECK_FALSE(pyr.contains({0.5, 0.6, 0}));
    CHECK(pyr.faces().size() == 5);

    const Region3D cut(CutBall{{0, 0, 0}, 1, {0, 0, 1}, 0});
    CHECK(cut.contains({0.5, 0, -0.1}));
    CHECK_FALSE(cut.contains({0.5, 0, 0.1}));

    const Region3D cyl(Cylinder{{0, 0, 0}, {0, 0, 1}, 1});
    CHECK(cyl.contains({0.9, 0, 100}));
    CHECK_FALSE(cyl.contains({1.1, 0, 0}));

    const Region3D graph(GraphRegion3D{{{2, 0, -1.0}}, {-1, -1, -1}, {1, 1, 1}});  // x1 <= -x2^2
    CHECK(graph.contains({-0.5, 0.5, 0}));
    CHECK_FALSE(graph.contains({-0.2, 0.5, 0}));

    CHECK_THROWS_AS(Region3D(Ball{{0, 0, 0}, -1}), ConfigError);
    CHECK_THROWS_AS(Region3D(CutBall{{0, 0, 0}, 1, {0, 0, 1}, 2}), ConfigError);
    CHECK_THROWS_AS(Region3D(Pyramid{{1, 0, 0}, {{1, -1, -1}, {1, 1, -1}, {1, 1, 1}}}), ConfigError);
    CHECK_THROWS_AS(Region3D(Cylinder{{0, 0, 0}, {0, 0, 0}, 1}), ConfigError);
}

TEST_CASE("normal curvature on solids") {
    const Region3D ball(Ball{{0, 0, 0}, 2});
    const auto bp = boundary_point(ball, {Locator3D::Kind::Angles, 0.7, 1.1});
    CHECK(bp.normal_curvature(bp.tangent1) == doctest::Approx(0.5));
    CHECK(bp.normal_curvature(bp.tangent1 + bp.tangent2) == doctest::Approx(0.5));

    const Region3D cyl(Cylinder{{0, 0, 0}, {0, 0, 1}, 1});
    const auto cp = boundary_point(cyl, {Locator3D::Kind::Parameter, 0.4, 3.0});
    const Vec3 axis(0, 0, 1), around = axis.cross(cp.position);
    CHECK(cp.position.z() == doctest::Approx(3.0));
    CHECK(std::abs(cp.normal_curvature(axis)) < 1e-12);
    CHECK(cp.normal_curvature(around) == doctest::Approx(1.0));
    CHECK(cp.normal_curvature(around.normalized() + axis) == doctest::Approx(0.5));  // Euler: cos^2

    const Region3D pyr(Pyramid{{0, 0, 0}, {{1, -1, -1}, {1, 1, -1}, {1, 1, 1}, {1, -1, 1}}});
    const auto apex = boundary_point(pyr, {Locator3D::Kind::Vertex, 0, 0});
    CHECK(apex.kind == PointKind::Corner3D);
    CHECK_THROWS_AS(apex.normal_curvature({0, 1, 0}), ConfigError);
}

TEST_CASE("shear and normal conversions") {
    for (double s : {-1.5, -0.2, 0.0, 0.7}) CHECK(normal_to_shear(shear_to_normal(s)) == doctest::Approx(s));
    const Vec2 n = shear_to_normal(0.5);
    CHECK(n.norm() == doctest::Approx(1.0));
    CHECK(n.x() * 0.5 + n.y() == doctest::Approx(0.0));  // n . (s, 1) = 0
    CHECK_THROWS_AS(normal_to_shear(Vec2(0, 1)), ConfigError);

    const Vec2 s3(0.3, -0.4);
    const Vec2 back = normal_to_shear(shear_to_normal(s3));
    CHECK(back.x() == doctest::Approx(0.3));
    CHECK(back.y() == doctest::Approx(-0.4));
}
