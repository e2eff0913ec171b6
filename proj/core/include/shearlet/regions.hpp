#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shearlet/common.hpp"
#include "shearlet/polynomial.hpp"

namespace shearlet::regions {

// ---------------------------------------------------------------- 2D shapes

struct Disk {
    Vec2 center{0, 0};
    double radius = 1;
};

struct Ellipse {
    Vec2 center{0, 0};
    Vec2 semi_axes{1, 1};
    double rotation = 0;  // radians
};

// {x : normal . x <= offset}
struct HalfPlane {
    Vec2 normal{1, 0};
    double offset = 0;
};

struct ConvexPolygon {
    std::vector<Vec2> vertices;  // counterclockwise
};

// {x in box : x2 <= g(x1)} with g = left on x1 < 0 and right on x1 >= 0;
// both pieces pass through the origin.
struct GraphRegion {
    Polynomial left;
    Polynomial right;
    Vec2 box_min{-1, -1};
    Vec2 box_max{1, 1};
    double third_derivative_bound = 0;  // declared rho; 0 means "compute"
};

class Region2D;

struct BooleanDifference {
    std::shared_ptr<const Region2D> keep;
    std::shared_ptr<const Region2D> remove;
};

// Closed planar region with an exact membership oracle. Curvature sign: kappa > 0
// where the region is locally convex toward the outer normal.
class Region2D {
public:
    using Shape = std::variant<Disk, Ellipse, HalfPlane, ConvexPolygon, GraphRegion, BooleanDifference>;

    Region2D(Shape shape);  // validates invariants; throws ConfigError
    bool contains(const Vec2& x) const;
    const Shape& shape() const { return shape_; }
    std::string kind_name() const;

private:
    Shape shape_;
    std::vector<Vec2> edge_normals_;  // ConvexPolygon only
    std::vector<double> edge_offsets_;
};

// ---------------------------------------------------------------- 3D shapes

struct Ball {
    Vec3 center{0, 0, 0};
    double radius = 1;
};

struct Ellipsoid {
    Vec3 center{0, 0, 0};
    Vec3 semi_axes{1, 1, 1};
};

struct HalfSpace {
    Vec3 normal{1, 0, 0};
    double offset = 0;
};

struct Pyramid {
    Vec3 apex{0, 0, 0};
    std::vector<Vec3> base;  // planar convex polygon
};

// Ball intersected with {plane_normal . x <= plane_offset}.
struct CutBall {
    Vec3 center{0, 0, 0};
    double radius = 1;
    Vec3 plane_normal{0, 0, 1};
    double plane_offset = 0;
};

// Infinite circular cylinder.
struct Cylinder {
    Vec3 axis_point{0, 0, 0};
    Vec3 axis{0, 0, 1};
    double radius = 1;
};

struct Monomial2 {
    int i;  // power of x2
    int j;  // power of x3
    double c;
};

// {x in box : x1 <= h(x2, x3)} with polynomial height h.
struct GraphRegion3D {
    std::vector<Monomial2> height;
    Vec3 box_min{-1, -1, -1};
    Vec3 box_max{1, 1, 1};
};

class Region3D {
public:
    using Shape = std::variant<Ball, Ellipsoid, HalfSpace, Pyramid, CutBall, Cylinder, GraphRegion3D>;

    Region3D(Shape shape);
    bool contains(const Vec3& x) const;
    const Shape& shape() const { return shape_; }
    std::string kind_name() const;
    // Outward face planes (normal, offset) of a Pyramid.
    const std::vector<std::pair<Vec3, double>>& faces() const { return faces_; }

private:
    Shape shape_;
    std::vector<std::pair<Vec3, double>> faces_;
};

double eval_height(const GraphRegion3D& g, double u, double v);

// ---------------------------------------------------------------- boundary data

enum class PointKind { Regular, CornerFirst, CornerSecond, SeparatingCurve, Corner3D };
std::string to_string(PointKind k);

struct BoundaryPoint2D {
    Vec2 position;
    std::vector<Vec2> normals;  // unit length
    PointKind kind = PointKind::Regular;
    std::optional<double> curvature;                         // signed, regular points
    std::optional<std::pair<double, double>> side_curvatures;  // (left, right) at second-type corners
};

struct BoundaryPoint3D {
    Vec3 position;
    std::vector<Vec3> normals;
    PointKind kind = PointKind::Regular;
    // Shape operator in an orthonormal tangent basis (e1, e2): normal curvature
    // along t = c1 e1 + c2 e2 is c^T S c.
    std::optional<Mat2> shape_operator;
    Vec3 tangent1{0, 0, 0};
    Vec3 tangent2{0, 0, 0};
    double normal_curvature(const Vec3& direction) const;
};

struct Locator2D {
    enum class Kind { Angle, Vertex, Parameter } kind = Kind::Angle;
    double value = 0;
};

struct Locator3D {
    enum class Kind { Angles, Vertex, CutCircle, Parameter } kind = Kind::Angles;
    double u = 0;  // polar angle theta / vertex index / circle angle / first coordinate
    double v = 0;  // eta / unused / unused / second coordinate
};

BoundaryPoint2D boundary_point(const Region2D& region, const Locator2D& loc);
BoundaryPoint3D boundary_point(const Region3D& region, const Locator3D& loc);

// Exact third-derivative bound of a graph piece over its domain inside the box.
double third_derivative_sup(const GraphRegion& g);

// ---------------------------------------------------------------- shear <-> normal
//
// The element psi(A^-1 S_s^-1 (x - p)) is aligned with outer normal n when
// n . (s, 1) = 0, i.e. s = -n2/n1 (horizontal cone). In the vertical cone the
// roles of the coordinates are exchanged: s = -n1/n2. In 3D (pyramid 1)
// s = (-n2/n1, -n3/n1).

Vec2 shear_to_normal(double s);
double normal_to_shear(const Vec2& n);  // throws ConfigError when n1 == 0 (out of cone)
Vec3 shear_to_normal(const Vec2& s);
Vec2 normal_to_shear(const Vec3& n);

}  // namespace shearlet::regions
