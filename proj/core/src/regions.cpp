#include "shearlet/regions.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>

namespace shearlet::regions {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 unit_or_throw(const Vec2& v, const char* what) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw ConfigError(std::string(what) + ": zero or non-finite vector");
    return v / n;
}

Vec3 unit_or_throw(const Vec3& v, const char* what) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw ConfigError(std::string(what) + ": zero or non-finite vector");
    return v / n;
}

// Deterministic orthonormal pair spanning the plane orthogonal to n.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& n) {
    const Vec3 helper = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 e1 = (helper - n.dot(helper) * n).normalized();
    return {e1, n.cross(e1)};
}

// Max of |p| over [lo, hi]: endpoints plus interior critical points.
double sup_abs(const Polynomial& p, double lo, double hi) {
    double best = std::max(std::abs(p(lo)), std::abs(p(hi)));
    const Polynomial dp = p.derivative();
    if (dp.degree() < 0) return best;
    constexpr int cells = 1000;
    const double w = (hi - lo) / cells;
    for (int k = 0; k < cells; ++k) {
        double l = lo + k * w, h = l + w;
        double fl = dp(l), fh = dp(h);
        if (fl == 0.0) best = std::max(best, std::abs(p(l)));
        if (fl * fh >= 0.0) continue;
        for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (l + h);
            if ((dp(m) < 0.0) == (fl < 0.0)) l = m, fl = dp(m);
            else h = m;
        }
        best = std::max(best, std::abs(p(0.5 * (l + h))));
    }
    return best;
}

double graph_value(const GraphRegion& g, double x) { return x < 0.0 ? g.left(x) : g.right(x); }

void fill_shape_operator(BoundaryPoint3D& bp, const Vec3& grad, const Mat3& hess) {
    const double gn = grad.norm();
    const Vec3 n = grad / gn;
    auto [e1, e2] = tangent_basis(n);
    Mat2 S;
    S(0, 0) = e1.dot(hess * e1) / gn;
    S(0, 1) = S(1, 0) = e1.dot(hess * e2) / gn;
    S(1, 1) = e2.dot(hess * e2) / gn;
    bp.normals = {n};
    bp.kind = PointKind::Regular;
    bp.tangent1 = e1;
    bp.tangent2 = e2;
    bp.shape_operator = S;
}

}  // namespace

// ---------------------------------------------------------------- Region2D

Region2D::Region2D(Shape shape) : shape_(std::move(shape)) {
    std::visit(overloaded{
                   [](Disk& d) {
                       if (!(d.radius > 0.0)) throw ConfigError("disk radius must be positive");
                   },
                   [](Ellipse& e) {
                       if (!(e.semi_axes.minCoeff() > 0.0)) throw ConfigError("ellipse semi-axes must be positive");
                   },
                   [](HalfPlane& h) { h.normal = unit_or_throw(h.normal, "half-plane normal"); },
                   [this](ConvexPolygon& poly) {
                       const auto& v = poly.vertices;
                       const std::size_t n = v.size();
                       if (n < 3) throw ConfigError("convex polygon needs at least 3 vertices");
                       for (std::size_t i = 0; i < n; ++i) {
                           const Vec2& p0 = v[i];
                           const Vec2& p1 = v[(i + 1) % n];
                           const Vec2& p2 = v[(i + 2) % n];
                           if (!(cross2(p1 - p0, p2 - p1) > 0.0))
                               throw ConfigError("polygon must be strictly convex and counterclockwise");
                           const Vec2 e = p1 - p0;
                           const Vec2 nrm = Vec2(e.y(), -e.x()).normalized();
                           edge_normals_.push_back(nrm);
                           edge_offsets_.push_back(nrm.dot(p0));
                       }
                   },
                   [](GraphRegion& g) {
                       if (!(g.box_min.x() < 0.0 && g.box_max.x() > 0.0 && g.box_min.y() < 0.0 && g.box_max.y() > 0.0))
                           throw ConfigError("graph region box must contain the origin in its interior");
                       if (std::abs(g.left(0.0)) > 1e-12 || std::abs(g.right(0.0)) > 1e-12)
                           throw ConfigError("graph pieces must meet at the origin");
                       const double rho = third_derivative_sup(g);
                       if (g.third_derivative_bound == 0.0) g.third_derivative_bound = rho;
                       else if (g.third_derivative_bound < rho * (1.0 - 1e-12))
                           throw ConfigError("declared third-derivative bound is below the actual supremum");
                   },
                   [](BooleanDifference& b) {
                       if (!b.keep || !b.remove) throw ConfigError("boolean difference needs two regions");
                   },
               },
               shape_);
}

bool Region2D::contains(const Vec2& x) const {
    return std::visit(
        overloaded{
            [&](const Disk& d) { return (x - d.center).squaredNorm() <= d.radius * d.radius; },
            [&](const Ellipse& e) {
                const Vec2 q = Eigen::Rotation2Dd(-e.rotation) * (x - e.center);
                const double u = q.x() / e.semi_axes.x(), v = q.y() / e.semi_axes.y();
                return u * u + v * v <= 1.0;
            },
            [&](const HalfPlane& h) { return h.normal.dot(x) <= h.offset; },
            [&](const ConvexPolygon&) {
                for (std::size_t i = 0; i < edge_normals_.size(); ++i)
                    if (edge_normals_[i].dot(x) > edge_offsets_[i]) return false;
                return true;
            },
            [&](const GraphRegion& g) {
                if ((x.array() < g.box_min.array()).any() || (x.array() > g.box_max.array()).any()) return false;
                return x.y() <= graph_value(g, x.x());
            },
            [&](const BooleanDifference& b) { return b.keep->contains(x) && !b.remove->contains(x); },
        },
        shape_);
}

std::string Region2D::kind_name() const {
    static const char* names[] = {"disk", "ellipse", "half_plane", "polygon", "graph", "difference"};
    return names[shape_.index()];
}

double third_derivative_sup(const GraphRegion& g) {
    const double l = sup_abs(g.left.derivative().derivative().derivative(), g.box_min.x(), 0.0);
    const double r = sup_abs(g.right.derivative().derivative().derivative(), 0.0, g.box_max.x());
    return std::max(l, r);
}

// ---------------------------------------------------------------- Region3D

Region3D::Region3D(Shape shape) : shape_(std::move(shape)) {
    std::visit(overloaded{
                   [](Ball& b) {
                       if (!(b.radius > 0.0)) throw ConfigError("ball radius must be positive");
                   },
                   [](Ellipsoid& e) {
                       if (!(e.semi_axes.minCoeff() > 0.0)) throw ConfigError("ellipsoid semi-axes must be positive");
                   },
                   [](HalfSpace& h) { h.normal = unit_or_throw(h.normal, "half-space normal"); },
                   [this](Pyramid& p) {
                       const std::size_t n = p.base.size();
                       if (n < 3) throw ConfigError("pyramid base needs at least 3 vertices");
                       Vec3 centroid = p.apex;
                       for (const Vec3& b : p.base) centroid += b;
                       centroid /= static_cast<double>(n + 1);
                       auto add_face = [&](const Vec3& a, const Vec3& b, const Vec3& c) {
                           Vec3 nrm = (b - a).cross(c - a);
                           if (!(nrm.norm() > 1e-14)) throw ConfigError("degenerate pyramid face");
                           nrm.normalize();
                           double off = nrm.dot(a);
                           if (nrm.dot(centroid) > off) nrm = -nrm, off = -off;
                           faces_.emplace_back(nrm, off);
                       };
                       for (std::size_t i = 0; i < n; ++i) add_face(p.apex, p.base[i], p.base[(i + 1) % n]);
                       add_face(p.base[0], p.base[1], p.base[2]);
                       const auto& base_face = faces_.back();
                       if (std::abs(base_face.first.dot(p.apex) - base_face.second) < 1e-12)
                           throw ConfigError("pyramid apex lies in the base plane");
                       for (const auto& [nrm, off] : faces_) {
                           for (const Vec3& b : p.base)
                               if (nrm.dot(b) > off + 1e-10) throw ConfigError("pyramid must be convex");
                           if (nrm.dot(p.apex) > off + 1e-10) throw ConfigError("pyramid must be convex");
                       }
                   },
                   [](CutBall& c) {
                       if (!(c.radius > 0.0)) throw ConfigError("ball radius must be positive");
                       c.plane_normal = unit_or_throw(c.plane_normal, "cut plane normal");
                       const double d = c.plane_normal.dot(c.center) - c.plane_offset;
                       if (!(std::abs(d) < c.radius)) throw ConfigError("cut plane misses the ball");
                   },
                   [](Cylinder& c) {
                       if (!(c.radius > 0.0)) throw ConfigError("cylinder radius must be positive");
                       c.axis = unit_or_throw(c.axis, "cylinder axis");
                   },
                   [](GraphRegion3D& g) {
                       if (!(g.box_min.array() < g.box_max.array()).all()) throw ConfigError("graph box is empty");
                       for (const Monomial2& m : g.height)
                           if (m.i < 0 || m.j < 0) throw ConfigError("negative monomial power");
                   },
               },
               shape_);
}

double eval_height(const GraphRegion3D& g, double u, double v) {
    double acc = 0.0;
    for (const Monomial2& m : g.height) acc += m.c * std::pow(u, m.i) * std::pow(v, m.j);
    return acc;
}

bool Region3D::contains(const Vec3& x) const {
    return std::visit(
        overloaded{
            [&](const Ball& b) { return (x - b.center).squaredNorm() <= b.radius * b.radius; },
            [&](const Ellipsoid& e) { return ((x - e.center).array() / e.semi_axes.array()).square().sum() <= 1.0; },
            [&](const HalfSpace& h) { return h.normal.dot(x) <= h.offset; },
            [&](const Pyramid&) {
                for (const auto& [nrm, off] : faces_)
                    if (nrm.dot(x) > off) return false;
                return true;
            },
            [&](const CutBall& c) {
                return (x - c.center).squaredNorm() <= c.radius * c.radius && c.plane_normal.dot(x) <= c.plane_offset;
            },
            [&](const Cylinder& c) {
                const Vec3 d = x - c.axis_point;
                return (d - c.axis.dot(d) * c.axis).squaredNorm() <= c.radius * c.radius;
            },
            [&](const GraphRegion3D& g) {
                if ((x.array() < g.box_min.array()).any() || (x.array() > g.box_max.array()).any()) return false;
                return x.x() <= eval_height(g, x.y(), x.z());
            },
        },
        shape_);
}

std::string Region3D::kind_name() const {
    static const char* names[] = {"ball", "ellipsoid", "half_space", "pyramid", "cut_ball", "cylinder", "graph3d"};
    return names[shape_.index()];
}

// ---------------------------------------------------------------- boundary points

std::string to_string(PointKind k) {
    switch (k) {
        case PointKind::Regular: return "regular";
        case PointKind::CornerFirst: return "corner-first";
        case PointKind::CornerSecond: return "corner-second";
        case PointKind::SeparatingCurve: return "separating-curve";
        case PointKind::Corner3D: return "corner-3d";
    }
    return "unknown";
}

double BoundaryPoint3D::normal_curvature(const Vec3& direction) const {
    if (!shape_operator) throw ConfigError("normal curvature is undefined at a non-smooth point");
    Eigen::Vector2d c(direction.dot(tangent1), direction.dot(tangent2));
    if (!(c.norm() > 1e-12)) throw ConfigError("direction is not tangent to the surface");
    c.normalize();
    return c.dot(*shape_operator * c);
}

BoundaryPoint2D boundary_point(const Region2D& region, const Locator2D& loc) {
    using K = Locator2D::Kind;
    auto need = [&](K k, const char* what) {
        if (loc.kind != k) throw ConfigError(std::string("locator for ") + region.kind_name() + " must be " + what);
    };
    auto bad_range = [&] { throw ConfigError("locator outside the valid parameter domain"); };

    return std::visit(
        overloaded{
            [&](const Disk& d) {
                need(K::Angle, "an angle");
                const Vec2 n(std::cos(loc.value), std::sin(loc.value));
                BoundaryPoint2D bp{d.center + d.radius * n, {n}, PointKind::Regular, 1.0 / d.radius, {}};
                return bp;
            },
            [&](const Ellipse& e) {
                need(K::Angle, "an angle");
                const double A = e.semi_axes.x(), B = e.semi_axes.y();
                const double c = std::cos(loc.value), s = std::sin(loc.value);
                const Eigen::Rotation2Dd R(e.rotation);
                const Vec2 pos = e.center + R * Vec2(A * c, B * s);
                const Vec2 n = (R * Vec2(c / A, s / B)).normalized();
                const double k = A * B / std::pow(A * A * s * s + B * B * c * c, 1.5);
                return BoundaryPoint2D{pos, {n}, PointKind::Regular, k, {}};
            },
            [&](const HalfPlane& h) {
                need(K::Parameter, "a parameter");
                const Vec2 t(-h.normal.y(), h.normal.x());
                return BoundaryPoint2D{h.offset * h.normal + loc.value * t, {h.normal}, PointKind::Regular, 0.0, {}};
            },
            [&](const ConvexPolygon& poly) -> BoundaryPoint2D {
                const auto& v = poly.vertices;
                const int n = static_cast<int>(v.size());
                auto edge_normal = [&](int i) {
                    const Vec2 e = v[(i + 1) % n] - v[i];
                    return Vec2(e.y(), -e.x()).normalized();
                };
                if (loc.kind == K::Vertex) {
                    const double r = std::round(loc.value);
                    if (r != loc.value || r < 0 || r >= n) bad_range();
                    const int i = static_cast<int>(r);
                    return {v[i], {edge_normal((i + n - 1) % n), edge_normal(i)}, PointKind::CornerFirst, {}, {}};
                }
                need(K::Parameter, "a vertex index or an edge parameter");
                if (loc.value < 0.0 || loc.value >= n) bad_range();
                const int i = static_cast<int>(std::floor(loc.value));
                const double f = loc.value - i;
                if (f == 0.0) return boundary_point(region, Locator2D{K::Vertex, static_cast<double>(i)});
                return {v[i] + f * (v[(i + 1) % n] - v[i]), {edge_normal(i)}, PointKind::Regular, 0.0, {}};
            },
            [&](const GraphRegion& g) -> BoundaryPoint2D {
                need(K::Parameter, "a parameter");
                const double x = loc.value;
                if (x < g.box_min.x() || x > g.box_max.x()) bad_range();
                auto normal_of = [](double d1) { return Vec2(-d1, 1.0).normalized(); };
                auto curv_of = [](double d1, double d2) { return -d2 / std::pow(1.0 + d1 * d1, 1.5); };
                const Polynomial& piece = x < 0.0 ? g.left : g.right;
                const Vec2 pos(x, piece(x));
                if (x != 0.0) {
                    const double d1 = piece.derivative()(x), d2 = piece.derivative().derivative()(x);
                    return {pos, {normal_of(d1)}, PointKind::Regular, curv_of(d1, d2), {}};
                }
                const double l1 = g.left.derivative()(0.0), r1 = g.right.derivative()(0.0);
                const double l2 = g.left.derivative().derivative()(0.0), r2 = g.right.derivative().derivative()(0.0);
                if (std::abs(l1 - r1) > 1e-12) return {pos, {normal_of(l1), normal_of(r1)}, PointKind::CornerFirst, {}, {}};
                const double kl = curv_of(l1, l2), kr = curv_of(r1, r2);
                if (std::abs(kl - kr) > 1e-12)
                    return {pos, {normal_of(l1), normal_of(r1)}, PointKind::CornerSecond, {}, std::pair{kl, kr}};
                return {pos, {normal_of(l1)}, PointKind::Regular, kl, {}};
            },
            [&](const BooleanDifference& b) { return boundary_point(*b.keep, loc); },
        },
        region.shape());
}

BoundaryPoint3D boundary_point(const Region3D& region, const Locator3D& loc) {
    using K = Locator3D::Kind;
    auto need = [&](K k, const char* what) {
        if (loc.kind != k) throw ConfigError(std::string("locator for ") + region.kind_name() + " must be " + what);
    };
    auto sphere_dir = [&] {
        return Vec3(std::cos(loc.u) * std::sin(loc.v), std::sin(loc.u) * std::sin(loc.v), std::cos(loc.v));
    };

    return std::visit(
        overloaded{
            [&](const Ball& b) {
                need(K::Angles, "angles");
                BoundaryPoint3D bp;
                const Vec3 n = sphere_dir();
                bp.position = b.center + b.radius * n;
                fill_shape_operator(bp, 2.0 * (bp.position - b.center), 2.0 * Mat3::Identity());
                return bp;
            },
            [&](const Ellipsoid& e) {
                need(K::Angles, "angles");
                BoundaryPoint3D bp;
                bp.position = e.center + (e.semi_axes.array() * sphere_dir().array()).matrix();
                const Vec3 inv2 = e.semi_axes.array().square().inverse().matrix();
                fill_shape_operator(bp, 2.0 * ((bp.position - e.center).array() * inv2.array()).matrix(),
                                    Mat3(2.0 * inv2.asDiagonal()));
                return bp;
            },
            [&](const HalfSpace& h) {
                need(K::Parameter, "a parameter pair");
                auto [e1, e2] = tangent_basis(h.normal);
                BoundaryPoint3D bp;
                bp.position = h.offset * h.normal + loc.u * e1 + loc.v * e2;
                fill_shape_operator(bp, h.normal, Mat3::Zero());
                return bp;
            },
            [&](const Pyramid& p) {
                need(K::Vertex, "a vertex index (0 = apex)");
                const double r = std::round(loc.u);
                const int nb = static_cast<int>(p.base.size());
                if (r != loc.u || r < 0 || r > nb) throw ConfigError("locator outside the valid parameter domain");
                const Vec3 pos = r == 0 ? p.apex : p.base[static_cast<std::size_t>(r) - 1];
                BoundaryPoint3D bp;
                bp.position = pos;
                bp.kind = PointKind::Corner3D;
                for (const auto& [nrm, off] : region.faces())
                    if (std::abs(nrm.dot(pos) - off) < 1e-10) bp.normals.push_back(nrm);
                return bp;
            },
            [&](const CutBall& c) {
                BoundaryPoint3D bp;
                if (loc.kind == K::CutCircle) {
                    const double d = c.plane_normal.dot(c.center) - c.plane_offset;
                    const Vec3 cc = c.center - d * c.plane_normal;
                    const double rho = std::sqrt(c.radius * c.radius - d * d);
                    auto [e1, e2] = tangent_basis(c.plane_normal);
                    bp.position = cc + rho * (std::cos(loc.u) * e1 + std::sin(loc.u) * e2);
                    bp.normals = {(bp.position - c.center) / c.radius, c.plane_normal};
                    bp.kind = PointKind::SeparatingCurve;
                    return bp;
                }
                need(K::Angles, "angles or a cut-circle angle");
                bp.position = c.center + c.radius * sphere_dir();
                if (!(c.plane_normal.dot(bp.position) < c.plane_offset))
                    throw ConfigError("sphere point is not on the kept side of the cut");
                fill_shape_operator(bp, 2.0 * (bp.position - c.center), 2.0 * Mat3::Identity());
                return bp;
            },
            [&](const Cylinder& c) {
                need(K::Parameter, "a parameter pair (angle, height)");
                auto [e1, e2] = tangent_basis(c.axis);
                const Vec3 radial = std::cos(loc.u) * e1 + std::sin(loc.u) * e2;
                BoundaryPoint3D bp;
                bp.position = c.axis_point + loc.v * c.axis + c.radius * radial;
                const Mat3 hess = 2.0 * (Mat3::Identity() - c.axis * c.axis.transpose());
                fill_shape_operator(bp, 2.0 * c.radius * radial, hess);
                return bp;
            },
            [&](const GraphRegion3D& g) {
                need(K::Parameter, "a parameter pair");
                if (loc.u < g.box_min.y() || loc.u > g.box_max.y() || loc.v < g.box_min.z() || loc.v > g.box_max.z())
                    throw ConfigError("locator outside the valid parameter domain");
                // derivatives of the height by monomial differentiation
                double hu = 0, hv = 0, huu = 0, huv = 0, hvv = 0;
                const double u = loc.u, v = loc.v;
                auto pw = [](double x, int k) { return k < 0 ? 0.0 : std::pow(x, k); };
                for (const Monomial2& m : g.height) {
                    hu += m.c * m.i * pw(u, m.i - 1) * pw(v, m.j);
                    hv += m.c * m.j * pw(u, m.i) * pw(v, m.j - 1);
                    huu += m.c * m.i * (m.i - 1) * pw(u, m.i - 2) * pw(v, m.j);
                    huv += m.c * m.i * m.j * pw(u, m.i - 1) * pw(v, m.j - 1);
                    hvv += m.c * m.j * (m.j - 1) * pw(u, m.i) * pw(v, m.j - 2);
                }
                BoundaryPoint3D bp;
                bp.position = Vec3(eval_height(g, u, v), u, v);
                Mat3 hess = Mat3::Zero();
                hess(1, 1) = -huu;
                hess(1, 2) = hess(2, 1) = -huv;
                hess(2, 2) = -hvv;
                fill_shape_operator(bp, Vec3(1.0, -hu, -hv), hess);
                return bp;
            },
        },
        region.shape());
}

// ---------------------------------------------------------------- shear <-> normal

Vec2 shear_to_normal(double s) { return Vec2(1.0, -s) / std::sqrt(1.0 + s * s); }

double normal_to_shear(const Vec2& n) {
    if (!(std::abs(n.x()) > 1e-12 * n.norm())) throw ConfigError("normal is outside the horizontal cone");
    return -n.y() / n.x();
}

Vec3 shear_to_normal(const Vec2& s) { return Vec3(1.0, -s.x(), -s.y()) / std::sqrt(1.0 + s.squaredNorm()); }

Vec2 normal_to_shear(const Vec3& n) {
    if (!(std::abs(n.x()) > 1e-12 * n.norm())) throw ConfigError("normal is outside the first pyramid");
    return Vec2(-n.y() / n.x(), -n.z() / n.x());
}

}  // namespace shearlet::regions
