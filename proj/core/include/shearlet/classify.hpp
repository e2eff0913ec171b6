#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "shearlet/common.hpp"
#include "shearlet/generators.hpp"
#include "shearlet/regions.hpp"
#include "shearlet/transform2d.hpp"
#include "shearlet/transform3d.hpp"

namespace shearlet::classify {

struct Band {
    double center;
    double halfwidth;
    bool contains(double w) const { return std::abs(w - center) <= halfwidth; }
};

struct ExponentFit {
    double slope = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();
    double r2 = 0;
    double nominal = 0;  // exponent used for the limit estimate
    double limit = 0;    // signed geometric mean of coeff * a^-nominal over the finest half
    int used = 0;        // entries above the zero floor
    bool enough = false; // at least 4 entries above the floor
    bool rapid = false;  // too few entries or slope above the rapid threshold
    bool monotone = false;
    bool all_zero = false;
};

struct FitOptions {
    double nominal = 0.75;
    double floor_exponent = 0.75;  // entries count when |c| / a^floor_exponent >= zero_floor
    double zero_floor = 0.0;
    double rapid_threshold = 2.5;
};

// Least-squares line through (log a, log |c|) over entries above the zero floor.
ExponentFit fit_exponent(const std::vector<double>& a, const std::vector<double>& c, const FitOptions& opt);
ExponentFit fit_exponent(const transform2d::DecayProfile& p, const FitOptions& opt);
ExponentFit fit_exponent(const transform3d::DecayProfile& p, const FitOptions& opt);

// Extrapolated limit of c * a^-nominal via the model L + c1 sqrt(a) + c2 a.
double extrapolated_limit(const std::vector<double>& a, const std::vector<double>& c, double nominal);

enum class Verdict {
    OffBoundary,
    RegularNonAligned,
    RegularAligned,
    CornerFirstAligned,
    CornerFirstNonAligned,
    CornerSecond,
    Surface3D,
    SeparatingCurve3D,
    Corner3D,
    Indeterminate
};
std::string to_string(Verdict v);

struct ClassifierConfig {
    std::vector<double> scales2d = transform2d::dyadic_scales(4, 9);
    std::vector<double> scales3d = transform2d::dyadic_scales(3, 7);
    int shear_points = 41;  // per cone, over [-shear_max, shear_max]
    double shear_max = 1.0;
    int shear_points3d = 9;  // per axis and pyramid
    double shear_max3d = 1.0;
    std::array<Band, 3> bands2d{{{0.75, 0.15}, {1.25, 0.15}, {1.75, 0.20}}};
    std::array<Band, 3> bands3d{{{1.0, 0.15}, {1.5, 0.15}, {2.0, 0.25}}};
    double rapid2d = 2.5;
    double rapid3d = 3.0;
    double zero_floor_factor = 10.0;     // zero floor = factor * atol of the transform
    double cluster_separation = 0.3;     // radians between distinct normal orientations
    double curvature_nu = 2.0;           // certified curvature interval [-nu, nu]
    QuadratureConfig quad2d = QuadratureConfig::defaults_2d();
    QuadratureConfig quad3d = QuadratureConfig::defaults_3d();

    void validate() const;  // throws ConfigError (overlapping bands, short ladders, ...)
    double zero_floor2d(const generators::Generator& g) const;
    double zero_floor3d(const generators::Generator& g) const;
};

struct ScanCell {
    transform2d::Cone cone = transform2d::Cone::Horizontal;
    double s = 0;
    ExponentFit fit;
    bool valid = true;
    std::string error;
};

struct OrientationScan {
    std::vector<ScanCell> cells;
    std::optional<double> best_shear;  // refined
    transform2d::Cone best_cone = transform2d::Cone::Horizontal;
    ExponentFit refined;
    transform2d::DecayProfile refined_profile;
    int aligned_clusters = 0;     // distinct normal orientations with a 3/4-band response
    int far_first_type_cells = 0; // 5/4-band cells away from every aligned orientation
};

OrientationScan orientation_scan2d(const regions::Region2D& region, const generators::Generator& gen, const Vec2& p,
                                   const ClassifierConfig& cfg = {});

struct PointClassification {
    Verdict verdict = Verdict::Indeterminate;
    std::optional<double> shear;  // best shear (2D)
    transform2d::Cone cone = transform2d::Cone::Horizontal;
    std::optional<Vec2> shear3d;
    int pyramid = 1;
    std::optional<Vec2> normal2d;
    std::optional<Vec3> normal3d;
    ExponentFit fit;
    std::vector<double> exponents;  // per scanned cell, or the single fitted exponent
    std::optional<double> curvature;
    std::string reason;  // set for Indeterminate
    std::vector<std::string> diagnostics;
};

// Without a shear the point is scanned over both cones; with a shear only that
// orientation is examined.
PointClassification classify2d(const regions::Region2D& region, const generators::Generator& gen, const Vec2& p,
                               const ClassifierConfig& cfg = {}, std::optional<double> shear = std::nullopt,
                               transform2d::Cone cone = transform2d::Cone::Horizontal);

PointClassification classify3d(const regions::Region3D& region, const generators::Generator& gen, const Vec3& p,
                               const ClassifierConfig& cfg = {}, std::optional<Vec2> shear = std::nullopt,
                               int pyramid = 1);

// Normal orientation (unit, defined up to sign) of a (cone, shear) cell.
Vec2 cell_normal(transform2d::Cone cone, double s);
Vec3 cell_normal3d(int pyramid, const Vec2& s);

struct CurvatureEstimate {
    double curvature = 0;      // signed, positive where the region is locally convex
    double limit = 0;          // extrapolated a^{-3/4} coefficient limit (a^{-5/4} for needles)
    double wedge_parameter = 0;
    double shear = 0;          // final tracked shear
    transform2d::DecayProfile profile;
};

// Inverts the wedge integral at an aligned regular point. Throws NumericalError when
// the limit lies outside the certified range or dG/dk is too small there.
CurvatureEstimate estimate_curvature2d(const regions::Region2D& region, const generators::Generator& gen,
                                       const Vec2& p, double shear, const generators::WedgeTable& table,
                                       transform2d::Cone cone = transform2d::Cone::Horizontal,
                                       const std::vector<double>& scales = transform2d::dyadic_scales(4, 10),
                                       const QuadratureConfig& q = QuadratureConfig::defaults_2d());

struct DirectionalCurvature {
    double curvature = 0;  // normal curvature along the needle direction
    double limit = 0;
    double wedge_parameter = 0;
    transform3d::DecayProfile profile;
};

// Tangent direction probed by the needle at (shear, beta), unit length.
Vec3 needle_direction(const Vec2& shear, double beta);

DirectionalCurvature directional_curvature3d(const regions::Region3D& region, const generators::Generator& gen,
                                             const Vec3& p, const Vec2& shear, double beta,
                                             const generators::WedgeTable& needle_table,
                                             const std::vector<double>& scales = transform2d::dyadic_scales(3, 8),
                                             const QuadratureConfig& q = QuadratureConfig::defaults_3d());

}  // namespace shearlet::classify
