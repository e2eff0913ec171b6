#pragma once

#include <string>
#include <vector>

#include "shearlet/common.hpp"
#include "shearlet/generators.hpp"
#include "shearlet/regions.hpp"
#include "shearlet/transform2d.hpp"

namespace shearlet::transform3d {

struct Index {
    double a = 1.0;
    Vec2 s{0, 0};
    Vec3 p{0, 0, 0};
    int pyramid = 1;  // 1, 2 or 3
};

struct NeedleIndex {
    double a = 1.0;
    Vec2 s{0, 0};
    Vec3 p{0, 0, 0};
    double beta = 0.0;  // beta = 0 stretches the element along x3
};

using transform2d::Coefficient;

// Cyclic coordinate shift R x = (x2, x3, x1); pyramid d uses R^{d-1}.
Mat3 cyclic_shift(int power);
// Frame of pyramid d: x = B y + p with B = R^{-(d-1)} M, M = [[a, sqrt(a) s1, sqrt(a) s2], [0, sqrt a, 0], [0, 0, sqrt a]].
Mat3 pyramid_matrix(double a, const Vec2& s, int pyramid);
// The needle matrix M_{a,s,beta} = A^-1 R_beta S_s^-1 mapping x - p to generator coordinates.
Mat3 needle_matrix(double a, const Vec2& s, double beta);

// a int chi(B y + p) psi(y) dy (pyramid normalization a^{-1}).
Coefficient coefficient3d(const regions::Region3D& region, const generators::Generator& gen, const Index& idx,
                          const QuadratureConfig& q = QuadratureConfig::defaults_3d());
inline double coeff3d(const regions::Region3D& region, const generators::Generator& gen, const Index& idx,
                      const QuadratureConfig& q = QuadratureConfig::defaults_3d()) {
    return coefficient3d(region, gen, idx, q).value;
}

// a^{5/4} int chi(M^{-1} y + p) psi(y) dy
Coefficient needle_coefficient(const regions::Region3D& region, const generators::Generator& gen,
                               const NeedleIndex& idx, const QuadratureConfig& q = QuadratureConfig::defaults_3d());

double frame_integral3d(const regions::Region3D& region, const generators::Generator& gen, const Mat3& B, const Vec3& p,
                        const QuadratureConfig& q, double atol, int* panels = nullptr);

struct ProfileEntry {
    double a = 0;
    double value = 0;
    bool valid = false;
    int panels = 0;
    std::string error;
};

struct DecayProfile {
    Vec3 point{0, 0, 0};
    Vec2 shear{0, 0};
    int pyramid = 1;
    bool needle = false;
    double beta = 0;
    QuadratureConfig quadrature;
    std::vector<ProfileEntry> entries;
};

DecayProfile decay_profile3d(const regions::Region3D& region, const generators::Generator& gen, const Vec3& p,
                             const Vec2& s, const std::vector<double>& scales, int pyramid = 1,
                             const QuadratureConfig& q = QuadratureConfig::defaults_3d());
DecayProfile needle_profile(const regions::Region3D& region, const generators::Generator& gen, const Vec3& p,
                            const Vec2& s, double beta, const std::vector<double>& scales,
                            const QuadratureConfig& q = QuadratureConfig::defaults_3d());

}  // namespace shearlet::transform3d
