#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shearlet/common.hpp"
#include "shearlet/generators.hpp"
#include "shearlet/regions.hpp"

namespace shearlet::transform2d {

// Horizontal cone uses psi; vertical cone uses psi with the two coordinates exchanged.
enum class Cone { Horizontal, Vertical };

struct Index {
    double a = 1.0;
    double s = 0.0;
    Vec2 p{0, 0};
    Cone cone = Cone::Horizontal;
};

struct Coefficient {
    double value = 0;
    int panels = 0;  // transverse panel count at convergence
};

// <chi_S, psi_{a,s,p}> = a^{3/4} int chi_S(S_s A_a y + p) psi(y) dy.
// Throws NonConvergenceError (carrying the last two estimates) when the panel cap is hit.
Coefficient coefficient2d(const regions::Region2D& region, const generators::Generator& gen, const Index& idx,
                          const QuadratureConfig& q = QuadratureConfig::defaults_2d());
inline double coeff2d(const regions::Region2D& region, const generators::Generator& gen, const Index& idx,
                      const QuadratureConfig& q = QuadratureConfig::defaults_2d()) {
    return coefficient2d(region, gen, idx, q).value;
}

// Generator-frame integral int chi(B y + p) psi(y) dy for an arbitrary linear frame B;
// the transverse factor can be replaced (alignment tracking uses the odd part of phi).
double frame_integral2d(const regions::Region2D& region, const generators::Wavelet1D& wavelet,
                        const generators::Bump1D& bump, const Mat2& B, const Vec2& p, const QuadratureConfig& q,
                        double atol, int* panels = nullptr);

// Frame matrix B with x = B y + p for the given cone.
Mat2 frame_matrix(double a, double s, Cone cone);

// Response of the odd part of phi at (a, s): vanishes when the element is aligned
// with a smooth boundary through p.
double odd_response(const regions::Region2D& region, const generators::Generator& gen, const Index& idx,
                    const QuadratureConfig& q = QuadratureConfig::defaults_2d());

enum class ShearPolicy { Fixed, TrackOddNull, TrackMax };

struct ProfileEntry {
    double a = 0;
    double s = 0;
    double value = 0;
    bool valid = false;
    int panels = 0;
    std::string error;
};

struct DecayProfile {
    Vec2 point{0, 0};
    Cone cone = Cone::Horizontal;
    ShearPolicy policy = ShearPolicy::Fixed;
    double initial_shear = 0;
    QuadratureConfig quadrature;
    std::vector<ProfileEntry> entries;  // strictly decreasing scales
};

// a = 2^-j for j = j0..j1
std::vector<double> dyadic_scales(int j0, int j1);

// One coefficient per scale. Tracking re-centres s at every scale: TrackOddNull
// follows the zero of odd_response (bracketed around the previous shear),
// TrackMax keeps the largest |coefficient| among 5 shears in s_prev +- a.
DecayProfile decay_profile2d(const regions::Region2D& region, const generators::Generator& gen, const Vec2& p,
                             ShearPolicy policy, double s0, const std::vector<double>& scales, Cone cone = Cone::Horizontal,
                             const QuadratureConfig& q = QuadratureConfig::defaults_2d());

// Closest shear to s_guess (within +-max_span) where odd_response changes sign; empty if none.
std::optional<double> track_odd_null(const regions::Region2D& region, const generators::Generator& gen, double a,
                                     const Vec2& p, double s_guess, Cone cone, const QuadratureConfig& q,
                                     double max_span = 0.5);

}  // namespace shearlet::transform2d
