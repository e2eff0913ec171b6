#pragma once

#include <array>
#include <complex>
#include <vector>

#include "shearlet/common.hpp"
#include "shearlet/polynomial.hpp"

namespace shearlet::generators {

// Compactly supported wavelet psi1(x) = U'((x - shift)/width) / width, described
// by its profile psi = U' in a unit variable. The primitive Psi(x) = U((x - shift)/width)
// vanishes left of the support, which makes line integrals of psi1 exact.
class Wavelet1D {
public:
    Wavelet1D() = default;
    // profile: the wavelet in its unit variable; must be continuous with zero mean.
    Wavelet1D(PiecewisePolynomial profile, double width = 1.0, double shift = 0.0);

    double operator()(double x) const { return profile_((x - shift_) / width_) / width_; }
    double primitive(double x) const { return primitive_((x - shift_) / width_); }
    double lo() const { return shift_ + width_ * profile_.lo(); }
    double hi() const { return shift_ + width_ * profile_.hi(); }
    double width() const { return width_; }
    double shift() const { return shift_; }
    int vanishing_moments() const { return vanishing_; }
    const PiecewisePolynomial& profile() const { return profile_; }
    // int P(u) u^j du for j < 32, with the vanishing ones set to exactly zero
    const std::vector<double>& unit_moments() const { return unit_moments_; }

    Wavelet1D shifted(double dt) const { return Wavelet1D(profile_, width_, shift_ + dt); }
    Wavelet1D scaled(double k) const { return Wavelet1D(profile_.scaled(k), width_, shift_); }
    // Exact int psi1(x) x^j dx over [a, b].
    double moment(int j, double a, double b) const;
    double l1_norm() const { return profile_.l1_norm(); }
    double l2_norm_squared() const { return profile_.l2_norm_squared() / width_; }

private:
    PiecewisePolynomial profile_;
    PiecewisePolynomial primitive_;
    std::vector<double> unit_moments_;
    double width_ = 1.0;
    double shift_ = 0.0;
    int vanishing_ = 0;
};

// C^2 bump phi(x) = P(x / radius) with P supported in [-1, 1].
class Bump1D {
public:
    Bump1D() = default;
    Bump1D(PiecewisePolynomial unit_profile, double radius);

    double operator()(double x) const { return profile_(x / radius_); }
    double radius() const { return radius_; }
    double value_at_zero() const { return profile_(0.0); }
    double slope_at_zero() const { return profile_.derivative()(0.0) / radius_; }
    double integral() const { return radius_ * profile_.integral(); }
    double integral(double a, double b) const { return radius_ * profile_.integral(a / radius_, b / radius_); }
    double l1_norm() const { return radius_ * profile_.l1_norm(); }
    double l2_norm_squared() const { return radius_ * profile_.l2_norm_squared(); }
    const PiecewisePolynomial& profile() const { return profile_; }
    Bump1D scaled(double k) const { return Bump1D(profile_.scaled(k), radius_); }
    // Odd part (phi(x) - phi(-x)) / 2; used by the alignment tracker.
    Bump1D odd_part() const;
    // phi(0) = 0, phi'(0) != 0, integral > 0
    bool is_detector_bump() const;

private:
    PiecewisePolynomial profile_;
    double radius_ = 1.0;
};

// Separable generator psi(y) = psi1(y1) phi(y2) [phi(y3)].
struct Generator {
    int dimension = 2;
    Wavelet1D wavelet;
    Bump1D bump;

    double operator()(const Vec2& y) const { return wavelet(y.x()) * bump(y.y()); }
    double operator()(const Vec3& y) const { return wavelet(y.x()) * bump(y.y()) * bump(y.z()); }
    // support box [lo, hi] per axis
    std::pair<double, double> fine_range() const { return {wavelet.lo(), wavelet.hi()}; }
    double l1_norm() const;
    double l2_norm() const;
    Generator with_bump(Bump1D b) const { return {dimension, wavelet, std::move(b)}; }
    Generator scaled(double k) const { return {dimension, wavelet.scaled(k), bump}; }
};

// Profile of theta' with theta(x) = (1 - x^2)^4 on [-1, 1].
PiecewisePolynomial theta_derivative_profile();
// Profile of (theta(u) - theta(u - 2))': two vanishing moments, support [-1, 3].
PiecewisePolynomial paired_theta_profile();
// front(u) (1 - u^2)^3 on [-1, 1]
PiecewisePolynomial bump_profile(const Polynomial& front);

struct DefaultParameters {
    double size = 0.125;      // generator size lambda: fine width lambda^2, bump radius ~ lambda
    double radius_factor = 0.474;
    double asymmetry = 0.7;   // g in (1 + g x/r)(1 - (x/r)^2)^3
    double shift_factor = -0.5;  // wavelet shift in units of the fine width
};

Generator default_2d(const DefaultParameters& p = {});
Generator default_3d(const DefaultParameters& p = {});
// psi1 = theta', phi(x) = (x + beta x^2)(r^2 - x^2)^3: phi(0) = 0, phi'(0) = r^6.
Generator detector_2d(double beta = 1.0, double radius = 1.0);

// ---------------------------------------------------------------- detector conditions

// S_j(t) = int_{(-inf, 0]} psi1(x - t) x^j dx, j = 0..3.
std::array<double, 4> partial_moments(const Wavelet1D& w, double t);

struct ShiftSearch {
    double margin_factor = 0.5;  // scan support widened by this fraction on both sides
    int grid = 400;
    double threshold_rel = 1e-3;  // epsilon_mom on the margin scale below
};

// min over j in {0, 2, 3} of |S_j(t)| / (||psi1||_1 width^j): dilation invariant
double detector_margin(const Wavelet1D& w, double t);
// Shift t maximizing the detector margin; throws NumericalError when even the best
// t stays below threshold_rel.
double find_detector_shift(const Wavelet1D& w, const ShiftSearch& cfg = {});

// ---------------------------------------------------------------- wedge integrals

// G(k) = int over {y1 <= k y2^2} of psi (2D); the transverse range can be cut to
// y2 >= 0 (upper half-wedge) or y2 <= 0 (lower).
enum class WedgeHalf { Full, Upper, Lower };
double wedge_integral(const Generator& g, double kappa, WedgeHalf half = WedgeHalf::Full);
// 3D: int over {y1 <= z^T Q z} of psi with z = (y2, y3); the optional split keeps
// z . split_normal >= 0.
double wedge_integral3d(const Generator& g, const Mat2& Q, const Eigen::Vector2d* split_normal = nullptr);
// Needle wedge {y1 <= k y3^2}: (int phi) * int phi(z) Psi(k z^2) dz.
double needle_wedge_integral(const Generator& g, double kappa);

// Tabulated G on a certified curvature interval [-nu, nu]; inversion solves G(k) = L
// with the exact integral, bracketed by the table.
class WedgeTable {
public:
    enum class Kind { Planar, Needle };
    WedgeTable(const Generator& g, double nu = 2.0, int grid = 81, Kind kind = Kind::Planar);

    double operator()(double kappa) const;  // throws ConfigError outside [-nu, nu]
    double nu() const { return nu_; }
    bool monotone() const { return monotone_; }
    double lower_bound() const { return lower_bound_; }  // min |G| over the grid
    const std::vector<double>& kappas() const { return k_; }
    const std::vector<double>& values() const { return v_; }
    // Preimage of L; throws NumericalError when L is outside the table range or the
    // table is not monotone.
    double invert(double L) const;
    // |dG/dk| at k by central difference
    double slope(double kappa) const;

private:
    double eval(double kappa) const;
    Generator gen_;
    Kind kind_;
    double nu_;
    std::vector<double> k_, v_;
    bool monotone_ = false;
    double lower_bound_ = 0;
};

// ---------------------------------------------------------------- Fourier side

// int f(x) exp(-2 pi i x xi) dx, piece by piece: Gauss-Legendre at low frequency,
// closed form (integration by parts) otherwise.
std::complex<double> fourier_factor(const Wavelet1D& w, double xi);
std::complex<double> fourier_factor(const Bump1D& b, double xi);

// a^{-3/4} psi(A_a^{-1} S_s^{-1} (x - p)) with A_a = diag(a, sqrt a), S_s = [[1, s], [0, 1]]
double element2d(const Generator& g, double a, double s, const Vec2& p, const Vec2& x);

}  // namespace shearlet::generators
