#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace shearlet {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

// Invalid input: bad parameters, malformed configuration, unknown variants.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation ran but could not deliver a trustworthy number.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergenceError : public NumericalError {
public:
    NonConvergenceError(const std::string& what, double last, double previous)
        : NumericalError(what), last_(last), previous_(previous) {}
    double last() const noexcept { return last_; }
    double previous() const noexcept { return previous_; }

private:
    double last_;
    double previous_;
};

// Transverse quadrature control. The fine axis of the generator is integrated
// exactly; the remaining axes use composite 4-point Gauss-Legendre panels that
// are doubled until two successive estimates agree.
struct QuadratureConfig {
    double rtol = 1e-4;
    double atol_rel = 1e-6;  // absolute tolerance in units of ||psi||_1
    int min_panels = 16;
    int max_panels = 1024;
    int scan_points = 64;  // membership samples along the fine axis

    static QuadratureConfig defaults_2d() { return {}; }
    static QuadratureConfig defaults_3d() { return {1e-4, 1e-6, 8, 128, 40}; }
};

inline constexpr double pi = 3.14159265358979323846;

}  // namespace shearlet
