#include "shearlet/transform3d.hpp"

#include <Eigen/LU>
#include <cmath>

#include "line_quadrature.hpp"

namespace shearlet::transform3d {

using generators::Generator;
using regions::Region3D;

Mat3 cyclic_shift(int power) {
    Mat3 R;
    R << 0, 1, 0, 0, 0, 1, 1, 0, 0;
    Mat3 out = Mat3::Identity();
    for (int k = 0; k < ((power % 3) + 3) % 3; ++k) out = R * out;
    return out;
}

Mat3 pyramid_matrix(double a, const Vec2& s, int pyramid) {
    if (!(a > 0.0)) throw ConfigError("scale must be positive");
    if (pyramid < 1 || pyramid > 3) throw ConfigError("pyramid index must be 1, 2 or 3");
    const double ra = std::sqrt(a);
    Mat3 M;
    M << a, ra * s.x(), ra * s.y(), 0, ra, 0, 0, 0, ra;
    return cyclic_shift(-(pyramid - 1)) * M;
}

Mat3 needle_matrix(double a, const Vec2& s, double beta) {
    if (!(a > 0.0)) throw ConfigError("scale must be positive");
    const double c = std::cos(beta), sn = std::sin(beta), ia = 1.0 / a, ira = 1.0 / std::sqrt(a);
    Mat3 M;
    M << ia, -ia * s.x(), -ia * s.y(),  //
        0, ia * c, -ia * sn,            //
        0, ira * sn, ira * c;
    return M;
}

double frame_integral3d(const Region3D& region, const Generator& gen, const Mat3& B, const Vec3& p,
                        const QuadratureConfig& q, double atol, int* panels) {
    if (gen.dimension != 3) throw ConfigError("3D transforms need a 3D generator");
    const Vec3 dir = B.col(0), c2 = B.col(1), c3 = B.col(2);
    auto inside = [&](const Vec3& x) { return region.contains(x); };
    auto J = [&](double t2, double t3) {
        return detail::line_integral(inside, Vec3(p + t2 * c2 + t3 * c3), dir, gen.wavelet, q.scan_points);
    };
    auto weight = [&](double t2, double t3) { return gen.bump(t2) * gen.bump(t3); };
    const auto r = detail::transverse2d(weight, J, gen.bump.radius(), q, atol);
    if (!r.converged)
        throw NonConvergenceError("3D coefficient quadrature did not converge within the panel cap", r.value,
                                  r.previous);
    if (panels) *panels = r.panels;
    return r.value;
}

namespace {
Coefficient scaled_integral(const Region3D& region, const Generator& gen, const Mat3& B, const Vec3& p,
                            const QuadratureConfig& q, double pref) {
    const double atol = q.atol_rel * gen.l1_norm();
    Coefficient c;
    try {
        c.value = pref * frame_integral3d(region, gen, B, p, q, atol, &c.panels);
    } catch (const NonConvergenceError& e) {
        throw NonConvergenceError(e.what(), pref * e.last(), pref * e.previous());
    }
    return c;
}
}  // namespace

Coefficient coefficient3d(const Region3D& region, const Generator& gen, const Index& idx, const QuadratureConfig& q) {
    return scaled_integral(region, gen, pyramid_matrix(idx.a, idx.s, idx.pyramid), idx.p, q, idx.a);
}

Coefficient needle_coefficient(const Region3D& region, const Generator& gen, const NeedleIndex& idx,
                               const QuadratureConfig& q) {
    const Mat3 B = needle_matrix(idx.a, idx.s, idx.beta).inverse();
    return scaled_integral(region, gen, B, idx.p, q, std::pow(idx.a, 1.25));
}

namespace {
template <class Eval>
DecayProfile fill(DecayProfile prof, const std::vector<double>& scales, Eval&& eval) {
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0)) throw ConfigError("scales must be positive");
        if (i > 0 && !(scales[i] < scales[i - 1])) throw ConfigError("scales must be strictly decreasing");
    }
    for (double a : scales) {
        ProfileEntry e;
        e.a = a;
        try {
            const Coefficient c = eval(a);
            e.value = c.value;
            e.panels = c.panels;
            e.valid = true;
        } catch (const NumericalError& err) {
            e.error = err.what();
        }
        prof.entries.push_back(e);
    }
    return prof;
}
}  // namespace

DecayProfile decay_profile3d(const Region3D& region, const Generator& gen, const Vec3& p, const Vec2& s,
                             const std::vector<double>& scales, int pyramid, const QuadratureConfig& q) {
    DecayProfile prof{p, s, pyramid, false, 0.0, q, {}};
    return fill(std::move(prof), scales, [&](double a) { return coefficient3d(region, gen, {a, s, p, pyramid}, q); });
}

DecayProfile needle_profile(const Region3D& region, const Generator& gen, const Vec3& p, const Vec2& s, double beta,
                            const std::vector<double>& scales, const QuadratureConfig& q) {
    DecayProfile prof{p, s, 1, true, beta, q, {}};
    return fill(std::move(prof), scales,
                [&](double a) { return needle_coefficient(region, gen, {a, s, p, beta}, q); });
}

}  // namespace shearlet::transform3d
