#include "shearlet/transform2d.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "line_quadrature.hpp"

namespace shearlet::transform2d {

using generators::Bump1D;
using generators::Generator;
using generators::Wavelet1D;
using regions::Region2D;

Mat2 frame_matrix(double a, double s, Cone cone) {
    if (!(a > 0.0)) throw ConfigError("scale must be positive");
    const double ra = std::sqrt(a);
    Mat2 B;
    B << a, s * ra, 0.0, ra;
    if (cone == Cone::Vertical) B.row(0).swap(B.row(1));
    return B;
}

double frame_integral2d(const Region2D& region, const Wavelet1D& wavelet, const Bump1D& bump, const Mat2& B,
                        const Vec2& p, const QuadratureConfig& q, double atol, int* panels) {
    const Vec2 dir = B.col(0);
    const Vec2 across = B.col(1);
    auto inside = [&](const Vec2& x) { return region.contains(x); };
    auto J = [&](double t) { return detail::line_integral(inside, Vec2(p + t * across), dir, wavelet, q.scan_points); };
    const auto r = detail::transverse1d([&](double t) { return bump(t); }, J, bump.radius(), q, atol);
    if (!r.converged)
        throw NonConvergenceError("2D coefficient quadrature did not converge within the panel cap", r.value,
                                  r.previous);
    if (panels) *panels = r.panels;
    return r.value;
}

Coefficient coefficient2d(const Region2D& region, const Generator& gen, const Index& idx, const QuadratureConfig& q) {
    if (gen.dimension != 2) throw ConfigError("coefficient2d needs a 2D generator");
    const Mat2 B = frame_matrix(idx.a, idx.s, idx.cone);
    const double atol = q.atol_rel * gen.l1_norm();
    const double pref = std::pow(idx.a, 0.75);
    Coefficient c;
    try {
        c.value = pref * frame_integral2d(region, gen.wavelet, gen.bump, B, idx.p, q, atol, &c.panels);
    } catch (const NonConvergenceError& e) {
        throw NonConvergenceError(e.what(), pref * e.last(), pref * e.previous());
    }
    return c;
}

double odd_response(const Region2D& region, const Generator& gen, const Index& idx, const QuadratureConfig& q) {
    const Mat2 B = frame_matrix(idx.a, idx.s, idx.cone);
    const double atol = q.atol_rel * gen.l1_norm();
    return std::pow(idx.a, 0.75) * frame_integral2d(region, gen.wavelet, gen.bump.odd_part(), B, idx.p, q, atol);
}

std::vector<double> dyadic_scales(int j0, int j1) {
    if (j1 < j0) throw ConfigError("scale ladder must run from coarse to fine");
    std::vector<double> a;
    for (int j = j0; j <= j1; ++j) a.push_back(std::ldexp(1.0, -j));
    return a;
}

std::optional<double> track_odd_null(const Region2D& region, const Generator& gen, double a, const Vec2& p,
                                     double s_guess, Cone cone, const QuadratureConfig& q, double max_span) {
    const Bump1D odd = gen.bump.odd_part();
    const double atol = q.atol_rel * gen.l1_norm();
    auto D = [&](double s) {
        return frame_integral2d(region, gen.wavelet, odd, frame_matrix(a, s, cone), p, q, atol);
    };
    const double d0 = D(s_guess);
    if (d0 == 0.0) return s_guess;
    const double tol = 1e-3 * a;
    auto solve = [&](double l, double fl, double h, double fh) {
        std::uintmax_t iters = 40;
        auto stop = [&](double x, double y) { return std::abs(x - y) <= tol; };
        auto [x, y] = boost::math::tools::toms748_solve(D, l, h, fl, fh, stop, iters);
        return 0.5 * (x + y);
    };
    for (double half = 2.0 * a; half <= max_span * (1.0 + 1e-12); half *= 2.0) {
        const double dl = D(s_guess - half), dh = D(s_guess + half);
        const bool left = (dl < 0.0) != (d0 < 0.0), right = (dh < 0.0) != (d0 < 0.0);
        if (left && right) {
            const double rl = solve(s_guess - half, dl, s_guess, d0);
            const double rr = solve(s_guess, d0, s_guess + half, dh);
            return std::abs(rl - s_guess) <= std::abs(rr - s_guess) ? rl : rr;
        }
        if (left) return solve(s_guess - half, dl, s_guess, d0);
        if (right) return solve(s_guess, d0, s_guess + half, dh);
        if (half * 2.0 > max_span && half < max_span) half = max_span / 2.0;
    }
    return std::nullopt;
}

DecayProfile decay_profile2d(const Region2D& region, const Generator& gen, const Vec2& p, ShearPolicy policy,
                             double s0, const std::vector<double>& scales, Cone cone, const QuadratureConfig& q) {
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0)) throw ConfigError("scales must be positive");
        if (i > 0 && !(scales[i] < scales[i - 1])) throw ConfigError("scales must be strictly decreasing");
    }
    DecayProfile prof{p, cone, policy, s0, q, {}};
    double s_prev = s0;
    for (double a : scales) {
        ProfileEntry e;
        e.a = a;
        try {
            double s = s_prev;
            if (policy == ShearPolicy::TrackOddNull) {
                if (auto r = track_odd_null(region, gen, a, p, s_prev, cone, q)) s = *r;
                else policy = ShearPolicy::TrackMax;  // no smooth alignment here: fall back for good
            }
            if (policy == ShearPolicy::TrackMax) {
                double best = -1.0;
                for (int k = -2; k <= 2; ++k) {
                    const double sk = s_prev + 0.5 * k * a;
                    const Coefficient c = coefficient2d(region, gen, {a, sk, p, cone}, q);
                    if (std::abs(c.value) > best) best = std::abs(c.value), s = sk, e.value = c.value, e.panels = c.panels;
                }
            } else {
                const Coefficient c = coefficient2d(region, gen, {a, s, p, cone}, q);
                e.value = c.value;
                e.panels = c.panels;
            }
            e.s = s;
            e.valid = true;
            if (policy != ShearPolicy::Fixed) s_prev = s;
        } catch (const NumericalError& err) {
            e.s = s_prev;
            e.error = err.what();
        }
        prof.entries.push_back(e);
    }
    return prof;
}

}  // namespace shearlet::transform2d
