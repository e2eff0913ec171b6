#include "shearlet/classify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace shearlet::classify {

using generators::Generator;
using transform2d::Cone;

// ---------------------------------------------------------------- fits

ExponentFit fit_exponent(const std::vector<double>& a, const std::vector<double>& c, const FitOptions& opt) {
    if (a.size() != c.size()) throw ConfigError("scale and coefficient lists differ in length");
    ExponentFit f;
    f.nominal = opt.nominal;
    std::vector<double> xs, ys, lim;
    std::vector<double> signs;
    bool any_nonzero = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!std::isfinite(c[i])) continue;
        if (c[i] != 0.0) any_nonzero = true;
        if (std::abs(c[i]) / std::pow(a[i], opt.floor_exponent) < opt.zero_floor || c[i] == 0.0) continue;
        xs.push_back(std::log(a[i]));
        ys.push_back(std::log(std::abs(c[i])));
        lim.push_back(c[i] * std::pow(a[i], -opt.nominal));
    }
    f.used = static_cast<int>(xs.size());
    f.all_zero = f.used == 0;
    (void)any_nonzero;
    f.enough = f.used >= 4;
    if (!f.enough) {
        f.rapid = true;
        return f;
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (f.intercept + f.slope * xs[i]);
        ss_res += r * r;
    }
    f.r2 = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    f.rapid = f.slope >= opt.rapid_threshold;
    // scales are ordered coarse to fine: the finest half is the tail
    const std::size_t half = lim.size() / 2;
    double logsum = 0;
    int positive = 0;
    for (std::size_t i = half; i < lim.size(); ++i) {
        logsum += std::log(std::abs(lim[i]));
        positive += lim[i] > 0 ? 1 : -1;
    }
    const double mag = std::exp(logsum / static_cast<double>(lim.size() - half));
    const double sign = positive != 0 ? (positive > 0 ? 1.0 : -1.0) : (lim.back() > 0 ? 1.0 : -1.0);
    f.limit = sign * mag;
    f.monotone = true;
    for (std::size_t i = 1; i < ys.size(); ++i) f.monotone = f.monotone && ys[i] < ys[i - 1];
    return f;
}

namespace {
template <class Profile>
ExponentFit fit_profile(const Profile& p, const FitOptions& opt) {
    std::vector<double> a, c;
    for (const auto& e : p.entries)
        if (e.valid) a.push_back(e.a), c.push_back(e.value);
    return fit_exponent(a, c, opt);
}
}  // namespace

ExponentFit fit_exponent(const transform2d::DecayProfile& p, const FitOptions& opt) { return fit_profile(p, opt); }
ExponentFit fit_exponent(const transform3d::DecayProfile& p, const FitOptions& opt) { return fit_profile(p, opt); }

double extrapolated_limit(const std::vector<double>& a, const std::vector<double>& c, double nominal) {
    if (a.size() != c.size() || a.size() < 4) throw NumericalError("limit extrapolation needs at least 4 entries");
    Eigen::MatrixXd X(a.size(), 3);
    Eigen::VectorXd y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = std::sqrt(a[i]);
        X(i, 2) = a[i];
        y(i) = c[i] * std::pow(a[i], -nominal);
    }
    return X.colPivHouseholderQr().solve(y)(0);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::OffBoundary: return "OffBoundary";
        case Verdict::RegularNonAligned: return "RegularNonAligned";
        case Verdict::RegularAligned: return "RegularAligned";
        case Verdict::CornerFirstAligned: return "CornerFirstAligned";
        case Verdict::CornerFirstNonAligned: return "CornerFirstNonAligned";
        case Verdict::CornerSecond: return "CornerSecond";
        case Verdict::Surface3D: return "Surface3D";
        case Verdict::SeparatingCurve3D: return "SeparatingCurve3D";
        case Verdict::Corner3D: return "Corner3D";
        case Verdict::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

// ---------------------------------------------------------------- config

void ClassifierConfig::validate() const {
    auto check = [](const std::array<Band, 3>& b, const char* what) {
        for (int i = 0; i < 3; ++i) {
            if (!(b[i].halfwidth > 0.0)) throw ConfigError(std::string(what) + ": band halfwidths must be positive");
            if (i > 0 && !(b[i - 1].center + b[i - 1].halfwidth < b[i].center - b[i].halfwidth))
                throw ConfigError(std::string(what) + ": exponent bands must be ordered and disjoint");
        }
    };
    check(bands2d, "2D bands");
    check(bands3d, "3D bands");
    if (scales2d.size() < 4 || scales3d.size() < 4) throw ConfigError("scale ladders need at least 4 scales");
    if (shear_points < 3 || shear_points3d < 2) throw ConfigError("shear grids are too small");
    if (!(shear_max > 0.0) || !(shear_max3d > 0.0)) throw ConfigError("shear ranges must be positive");
    if (!(rapid2d > bands2d[2].center + bands2d[2].halfwidth) || !(rapid3d > bands3d[2].center + bands3d[2].halfwidth))
        throw ConfigError("rapid-decay threshold must lie above the last band");
}

double ClassifierConfig::zero_floor2d(const Generator& g) const { return zero_floor_factor * quad2d.atol_rel * g.l1_norm(); }
double ClassifierConfig::zero_floor3d(const Generator& g) const { return zero_floor_factor * quad3d.atol_rel * g.l1_norm(); }

// ---------------------------------------------------------------- orientations

Vec2 cell_normal(Cone cone, double s) {
    const Vec2 n = regions::shear_to_normal(s);
    return cone == Cone::Horizontal ? n : Vec2(n.y(), n.x());
}

Vec3 cell_normal3d(int pyramid, const Vec2& s) {
    return transform3d::cyclic_shift(-(pyramid - 1)) * regions::shear_to_normal(s);
}

namespace {

// angle between orientations (unit vectors up to sign)
double orientation_gap(const Vec2& u, const Vec2& v) { return std::acos(std::min(1.0, std::abs(u.dot(v)))); }
double orientation_gap(const Vec3& u, const Vec3& v) { return std::acos(std::min(1.0, std::abs(u.dot(v)))); }

// Greedy clustering of orientations in order of decreasing weight.
template <class V>
std::vector<V> cluster(std::vector<std::pair<double, V>> items, double sep) {
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<V> centers;
    for (const auto& [w, v] : items) {
        bool near = false;
        for (const V& c : centers) near = near || orientation_gap(c, v) <= sep;
        if (!near) centers.push_back(v);
    }
    return centers;
}

FitOptions options2d(const ClassifierConfig& cfg, const Generator& g) {
    return {cfg.bands2d[0].center, 0.75, cfg.zero_floor2d(g), cfg.rapid2d};
}

FitOptions options3d(const ClassifierConfig& cfg, const Generator& g, double nominal = 1.0) {
    return {nominal, 1.0, cfg.zero_floor3d(g), cfg.rapid3d};
}

struct WedgeRanges {
    double full_lo, full_hi, half_lo, half_hi;
};

WedgeRanges wedge_ranges(const Generator& g, double nu) {
    WedgeRanges r{1e300, -1e300, 1e300, -1e300};
    for (int i = 0; i <= 20; ++i) {
        const double k = -nu + 2.0 * nu * i / 20.0;
        const double f = generators::wedge_integral(g, k);
        r.full_lo = std::min(r.full_lo, f), r.full_hi = std::max(r.full_hi, f);
        for (auto h : {generators::WedgeHalf::Upper, generators::WedgeHalf::Lower}) {
            const double v = generators::wedge_integral(g, k, h);
            r.half_lo = std::min(r.half_lo, v), r.half_hi = std::max(r.half_hi, v);
        }
    }
    return r;
}

// Compares |limit| with full-wedge and half-wedge value ranges.
Verdict wedge_verdict(const Generator& g, double limit, double nu, std::string& note) {
    const WedgeRanges r = wedge_ranges(g, nu);
    const double L = std::abs(limit);
    const bool full = L >= r.full_lo && L <= r.full_hi;
    const bool half = L >= r.half_lo && L <= r.half_hi;
    note = "wedge check: |limit| " + std::to_string(L) + ", full [" + std::to_string(r.full_lo) + ", " +
           std::to_string(r.full_hi) + "], half [" + std::to_string(r.half_lo) + ", " + std::to_string(r.half_hi) + "]";
    if (full && !half) return Verdict::RegularAligned;
    if (half && !full) return Verdict::CornerFirstAligned;
    return Verdict::Indeterminate;
}

}  // namespace

namespace {

// Leading-order response: inside the first band, or below it. Since |c| <= a^w ||psi||_1
// for the leading exponent w, a fitted slope under the band can only be c / a^w still
// climbing toward a nonzero limit at the coarse end of the ladder.
bool leading_order(const Band& first, const ExponentFit& f) {
    return f.enough && !f.rapid && f.slope <= first.center + first.halfwidth;
}

}  // namespace

OrientationScan orientation_scan2d(const regions::Region2D& region, const Generator& gen, const Vec2& p,
                                   const ClassifierConfig& cfg) {
    cfg.validate();
    const FitOptions opt = options2d(cfg, gen);
    OrientationScan scan;
    for (Cone cone : {Cone::Horizontal, Cone::Vertical})
        for (int k = 0; k < cfg.shear_points; ++k) {
            ScanCell cell;
            cell.cone = cone;
            cell.s = -cfg.shear_max + 2.0 * cfg.shear_max * k / (cfg.shear_points - 1);
            const auto prof = transform2d::decay_profile2d(region, gen, p, transform2d::ShearPolicy::Fixed, cell.s,
                                                           cfg.scales2d, cone, cfg.quad2d);
            for (const auto& e : prof.entries)
                if (!e.valid) cell.valid = false, cell.error = e.error;
            cell.fit = fit_exponent(prof, opt);
            scan.cells.push_back(cell);
        }

    // best orientation: largest |limit| among cells with a usable fit
    const ScanCell* best = nullptr;
    for (const ScanCell& c : scan.cells)
        if (c.fit.enough && !c.fit.rapid && (!best || std::abs(c.fit.limit) > std::abs(best->fit.limit))) best = &c;
    if (!best) return scan;

    // aligned orientations and far first-type evidence
    std::vector<std::pair<double, Vec2>> aligned;
    for (const ScanCell& c : scan.cells)
        if (leading_order(cfg.bands2d[0], c.fit))
            aligned.emplace_back(std::abs(c.fit.limit), cell_normal(c.cone, c.s));
    const auto centers = cluster(aligned, cfg.cluster_separation);
    scan.aligned_clusters = static_cast<int>(centers.size());
    for (const ScanCell& c : scan.cells) {
        if (!c.fit.enough || !cfg.bands2d[1].contains(c.fit.slope)) continue;
        bool far = true;
        for (const Vec2& a : centers) far = far && orientation_gap(a, cell_normal(c.cone, c.s)) > cfg.cluster_separation;
        if (far) ++scan.far_first_type_cells;
    }

    scan.best_cone = best->cone;
    scan.refined_profile = transform2d::decay_profile2d(region, gen, p, transform2d::ShearPolicy::TrackOddNull,
                                                        best->s, cfg.scales2d, best->cone, cfg.quad2d);
    scan.refined = fit_exponent(scan.refined_profile, opt);
    double s_final = best->s;
    for (const auto& e : scan.refined_profile.entries)
        if (e.valid) s_final = e.s;
    scan.best_shear = s_final;
    return scan;
}

namespace {

Verdict band_verdict2d(const ClassifierConfig& cfg, const ExponentFit& f) {
    if (cfg.bands2d[1].contains(f.slope)) return Verdict::CornerFirstNonAligned;
    if (cfg.bands2d[2].contains(f.slope)) return Verdict::CornerSecond;
    return Verdict::Indeterminate;
}

std::string slope_text(const ExponentFit& f) {
    return std::isfinite(f.slope) ? std::to_string(f.slope) : std::string("n/a");
}

}  // namespace

PointClassification classify2d(const regions::Region2D& region, const Generator& gen, const Vec2& p,
                               const ClassifierConfig& cfg, std::optional<double> shear, Cone cone) {
    cfg.validate();
    PointClassification out;
    const FitOptions opt = options2d(cfg, gen);

    if (shear) {
        out.shear = *shear;
        out.cone = cone;
        out.normal2d = cell_normal(cone, *shear);
        const auto prof = transform2d::decay_profile2d(region, gen, p, transform2d::ShearPolicy::Fixed, *shear,
                                                       cfg.scales2d, cone, cfg.quad2d);
        out.fit = fit_exponent(prof, opt);
        out.exponents = {out.fit.slope};
        if (out.fit.rapid) {
            out.verdict = out.fit.all_zero ? Verdict::OffBoundary : Verdict::RegularNonAligned;
            out.diagnostics.push_back("rapid decay at the queried shear");
            return out;
        }
        if (cfg.bands2d[0].contains(out.fit.slope)) {
            std::string note;
            out.verdict = wedge_verdict(gen, out.fit.limit, cfg.curvature_nu, note);
            out.diagnostics.push_back(note);
            if (out.verdict == Verdict::Indeterminate) out.reason = "aligned response matches both wedge ranges";
            return out;
        }
        out.verdict = band_verdict2d(cfg, out.fit);
        if (out.verdict == Verdict::CornerSecond)
            out.diagnostics.push_back("a fixed non-aligned shear also yields this rate at regular points");
        if (out.verdict == Verdict::Indeterminate) out.reason = "exponent " + slope_text(out.fit) + " lies in no band";
        return out;
    }

    const OrientationScan scan = orientation_scan2d(region, gen, p, cfg);
    for (const ScanCell& c : scan.cells) out.exponents.push_back(c.fit.slope);
    bool all_zero = true;
    for (const ScanCell& c : scan.cells) all_zero = all_zero && c.fit.all_zero;
    if (!scan.best_shear) {
        out.verdict = Verdict::OffBoundary;
        out.diagnostics.push_back(all_zero ? "all orientations below the zero floor"
                                           : "all orientations decay rapidly");
        return out;
    }
    out.shear = scan.best_shear;
    out.cone = scan.best_cone;
    out.normal2d = cell_normal(scan.best_cone, *scan.best_shear);
    out.fit = scan.refined;
    out.diagnostics.push_back("aligned orientations: " + std::to_string(scan.aligned_clusters) +
                              ", far first-type cells: " + std::to_string(scan.far_first_type_cells));

    if (leading_order(cfg.bands2d[0], out.fit)) {
        std::string note;
        wedge_verdict(gen, out.fit.limit, cfg.curvature_nu, note);
        out.diagnostics.push_back(note);
        out.verdict = scan.aligned_clusters >= 2 || scan.far_first_type_cells >= 3 ? Verdict::CornerFirstAligned
                                                                                   : Verdict::RegularAligned;
        return out;
    }
    if (out.fit.rapid) {
        out.verdict = Verdict::OffBoundary;
        out.diagnostics.push_back("refined orientation decays rapidly");
        return out;
    }
    out.verdict = band_verdict2d(cfg, out.fit);
    if (out.verdict == Verdict::Indeterminate)
        out.reason = "refined exponent " + slope_text(out.fit) + " lies in no band";
    return out;
}

// ---------------------------------------------------------------- 3D

PointClassification classify3d(const regions::Region3D& region, const Generator& gen, const Vec3& p,
                               const ClassifierConfig& cfg, std::optional<Vec2> shear, int pyramid) {
    cfg.validate();
    PointClassification out;
    const FitOptions opt = options3d(cfg, gen);
    auto band_verdict = [&](const ExponentFit& f) {
        if (cfg.bands3d[0].contains(f.slope)) return Verdict::Surface3D;
        if (cfg.bands3d[1].contains(f.slope)) return Verdict::SeparatingCurve3D;
        if (cfg.bands3d[2].contains(f.slope)) return Verdict::Corner3D;
        return Verdict::Indeterminate;
    };

    if (shear) {
        out.shear3d = *shear;
        out.pyramid = pyramid;
        out.normal3d = cell_normal3d(pyramid, *shear);
        const auto prof = transform3d::decay_profile3d(region, gen, p, *shear, cfg.scales3d, pyramid, cfg.quad3d);
        out.fit = fit_exponent(prof, opt);
        out.exponents = {out.fit.slope};
        if (out.fit.rapid) {
            out.verdict = out.fit.all_zero ? Verdict::OffBoundary : Verdict::RegularNonAligned;
            return out;
        }
        out.verdict = band_verdict(out.fit);
        if (out.verdict == Verdict::Indeterminate)
            out.reason = out.fit.slope < cfg.bands3d[0].center
                             ? "exponent " + slope_text(out.fit) + " below every band: leading-order response not yet settled"
                             : "exponent " + slope_text(out.fit) + " lies in no band";
        return out;
    }

    // Scan all pyramids; count distinct normal orientations with a band-1 response.
    struct Cell3 {
        int d;
        Vec2 s;
        ExponentFit fit;
    };
    std::vector<Cell3> cells;
    const int m = cfg.shear_points3d;
    for (int d = 1; d <= 3; ++d)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const Vec2 s(-cfg.shear_max3d + 2.0 * cfg.shear_max3d * i / (m - 1),
                             -cfg.shear_max3d + 2.0 * cfg.shear_max3d * j / (m - 1));
                const auto prof = transform3d::decay_profile3d(region, gen, p, s, cfg.scales3d, d, cfg.quad3d);
                cells.push_back({d, s, fit_exponent(prof, opt)});
                out.exponents.push_back(cells.back().fit.slope);
            }
    std::vector<std::pair<double, Vec3>> aligned;
    const Cell3* best = nullptr;
    bool all_zero = true;
    for (const Cell3& c : cells) {
        all_zero = all_zero && c.fit.all_zero;
        if (!c.fit.enough || c.fit.rapid) continue;
        if (leading_order(cfg.bands3d[0], c.fit)) aligned.emplace_back(std::abs(c.fit.limit), cell_normal3d(c.d, c.s));
        if (!best || std::abs(c.fit.limit) > std::abs(best->fit.limit)) best = &c;
    }
    if (!best) {
        out.verdict = Verdict::OffBoundary;
        out.diagnostics.push_back(all_zero ? "all orientations below the zero floor" : "all orientations decay rapidly");
        return out;
    }
    out.shear3d = best->s;
    out.pyramid = best->d;
    out.normal3d = cell_normal3d(best->d, best->s);
    out.fit = best->fit;
    const auto centers = cluster(aligned, cfg.cluster_separation);
    out.diagnostics.push_back("aligned orientations: " + std::to_string(centers.size()));
    if (centers.size() >= 3) out.verdict = Verdict::Corner3D;
    else if (centers.size() == 2) out.verdict = Verdict::SeparatingCurve3D;
    else if (centers.size() == 1) out.verdict = Verdict::Surface3D;
    else {
        out.verdict = band_verdict(best->fit);
        if (out.verdict == Verdict::Indeterminate) out.reason = "no orientation reaches a decay band";
    }
    return out;
}

// ---------------------------------------------------------------- curvature

CurvatureEstimate estimate_curvature2d(const regions::Region2D& region, const Generator& gen, const Vec2& p,
                                       double shear, const generators::WedgeTable& table, Cone cone,
                                       const std::vector<double>& scales, const QuadratureConfig& q) {
    CurvatureEstimate est;
    est.profile = transform2d::decay_profile2d(region, gen, p, transform2d::ShearPolicy::TrackOddNull, shear, scales,
                                               cone, q);
    std::vector<double> a, c;
    for (const auto& e : est.profile.entries)
        if (e.valid) a.push_back(e.a), c.push_back(e.value), est.shear = e.s;
    est.limit = extrapolated_limit(a, c, 0.75);
    const double sigma = est.limit >= 0.0 ? 1.0 : -1.0;
    est.wedge_parameter = table.invert(std::abs(est.limit));
    const double slope = std::abs(table.slope(est.wedge_parameter));
    if (!(slope > 1e-3 * std::abs(est.limit))) throw NumericalError("wedge integral is flat at the preimage; curvature is ill-conditioned");
    const double s = est.shear;
    est.curvature = -sigma * 2.0 * est.wedge_parameter / std::pow(1.0 + s * s, 1.5);
    return est;
}

Vec3 needle_direction(const Vec2& shear, double beta) {
    const Vec2 w(std::sin(beta), std::cos(beta));
    return Vec3(shear.dot(w), w.x(), w.y()).normalized();
}

DirectionalCurvature directional_curvature3d(const regions::Region3D& region, const Generator& gen, const Vec3& p,
                                             const Vec2& shear, double beta, const generators::WedgeTable& needle_table,
                                             const std::vector<double>& scales, const QuadratureConfig& q) {
    DirectionalCurvature out;
    out.profile = transform3d::needle_profile(region, gen, p, shear, beta, scales, q);
    std::vector<double> a, c;
    for (const auto& e : out.profile.entries)
        if (e.valid) a.push_back(e.a), c.push_back(e.value);
    out.limit = extrapolated_limit(a, c, 1.25);
    const double sigma = out.limit >= 0.0 ? 1.0 : -1.0;
    out.wedge_parameter = needle_table.invert(std::abs(out.limit));
    const double slope = std::abs(needle_table.slope(out.wedge_parameter));
    if (!(slope > 1e-3 * std::abs(out.limit))) throw NumericalError("needle wedge integral is flat at the preimage");
    const Vec2 w(std::sin(beta), std::cos(beta));
    const double v2 = std::pow(shear.dot(w), 2) + 1.0;
    const double n1 = 1.0 / std::sqrt(1.0 + shear.squaredNorm());
    out.curvature = -sigma * 2.0 * out.wedge_parameter * n1 / v2;
    return out;
}

}  // namespace shearlet::classify
