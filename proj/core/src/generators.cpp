#include "shearlet/generators.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

namespace shearlet::generators {

namespace {

using boost::math::quadrature::gauss;

const Polynomial* piece_at(const PiecewisePolynomial& f, double x) {
    for (const Piece& p : f.pieces())
        if (x >= p.lo && x <= p.hi) return &p.poly;
    return nullptr;
}

// int over u in [ul, uh] of profile(u) * (c + w u)^j du, exact.
double affine_moment(const PiecewisePolynomial& profile, int j, double c, double w, double ul, double uh) {
    const Polynomial lin = Polynomial({c, w}).pow(j);
    double acc = 0.0;
    for (const Piece& p : profile.pieces()) {
        const double l = std::max(ul, p.lo), h = std::min(uh, p.hi);
        if (h <= l) continue;
        const Polynomial prim = (p.poly * lin).antiderivative();
        acc += prim(h) - prim(l);
    }
    return acc;
}

// Continuity of the k-th derivative across breakpoints and at both ends.
bool continuous(const PiecewisePolynomial& f, int order, double tol) {
    PiecewisePolynomial d = f;
    for (int k = 0; k <= order; ++k) {
        const auto pieces = d.pieces();
        if (std::abs(pieces.front().poly(pieces.front().lo)) > tol) return false;
        if (std::abs(pieces.back().poly(pieces.back().hi)) > tol) return false;
        for (std::size_t i = 1; i < pieces.size(); ++i) {
            const double left = pieces[i - 1].poly(pieces[i - 1].hi);
            const double right = pieces[i].poly(pieces[i].lo);
            const bool gap = pieces[i - 1].hi < pieces[i].lo;
            if (gap ? std::max(std::abs(left), std::abs(right)) > tol : std::abs(left - right) > tol) return false;
        }
        if (k < order) d = d.derivative();
    }
    return true;
}

double max_abs_sample(const PiecewisePolynomial& f) {
    double m = 0.0;
    for (const Piece& p : f.pieces())
        for (int k = 0; k <= 64; ++k) m = std::max(m, std::abs(p.poly(p.lo + (p.hi - p.lo) * k / 64.0)));
    return m;
}

// Gauss-Legendre over [l, h] split into n equal panels.
template <class F>
double panels(F&& f, double l, double h, int n) {
    if (!(h > l)) return 0.0;
    const double w = (h - l) / n;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += gauss<double, 10>::integrate(f, l + k * w, l + (k + 1) * w);
    return acc;
}

// Fine-axis breakpoints of the wavelet primitive in the physical variable.
std::vector<double> wavelet_breaks(const Wavelet1D& w) {
    std::vector<double> b;
    for (double u : w.profile().breakpoints()) b.push_back(w.shift() + w.width() * u);
    return b;
}

// int over z in [zl, zh] of weight(z) Psi(k z^2), with Gauss panels split where
// k z^2 crosses a wavelet breakpoint.
template <class Weight>
double parabola_line(const Wavelet1D& w, Weight&& weight, double kappa, double zl, double zh) {
    std::vector<double> cuts{zl, zh};
    if (kappa != 0.0)
        for (double b : wavelet_breaks(w)) {
            const double q = b / kappa;
            if (q <= 0.0) continue;
            for (double z : {std::sqrt(q), -std::sqrt(q)})
                if (z > zl && z < zh) cuts.push_back(z);
        }
    std::sort(cuts.begin(), cuts.end());
    auto f = [&](double z) { return weight(z) * w.primitive(kappa * z * z); };
    double acc = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i) acc += panels(f, cuts[i - 1], cuts[i], 8);
    return acc;
}

}  // namespace

// ---------------------------------------------------------------- Wavelet1D

Wavelet1D::Wavelet1D(PiecewisePolynomial profile, double width, double shift)
    : profile_(std::move(profile)), width_(width), shift_(shift) {
    if (profile_.empty()) throw ConfigError("wavelet profile is empty");
    if (!(width_ > 0.0)) throw ConfigError("wavelet width must be positive");
    if (!continuous(profile_, 0, 1e-9 * std::max(1.0, max_abs_sample(profile_))))
        throw ConfigError("wavelet must be continuous and vanish at the ends of its support");
    primitive_ = profile_.antiderivative();
    const double l1 = profile_.l1_norm();
    const double reach = std::max(std::abs(profile_.lo()), std::abs(profile_.hi()));
    vanishing_ = 0;
    while (vanishing_ < 8) {
        const double m = profile_.moment(vanishing_);
        if (std::abs(m) > 1e-10 * l1 * std::pow(std::max(1.0, reach), vanishing_)) break;
        ++vanishing_;
    }
    // unit-variable moments for the low-frequency Taylor series of the transform
    unit_moments_.assign(32, 0.0);
    for (int j = vanishing_; j < 32; ++j) unit_moments_[j] = profile_.moment(j);
}

double Wavelet1D::moment(int j, double a, double b) const {
    return affine_moment(profile_, j, shift_, width_, (a - shift_) / width_, (b - shift_) / width_);
}

// ---------------------------------------------------------------- Bump1D

Bump1D::Bump1D(PiecewisePolynomial unit_profile, double radius) : profile_(std::move(unit_profile)), radius_(radius) {
    if (profile_.empty()) throw ConfigError("bump profile is empty");
    if (!(radius_ > 0.0)) throw ConfigError("bump radius must be positive");
    if (profile_.lo() < -1.0 - 1e-12 || profile_.hi() > 1.0 + 1e-12)
        throw ConfigError("bump profile must be supported in [-1, 1]");
    if (!continuous(profile_, 2, 1e-8 * std::max(1.0, max_abs_sample(profile_))))
        throw ConfigError("bump must be twice continuously differentiable");
}

Bump1D Bump1D::odd_part() const {
    std::vector<double> cuts;
    for (double b : profile_.breakpoints()) cuts.push_back(b), cuts.push_back(-b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Piece> out;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const double m = 0.5 * (cuts[i - 1] + cuts[i]);
        Polynomial acc;
        if (const Polynomial* p = piece_at(profile_, m)) acc = acc + 0.5 * *p;
        if (const Polynomial* q = piece_at(profile_, -m)) acc = acc - 0.5 * q->compose_affine(-1.0, 0.0);
        out.push_back({cuts[i - 1], cuts[i], acc});
    }
    return Bump1D(PiecewisePolynomial(std::move(out)), radius_);
}

bool Bump1D::is_detector_bump() const {
    const double scale = max_abs_sample(profile_);
    return std::abs(value_at_zero()) <= 1e-12 * scale && std::abs(slope_at_zero()) > 1e-12 * scale / radius_ &&
           integral() > 0.0;
}

// ---------------------------------------------------------------- Generator

double Generator::l1_norm() const {
    const double b = bump.l1_norm();
    return wavelet.l1_norm() * (dimension == 3 ? b * b : b);
}

double Generator::l2_norm() const {
    const double b = bump.l2_norm_squared();
    return std::sqrt(wavelet.l2_norm_squared() * (dimension == 3 ? b * b : b));
}

PiecewisePolynomial theta_derivative_profile() {
    const Polynomial theta = Polynomial({1.0, 0.0, -1.0}).pow(4);
    return PiecewisePolynomial({{-1.0, 1.0, theta.derivative()}});
}

PiecewisePolynomial paired_theta_profile() {
    const Polynomial d = Polynomial({1.0, 0.0, -1.0}).pow(4).derivative();
    return PiecewisePolynomial({{-1.0, 1.0, d}, {1.0, 3.0, -1.0 * d.compose_affine(1.0, -2.0)}});
}

PiecewisePolynomial bump_profile(const Polynomial& front) {
    const Polynomial base = Polynomial({1.0, 0.0, -1.0}).pow(3);
    return PiecewisePolynomial({{-1.0, 1.0, front * base}});
}

Generator default_2d(const DefaultParameters& p) {
    const double h = p.size * p.size;
    Wavelet1D w(paired_theta_profile(), h, p.shift_factor * h);
    Bump1D b(bump_profile(Polynomial({1.0, p.asymmetry})), p.radius_factor * p.size);
    return {2, std::move(w), std::move(b)};
}

Generator default_3d(const DefaultParameters& p) {
    const double h = p.size * p.size;
    Wavelet1D w(paired_theta_profile(), h, p.shift_factor * h);
    Bump1D b(bump_profile(Polynomial({1.0})), p.radius_factor * p.size);
    return {3, std::move(w), std::move(b)};
}

Generator detector_2d(double beta, double radius) {
    if (!(beta > 0.0)) throw ConfigError("detector asymmetry must be positive");
    Wavelet1D w(theta_derivative_profile(), 1.0, 0.0);
    // (x + beta x^2)(r^2 - x^2)^3 in the unit variable x = r u
    const double r7 = std::pow(radius, 7);
    Bump1D b(bump_profile(Polynomial({0.0, r7, r7 * beta * radius})), radius);
    return {2, std::move(w), std::move(b)};
}

// ---------------------------------------------------------------- detector conditions

std::array<double, 4> partial_moments(const Wavelet1D& w, double t) {
    // x = y + t with y = shift + width u running over the wavelet; keep x <= 0.
    const double c = w.shift() + t;
    const double ub = (-t - w.shift()) / w.width();
    std::array<double, 4> s{};
    for (int j = 0; j < 4; ++j)
        s[j] = affine_moment(w.profile(), j, c, w.width(), -std::numeric_limits<double>::infinity(), ub);
    return s;
}

double detector_margin(const Wavelet1D& w, double t) {
    // S_j scales like width^j ||psi1||_1 under dilation; compare in those units
    const auto s = partial_moments(w, t);
    const double h = w.width(), n = w.l1_norm();
    return std::min({std::abs(s[0]) / n, std::abs(s[2]) / (n * h * h), std::abs(s[3]) / (n * h * h * h)});
}

double find_detector_shift(const Wavelet1D& w, const ShiftSearch& cfg) {
    const double span = w.hi() - w.lo();
    const double lo = -w.hi() - cfg.margin_factor * span;
    const double hi = -w.lo() + cfg.margin_factor * span;
    const double step = (hi - lo) / cfg.grid;
    int best = 0;
    double best_val = -1.0;
    for (int k = 0; k <= cfg.grid; ++k) {
        const double v = detector_margin(w, lo + k * step);
        if (v > best_val) best_val = v, best = k;
    }
    const double l = lo + std::max(0, best - 1) * step;
    const double h = lo + std::min(cfg.grid, best + 1) * step;
    auto [t, neg] =
        boost::math::tools::brent_find_minima([&](double x) { return -detector_margin(w, x); }, l, h, 40);
    if (-neg < best_val) t = lo + best * step;
    if (!(detector_margin(w, t) > cfg.threshold_rel))
        throw NumericalError("no shift satisfies the detector moment conditions above the threshold");
    return t;
}

// ---------------------------------------------------------------- wedges

double wedge_integral(const Generator& g, double kappa, WedgeHalf half) {
    const double r = g.bump.radius();
    const double zl = half == WedgeHalf::Upper ? 0.0 : -r;
    const double zh = half == WedgeHalf::Lower ? 0.0 : r;
    return parabola_line(g.wavelet, [&](double z) { return g.bump(z); }, kappa, zl, zh);
}

double needle_wedge_integral(const Generator& g, double kappa) {
    return g.bump.integral() * wedge_integral(g, kappa, WedgeHalf::Full);
}

double wedge_integral3d(const Generator& g, const Mat2& Q, const Eigen::Vector2d* split_normal) {
    // Polar coordinates z = rho (cos t, sin t): smooth in t, breakpoints in rho known.
    const Mat2 Qs = 0.5 * (Q + Q.transpose());
    const double rmax = g.bump.radius() * std::sqrt(2.0);
    double t0 = 0.0, t1 = 2.0 * pi;
    if (split_normal) {
        const double a = std::atan2(split_normal->y(), split_normal->x());
        t0 = a - 0.5 * pi;
        t1 = a + 0.5 * pi;
    }
    const auto breaks = wavelet_breaks(g.wavelet);
    auto angular = [&](double t) {
        const double c = std::cos(t), s = std::sin(t);
        const double q = Qs(0, 0) * c * c + 2.0 * Qs(0, 1) * c * s + Qs(1, 1) * s * s;
        std::vector<double> cuts{0.0, rmax};
        if (q != 0.0)
            for (double b : breaks)
                if (b / q > 0.0 && std::sqrt(b / q) < rmax) cuts.push_back(std::sqrt(b / q));
        std::sort(cuts.begin(), cuts.end());
        auto f = [&](double rho) {
            return rho * g.bump(rho * c) * g.bump(rho * s) * g.wavelet.primitive(q * rho * rho);
        };
        double acc = 0.0;
        for (std::size_t i = 1; i < cuts.size(); ++i) acc += panels(f, cuts[i - 1], cuts[i], 6);
        return acc;
    };
    return panels(angular, t0, t1, 48);
}

WedgeTable::WedgeTable(const Generator& g, double nu, int grid, Kind kind) : gen_(g), kind_(kind), nu_(nu) {
    if (!(nu > 0.0) || grid < 3) throw ConfigError("wedge table needs nu > 0 and at least 3 grid points");
    k_.resize(grid);
    v_.resize(grid);
    for (int i = 0; i < grid; ++i) {
        k_[i] = -nu + 2.0 * nu * i / (grid - 1);
        v_[i] = eval(k_[i]);
    }
    bool inc = true, dec = true;
    for (int i = 1; i < grid; ++i) {
        inc = inc && v_[i] > v_[i - 1];
        dec = dec && v_[i] < v_[i - 1];
    }
    monotone_ = inc || dec;
    lower_bound_ = std::abs(v_[0]);
    for (double v : v_) lower_bound_ = std::min(lower_bound_, std::abs(v));
}

double WedgeTable::eval(double kappa) const {
    return kind_ == Kind::Planar ? wedge_integral(gen_, kappa) : needle_wedge_integral(gen_, kappa);
}

double WedgeTable::operator()(double kappa) const {
    if (std::abs(kappa) > nu_ * (1.0 + 1e-12)) throw ConfigError("curvature parameter outside the certified interval");
    return eval(kappa);
}

double WedgeTable::slope(double kappa) const {
    const double h = 1e-3 * nu_;
    return (eval(kappa + h) - eval(kappa - h)) / (2.0 * h);
}

double WedgeTable::invert(double L) const {
    if (!monotone_) throw NumericalError("wedge table is not monotone; curvature inversion is not certified");
    const double vmin = std::min(v_.front(), v_.back()), vmax = std::max(v_.front(), v_.back());
    if (!(L >= vmin && L <= vmax)) throw NumericalError("limit estimate lies outside the certified wedge range");
    std::size_t i = 1;
    const bool inc = v_.back() > v_.front();
    while (i + 1 < k_.size() && (inc ? v_[i] < L : v_[i] > L)) ++i;
    auto f = [&](double k) { return eval(k) - L; };
    double l = k_[i - 1], h = k_[i];
    if (f(l) == 0.0) return l;
    if (f(h) == 0.0) return h;
    std::uintmax_t iters = 60;
    auto [a, b] = boost::math::tools::toms748_solve(f, l, h, boost::math::tools::eps_tolerance<double>(40), iters);
    return 0.5 * (a + b);
}

// ---------------------------------------------------------------- Fourier

namespace {
// int p(x) exp(-i omega x) dx over [l, h] for one polynomial piece. Short or
// low-frequency pieces use Gauss-Legendre; otherwise repeated integration by parts
// gives -exp(-i omega x) sum_j p^(j)(x) / (i omega)^(j+1) evaluated between the ends.
std::complex<double> piece_fourier(const Polynomial& p, double l, double h, double omega) {
    if (std::abs(omega) * (h - l) < 8.0) {
        const double re = gauss<double, 16>::integrate([&](double x) { return p(x) * std::cos(omega * x); }, l, h);
        const double im = gauss<double, 16>::integrate([&](double x) { return -p(x) * std::sin(omega * x); }, l, h);
        return {re, im};
    }
    const std::complex<double> iw(0.0, omega);
    auto boundary = [&](double x) {
        std::complex<double> sum = 0.0, den = iw;
        Polynomial d = p;
        for (int j = 0; j <= p.degree(); ++j) {
            sum += d(x) / den;
            den *= iw;
            d = d.derivative();
        }
        return -std::exp(std::complex<double>(0.0, -omega * x)) * sum;
    };
    return boundary(h) - boundary(l);
}

std::complex<double> piecewise_fourier(const PiecewisePolynomial& f, double xi) {
    std::complex<double> acc = 0.0;
    for (const Piece& p : f.pieces()) acc += piece_fourier(p.poly, p.lo, p.hi, 2.0 * pi * xi);
    return acc;
}
}  // namespace

std::complex<double> fourier_factor(const Wavelet1D& w, double xi) {
    // psi1(x) = P((x - shift) / width) / width
    const double k = w.width() * xi;
    const double reach = std::max(std::abs(w.profile().lo()), std::abs(w.profile().hi()));
    std::complex<double> unit;
    if (2.0 * pi * std::abs(k) * reach <= 2.0) {
        // sum_j (-2 pi i k)^j / j! mu_j with the vanishing moments exactly zero, so
        // the transform keeps its |xi|^M behaviour instead of a roundoff floor
        const std::complex<double> z(0.0, -2.0 * pi * k);
        std::complex<double> term = 1.0;
        const auto& mu = w.unit_moments();
        for (std::size_t j = 0; j < mu.size(); ++j) {
            unit += term * mu[j];
            term *= z / static_cast<double>(j + 1);
        }
    } else {
        unit = piecewise_fourier(w.profile(), k);
    }
    return std::exp(std::complex<double>(0.0, -2.0 * pi * xi * w.shift())) * unit;
}

std::complex<double> fourier_factor(const Bump1D& b, double xi) {
    return b.radius() * piecewise_fourier(b.profile(), b.radius() * xi);
}

double element2d(const Generator& g, double a, double s, const Vec2& p, const Vec2& x) {
    if (!(a > 0.0)) throw ConfigError("scale must be positive");
    const Vec2 d = x - p;
    const Vec2 y((d.x() - s * d.y()) / a, d.y() / std::sqrt(a));
    return std::pow(a, -0.75) * g(y);
}

}  // namespace shearlet::generators
