#include "shearlet/polynomial.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "shearlet/common.hpp"

namespace shearlet {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    std::vector<double> d(c_.size() + 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) d[i + 1] = c_[i] / static_cast<double>(i + 1);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::compose_affine(double scale, double offset) const {
    const Polynomial lin({offset, scale});
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Polynomial({*it});
    return acc;
}

Polynomial Polynomial::pow(int n) const {
    Polynomial acc({1.0});
    for (int i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
}

Polynomial operator*(double k, const Polynomial& a) {
    std::vector<double> r(a.c_);
    for (double& v : r) v *= k;
    return Polynomial(std::move(r));
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw ConfigError("piecewise polynomial needs at least one piece");
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (!(pieces_[i].hi > pieces_[i].lo)) throw ConfigError("piece with empty interval");
        if (i > 0 && pieces_[i].lo < pieces_[i - 1].hi - 1e-14 * (1.0 + std::abs(pieces_[i].lo)))
            throw ConfigError("overlapping polynomial pieces");
    }
}

double PiecewisePolynomial::operator()(double x) const {
    if (pieces_.empty()) return 0.0;
    if (x < pieces_.front().lo) return 0.0;
    if (x >= pieces_.back().hi) return tail_;
    // few pieces: linear search is fastest
    for (const Piece& p : pieces_) {
        if (x < p.lo) return 0.0;  // gap between pieces
        if (x < p.hi) return p.poly(x);
    }
    return tail_;
}

PiecewisePolynomial PiecewisePolynomial::derivative() const {
    std::vector<Piece> out;
    out.reserve(pieces_.size());
    for (const Piece& p : pieces_) out.push_back({p.lo, p.hi, p.poly.derivative()});
    return PiecewisePolynomial(std::move(out));
}

PiecewisePolynomial PiecewisePolynomial::antiderivative() const {
    std::vector<Piece> out;
    out.reserve(pieces_.size());
    double acc = 0.0;
    for (const Piece& p : pieces_) {
        if (!out.empty() && out.back().hi < p.lo) out.push_back({out.back().hi, p.lo, Polynomial({acc})});
        const Polynomial prim = p.poly.antiderivative();
        const double base = acc - prim(p.lo);
        out.push_back({p.lo, p.hi, prim + Polynomial({base})});
        acc = base + prim(p.hi);
    }
    PiecewisePolynomial r(std::move(out));
    r.tail_ = acc;
    return r;
}

double PiecewisePolynomial::integral() const { return integral(lo(), hi()); }

double PiecewisePolynomial::integral(double a, double b) const { return moment(0, a, b); }

double PiecewisePolynomial::moment(int j, double a, double b) const {
    if (b < a) return -moment(j, b, a);
    std::vector<double> mono(static_cast<std::size_t>(j) + 1, 0.0);
    mono.back() = 1.0;
    const Polynomial xj(std::move(mono));
    double acc = 0.0;
    for (const Piece& p : pieces_) {
        const double l = std::max(a, p.lo);
        const double h = std::min(b, p.hi);
        if (h <= l) continue;
        const Polynomial prim = (p.poly * xj).antiderivative();
        acc += prim(h) - prim(l);
    }
    return acc;
}

PiecewisePolynomial PiecewisePolynomial::shifted(double t) const {
    std::vector<Piece> out;
    for (const Piece& p : pieces_) out.push_back({p.lo + t, p.hi + t, p.poly.compose_affine(1.0, -t)});
    PiecewisePolynomial r(std::move(out));
    r.tail_ = tail_;
    return r;
}

PiecewisePolynomial PiecewisePolynomial::dilated(double w) const {
    if (!(w > 0.0)) throw ConfigError("dilation width must be positive");
    std::vector<Piece> out;
    for (const Piece& p : pieces_) out.push_back({p.lo * w, p.hi * w, p.poly.compose_affine(1.0 / w, 0.0)});
    PiecewisePolynomial r(std::move(out));
    r.tail_ = tail_;
    return r;
}

PiecewisePolynomial PiecewisePolynomial::scaled(double k) const {
    std::vector<Piece> out;
    for (const Piece& p : pieces_) out.push_back({p.lo, p.hi, k * p.poly});
    PiecewisePolynomial r(std::move(out));
    r.tail_ = k * tail_;
    return r;
}

std::vector<double> PiecewisePolynomial::breakpoints() const {
    std::vector<double> b;
    for (const Piece& p : pieces_) {
        if (b.empty() || b.back() != p.lo) b.push_back(p.lo);
        b.push_back(p.hi);
    }
    return b;
}

double PiecewisePolynomial::l1_norm() const {
    // |f| has kinks at sign changes; many short Gauss panels keep the error far
    // below the tolerances this norm scales.
    using boost::math::quadrature::gauss;
    double acc = 0.0;
    for (const Piece& p : pieces_) {
        constexpr int panels = 256;
        const double w = (p.hi - p.lo) / panels;
        for (int k = 0; k < panels; ++k) {
            const double l = p.lo + k * w;
            acc += gauss<double, 15>::integrate([&](double x) { return std::abs(p.poly(x)); }, l, l + w);
        }
    }
    return acc;
}

double PiecewisePolynomial::l2_norm_squared() const {
    double acc = 0.0;
    for (const Piece& p : pieces_) {
        const Polynomial prim = (p.poly * p.poly).antiderivative();
        acc += prim(p.hi) - prim(p.lo);
    }
    return acc;
}

}  // namespace shearlet
