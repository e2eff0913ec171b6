#pragma once

#include <span>
#include <vector>

namespace shearlet {

// Dense polynomial, coefficients in ascending order.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    double operator()(double x) const;
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::span<const double> coeffs() const { return c_; }

    Polynomial derivative() const;
    Polynomial antiderivative() const;  // constant term 0
    // p(scale * x + offset)
    Polynomial compose_affine(double scale, double offset) const;
    Polynomial pow(int n) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double k, const Polynomial& a);

private:
    void trim();
    std::vector<double> c_;
};

struct Piece {
    double lo;
    double hi;
    Polynomial poly;
};

// Compactly supported piecewise polynomial, zero outside its pieces.
class PiecewisePolynomial {
public:
    PiecewisePolynomial() = default;
    explicit PiecewisePolynomial(std::vector<Piece> pieces);

    double operator()(double x) const;
    double lo() const { return pieces_.front().lo; }
    double hi() const { return pieces_.back().hi; }
    std::span<const Piece> pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }

    PiecewisePolynomial derivative() const;
    // Continuous antiderivative vanishing left of the support; right of the
    // support it equals the total integral.
    PiecewisePolynomial antiderivative() const;
    double integral() const;
    double integral(double a, double b) const;
    // Exact value of int_a^b f(x) x^j dx.
    double moment(int j, double a, double b) const;
    double moment(int j) const { return moment(j, lo(), hi()); }
    // x -> f(x - t)
    PiecewisePolynomial shifted(double t) const;
    // x -> f(x / w)
    PiecewisePolynomial dilated(double w) const;
    PiecewisePolynomial scaled(double k) const;
    std::vector<double> breakpoints() const;

    double l1_norm() const;
    double l2_norm_squared() const;

private:
    std::vector<Piece> pieces_;
    double tail_ = 0.0;  // value right of the support (antiderivatives only)
};

}  // namespace shearlet
