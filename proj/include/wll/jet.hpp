#pragma once
// Truncated Taylor polynomials in (dz, dzbar) at a point: sum c_ij dz^i dzbar^j for i + j <= order.

#include <vector>

#include "wll/scalar.hpp"

namespace wll {

class Jet2 {
public:
    Jet2() = default;
    Jet2(int order, cplx value);

    static Jet2 variable_z(int order, cplx z0);
    static Jet2 variable_zbar(int order, cplx z0);

    int order() const { return order_; }
    cplx coeff(int i, int j) const { return c_[index(i, j)]; }
    cplx& coeff(int i, int j) { return c_[index(i, j)]; }
    cplx value() const { return c_.front(); }
    // d^a/dz^a d^b/dzbar^b at the base point
    cplx derivative(int a, int b) const;

    Jet2 dz() const;
    Jet2 dzbar() const;
    // Jet of the complex conjugate function.
    Jet2 conj() const;
    Jet2 truncated(int order) const;

    Jet2& operator+=(const Jet2& o);
    Jet2& operator-=(const Jet2& o);
    Jet2& operator*=(const Jet2& o);
    Jet2& operator*=(cplx s);
    Jet2& operator/=(const Jet2& o);
    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
    friend Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
    friend Jet2 operator*(Jet2 a, cplx s) { return a *= s; }
    friend Jet2 operator*(cplx s, Jet2 a) { return a *= s; }
    friend Jet2 operator/(Jet2 a, cplx s) { return a *= (1.0 / s); }
    friend Jet2 operator+(Jet2 a, cplx s) { a.c_.front() += s; return a; }
    friend Jet2 operator+(cplx s, Jet2 a) { a.c_.front() += s; return a; }
    friend Jet2 operator-(Jet2 a, cplx s) { a.c_.front() -= s; return a; }
    friend Jet2 operator-(cplx s, const Jet2& a) { return (-a) + s; }
    friend Jet2 operator-(Jet2 a) { return a *= cplx(-1.0, 0.0); }

    static int index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }
    static int size_for(int order) { return (order + 1) * (order + 2) / 2; }

private:
    int order_ = 0;
    std::vector<cplx> c_{cplx(0.0, 0.0)};
};

Jet2 sqrt(const Jet2& f);
Jet2 exp(const Jet2& f);
Jet2 log(const Jet2& f);
Jet2 cos(const Jet2& f);
Jet2 sin(const Jet2& f);
Jet2 pow(const Jet2& f, int k);
Jet2 inverse(const Jet2& f);

using VJet = std::vector<Jet2>;

// Bilinear Lorentz product -x0 y0 + sum x_k y_k; no conjugation.
Jet2 lorentz(const VJet& a, const VJet& b);
// Bilinear Euclidean product.
Jet2 euclid(const VJet& a, const VJet& b);
VJet operator+(const VJet& a, const VJet& b);
VJet operator-(const VJet& a, const VJet& b);
VJet operator*(const Jet2& s, const VJet& v);
VJet operator*(cplx s, const VJet& v);
VJet dz(const VJet& v);
VJet dzbar(const VJet& v);
VJet conj(const VJet& v);
int order(const VJet& v);

}  // namespace wll
