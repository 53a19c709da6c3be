#pragma once
// Rational functions of z over Q(i), kept reduced with a monic denominator.

#include <ostream>
#include <string>
#include <vector>

#include "wll/matrix.hpp"
#include "wll/polynomial.hpp"

namespace wll {

using QPoly = Poly<QI>;

class RationalFunction {
public:
    RationalFunction() : num_(), den_(QI(1)) {}
    RationalFunction(QI c) : num_(std::move(c)), den_(QI(1)) {}  // NOLINT
    RationalFunction(long c) : RationalFunction(QI(c)) {}         // NOLINT
    RationalFunction(QPoly p) : num_(std::move(p)), den_(QI(1)) {}  // NOLINT
    RationalFunction(QPoly num, QPoly den);

    static RationalFunction z() { return RationalFunction(QPoly::z()); }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    cplx eval(cplx z) const;
    RationalFunction derivative() const;

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend RationalFunction operator-(const RationalFunction& a) { return RationalFunction(-a.num_, a.den_); }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string str() const;

private:
    void normalize();
    QPoly num_, den_;
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

template <> struct scalar_traits<RationalFunction> {
    static constexpr bool exact = true;
    static RationalFunction zero() { return {}; }
    static RationalFunction one() { return RationalFunction(1); }
    static RationalFunction imag_unit() { return RationalFunction(QI::i()); }
    static bool is_zero(const RationalFunction& x) { return x.is_zero(); }
    static RationalFunction from_int(long v) { return RationalFunction(v); }
};

using RMat = Mat<RationalFunction>;

struct Pole {
    cplx location;
    bool exact = false;  // location is a verified Gaussian-rational root
    QI exact_location;
};

// Roots of a polynomial: companion-matrix eigenvalues, with Gaussian-rational
// roots recognized and confirmed exactly.
std::vector<Pole> polynomial_roots(const QPoly& p);

cplx eval_complex(const QPoly& p, cplx z);
Mat<cplx> eval_matrix(const RMat& m, cplx z);

}  // namespace wll
