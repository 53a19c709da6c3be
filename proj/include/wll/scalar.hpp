#pragma once
// Uniform helpers over the two scalar backends: exact QI and std::complex<double>.

#include <complex>
#include <type_traits>

#include "wll/gaussian_rational.hpp"

namespace wll {

using cplx = std::complex<double>;

template <class T> struct scalar_traits;

template <> struct scalar_traits<QI> {
    static constexpr bool exact = true;
    static QI zero() { return QI(); }
    static QI one() { return QI(1); }
    static QI imag_unit() { return QI::i(); }
    static bool is_zero(const QI& x) { return x.is_zero(); }
    static QI conj(const QI& x) { return x.conj(); }
    static cplx to_complex(const QI& x) { return x.to_complex(); }
    static QI from_int(long v) { return QI(v); }
};

template <> struct scalar_traits<cplx> {
    static constexpr bool exact = false;
    static cplx zero() { return {0.0, 0.0}; }
    static cplx one() { return {1.0, 0.0}; }
    static cplx imag_unit() { return {0.0, 1.0}; }
    static bool is_zero(const cplx& x) { return x == cplx(0.0, 0.0); }
    static cplx conj(const cplx& x) { return std::conj(x); }
    static cplx to_complex(const cplx& x) { return x; }
    static cplx from_int(long v) { return {static_cast<double>(v), 0.0}; }
};

template <> struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double x) { return x == 0.0; }
    static double conj(double x) { return x; }
    static cplx to_complex(double x) { return {x, 0.0}; }
    static double from_int(long v) { return static_cast<double>(v); }
};

}  // namespace wll
