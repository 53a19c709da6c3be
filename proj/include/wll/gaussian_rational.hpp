#pragma once
// Exact Gaussian rationals: a + b i with a, b in Q (GMP rationals).

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <string>

namespace wll {

class QI {
public:
    QI() : re_(0), im_(0) {}
    QI(long v) : re_(v), im_(0) {}  // NOLINT: integer literals promote
    QI(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static QI i() { return QI(0, 1); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    QI conj() const { return QI(re_, -im_); }
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    QI& operator+=(const QI& o) { re_ += o.re_; im_ += o.im_; return *this; }
    QI& operator-=(const QI& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    QI& operator*=(const QI& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    QI& operator/=(const QI& o);

    friend QI operator+(QI a, const QI& b) { return a += b; }
    friend QI operator-(QI a, const QI& b) { return a -= b; }
    friend QI operator*(QI a, const QI& b) { return a *= b; }
    friend QI operator/(QI a, const QI& b) { return a /= b; }
    friend QI operator-(const QI& a) { return QI(-a.re_, -a.im_); }
    friend bool operator==(const QI& a, const QI& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const QI& a, const QI& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
    std::string str() const;

    // "p/q" or integer strings for each part
    static QI parse(const std::string& re, const std::string& im);

private:
    mpq_class re_, im_;
};

std::ostream& operator<<(std::ostream& os, const QI& q);

}  // namespace wll
