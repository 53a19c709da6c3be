#include "wll/gaussian_rational.hpp"

#include <stdexcept>

namespace wll {

QI& QI::operator/=(const QI& o) {
    mpq_class d = o.norm2();
    if (sgn(d) == 0) throw std::domain_error("division by zero Gaussian rational");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
    mpq_class m = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

std::string QI::str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string s;
    if (sgn(re_) != 0) s = re_.get_str() + (sgn(im_) > 0 ? "+" : "");
    if (im_ == 1) return s + "i";
    if (im_ == -1) return s + "-i";
    return s + im_.get_str() + "i";
}

static mpq_class parse_part(const std::string& s) {
    mpq_class q;
    if (q.set_str(s.empty() ? "0" : s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

QI QI::parse(const std::string& re, const std::string& im) { return QI(parse_part(re), parse_part(im)); }

std::ostream& operator<<(std::ostream& os, const QI& q) { return os << q.str(); }

}  // namespace wll
