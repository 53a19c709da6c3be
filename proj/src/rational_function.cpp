#include "wll/rational_function.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace wll {

RationalFunction::RationalFunction(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = QPoly(QI(1));
        return;
    }
    if (!den_.is_constant()) {
        QPoly g = QPoly::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = QPoly::divmod(num_, g).first;
            den_ = QPoly::divmod(den_, g).first;
        }
    }
    const QI inv = QI(1) / den_.lead();
    num_ = num_ * QPoly(inv);
    den_ = den_ * QPoly(inv);
}

cplx RationalFunction::eval(cplx z) const { return eval_complex(num_, z) / eval_complex(den_, z); }

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    if (is_zero() || o.is_zero()) return *this = RationalFunction();
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
    if (o.is_zero()) throw std::domain_error("rational function division by zero");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
}

std::string RationalFunction::str() const {
    if (den_.is_constant()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.str(); }

cplx eval_complex(const QPoly& p, cplx z) {
    cplx acc = 0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + it->to_complex();
    return acc;
}

Mat<cplx> eval_matrix(const RMat& m, cplx z) {
    Mat<cplx> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(z);
    return out;
}

namespace {

mpq_class nearest_fraction(double x, long q) { return mpq_class(std::lround(x * static_cast<double>(q)), q); }

}  // namespace

std::vector<Pole> polynomial_roots(const QPoly& p) {
    std::vector<Pole> out;
    if (p.degree() <= 0) return out;
    const int d = p.degree();
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    const cplx lead = p.lead().to_complex();
    for (int k = 0; k < d; ++k) comp(0, k) = -p.coeff(static_cast<std::size_t>(d - 1 - k)).to_complex() / lead;
    for (int k = 1; k < d; ++k) comp(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    for (int k = 0; k < d; ++k) {
        Pole pole;
        pole.location = es.eigenvalues()(k);
        for (long q = 1; q <= 12 && !pole.exact; ++q) {
            QI cand(nearest_fraction(pole.location.real(), q), nearest_fraction(pole.location.imag(), q));
            if (std::abs(cand.to_complex() - pole.location) < 1e-6 * (1 + std::abs(pole.location)) && p.eval(cand).is_zero()) {
                pole.exact = true;
                pole.exact_location = cand;
                pole.location = cand.to_complex();
            }
        }
        out.push_back(pole);
    }
    return out;
}

}  // namespace wll
