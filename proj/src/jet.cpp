#include "wll/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wll {

namespace {

double factorial(int n) {
    double f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// sum_{k=0}^{order} a_k g^k for g with zero constant term
Jet2 series(const Jet2& g, const std::vector<cplx>& a) {
    Jet2 acc(g.order(), a.back());
    for (int k = static_cast<int>(a.size()) - 2; k >= 0; --k) acc = acc * g + a[static_cast<std::size_t>(k)];
    return acc;
}

Jet2 nilpotent_part(const Jet2& f) { return f - f.value(); }

}  // namespace

Jet2::Jet2(int order, cplx value) : order_(order), c_(static_cast<std::size_t>(size_for(order)), cplx(0.0, 0.0)) {
    if (order < 0) throw std::invalid_argument("Jet2: negative order");
    c_.front() = value;
}

Jet2 Jet2::variable_z(int order, cplx z0) {
    Jet2 j(order, z0);
    if (order >= 1) j.coeff(1, 0) = 1.0;
    return j;
}

Jet2 Jet2::variable_zbar(int order, cplx z0) {
    Jet2 j(order, std::conj(z0));
    if (order >= 1) j.coeff(0, 1) = 1.0;
    return j;
}

cplx Jet2::derivative(int a, int b) const {
    if (a + b > order_) throw std::out_of_range("Jet2::derivative beyond jet order");
    return coeff(a, b) * factorial(a) * factorial(b);
}

Jet2 Jet2::dz() const {
    if (order_ == 0) throw std::out_of_range("Jet2::dz of an order-0 jet");
    Jet2 d(order_ - 1, 0.0);
    for (int i = 0; i + 1 <= order_; ++i)
        for (int j = 0; i + 1 + j <= order_; ++j) d.coeff(i, j) = static_cast<double>(i + 1) * coeff(i + 1, j);
    return d;
}

Jet2 Jet2::dzbar() const {
    if (order_ == 0) throw std::out_of_range("Jet2::dzbar of an order-0 jet");
    Jet2 d(order_ - 1, 0.0);
    for (int i = 0; i <= order_; ++i)
        for (int j = 0; i + j + 1 <= order_; ++j) d.coeff(i, j) = static_cast<double>(j + 1) * coeff(i, j + 1);
    return d;
}

Jet2 Jet2::conj() const {
    Jet2 c(order_, 0.0);
    for (int i = 0; i <= order_; ++i)
        for (int j = 0; i + j <= order_; ++j) c.coeff(j, i) = std::conj(coeff(i, j));
    return c;
}

Jet2 Jet2::truncated(int order) const {
    if (order >= order_) return *this;
    Jet2 t(order, 0.0);
    std::copy_n(c_.begin(), size_for(order), t.c_.begin());
    return t;
}

Jet2& Jet2::operator+=(const Jet2& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Jet2& Jet2::operator*=(const Jet2& o) {
    const int n = std::min(order_, o.order_);
    Jet2 p(n, 0.0);
    for (int d1 = 0; d1 <= n; ++d1)
        for (int i1 = 0; i1 <= d1; ++i1) {
            const cplx a = coeff(i1, d1 - i1);
            if (a == cplx(0.0, 0.0)) continue;
            for (int d2 = 0; d1 + d2 <= n; ++d2)
                for (int i2 = 0; i2 <= d2; ++i2) p.coeff(i1 + i2, d1 - i1 + d2 - i2) += a * o.coeff(i2, d2 - i2);
        }
    return *this = std::move(p);
}

Jet2& Jet2::operator*=(cplx s) {
    for (auto& x : c_) x *= s;
    return *this;
}

Jet2& Jet2::operator/=(const Jet2& o) { return *this *= inverse(o); }

Jet2 inverse(const Jet2& f) {
    const cplx f0 = f.value();
    if (f0 == cplx(0.0, 0.0)) throw std::domain_error("Jet2: division by a jet vanishing at the base point");
    const Jet2 g = nilpotent_part(f) / f0;
    std::vector<cplx> a(static_cast<std::size_t>(f.order()) + 1);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = (k % 2 == 0 ? 1.0 : -1.0) / f0;
    return series(g, a);
}

Jet2 sqrt(const Jet2& f) {
    const cplx r = std::sqrt(f.value());
    if (r == cplx(0.0, 0.0)) throw std::domain_error("Jet2: sqrt at a zero");
    const Jet2 g = nilpotent_part(f) / f.value();
    std::vector<cplx> a(static_cast<std::size_t>(f.order()) + 1);
    double binom = 1;  // binomial(1/2, k)
    for (std::size_t k = 0; k < a.size(); ++k) {
        a[k] = binom * r;
        binom *= (0.5 - static_cast<double>(k)) / static_cast<double>(k + 1);
    }
    return series(g, a);
}

Jet2 exp(const Jet2& f) {
    const Jet2 g = nilpotent_part(f);
    std::vector<cplx> a(static_cast<std::size_t>(f.order()) + 1);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = std::exp(f.value()) / factorial(static_cast<int>(k));
    return series(g, a);
}

Jet2 log(const Jet2& f) {
    const Jet2 g = nilpotent_part(f) / f.value();
    std::vector<cplx> a(static_cast<std::size_t>(f.order()) + 1);
    a[0] = std::log(f.value());
    for (std::size_t k = 1; k < a.size(); ++k) a[k] = (k % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(k);
    return series(g, a);
}

Jet2 cos(const Jet2& f) {
    const cplx i(0, 1);
    return (exp(i * f) + exp(-i * f)) * cplx(0.5, 0);
}

Jet2 sin(const Jet2& f) {
    const cplx i(0, 1);
    return (exp(i * f) - exp(-i * f)) / (2.0 * i);
}

Jet2 pow(const Jet2& f, int k) {
    if (k < 0) return pow(inverse(f), -k);
    Jet2 acc(f.order(), 1.0), base = f;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

Jet2 lorentz(const VJet& a, const VJet& b) {
    Jet2 s = -(a[0] * b[0]);
    for (std::size_t k = 1; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

Jet2 euclid(const VJet& a, const VJet& b) {
    Jet2 s = a[0] * b[0];
    for (std::size_t k = 1; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

VJet operator+(const VJet& a, const VJet& b) {
    VJet r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return r;
}

VJet operator-(const VJet& a, const VJet& b) {
    VJet r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}

VJet operator*(const Jet2& s, const VJet& v) {
    VJet r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = s * v[k];
    return r;
}

VJet operator*(cplx s, const VJet& v) {
    VJet r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = s * v[k];
    return r;
}

VJet dz(const VJet& v) {
    VJet r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = v[k].dz();
    return r;
}

VJet dzbar(const VJet& v) {
    VJet r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = v[k].dzbar();
    return r;
}

VJet conj(const VJet& v) {
    VJet r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = v[k].conj();
    return r;
}

int order(const VJet& v) {
    int o = v.empty() ? 0 : v.front().order();
    for (const auto& j : v) o = std::min(o, j.order());
    return o;
}

}  // namespace wll
