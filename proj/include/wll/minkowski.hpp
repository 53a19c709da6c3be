#pragma once
// Lorentz-Minkowski space R^{1,2m-1} and its complexification, and the
// light-cone model of the conformal sphere S^{2m-2}.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "wll/matrix.hpp"
#include "wll/scalar.hpp"

namespace wll {

inline constexpr double kLightTol = 1e-10;

// diag(-1, 1, ..., 1) of size dim; dim = 2 and 4 give the I_{1,1} and I_{1,3} blocks.
struct MetricSignature {
    std::size_t dim;
    std::size_t minus = 1;

    int sign(std::size_t k) const { return k < minus ? -1 : 1; }

    template <class T>
    Mat<T> matrix() const {
        Mat<T> g(dim, dim);
        for (std::size_t k = 0; k < dim; ++k) g(k, k) = scalar_traits<T>::from_int(sign(k));
        return g;
    }

    template <class T>
    std::vector<T> apply(const std::vector<T>& x) const {
        if (x.size() != dim) throw std::invalid_argument("metric: dimension mismatch");
        std::vector<T> y = x;
        for (std::size_t k = 0; k < minus; ++k) y[k] = -y[k];
        return y;
    }
};

template <class T>
class LorentzVector {
public:
    explicit LorentzVector(std::vector<T> entries) : e_(std::move(entries)) {
        if (e_.size() < 6 || e_.size() % 2 != 0)
            throw std::invalid_argument("LorentzVector needs an even length >= 6");
    }
    std::size_t size() const { return e_.size(); }
    std::size_t blocks() const { return e_.size() / 2; }
    const T& operator[](std::size_t k) const { return e_[k]; }
    T& operator[](std::size_t k) { return e_[k]; }
    const std::vector<T>& entries() const { return e_; }

private:
    std::vector<T> e_;
};

// Bilinear (never Hermitian) pairing x^t I y on equal-length coordinate lists.
template <class T>
T lorentz_inner(const std::vector<T>& x, const std::vector<T>& y) {
    if (x.size() != y.size() || x.empty()) throw std::invalid_argument("lorentz_inner: dimension mismatch");
    T s = -(x[0] * y[0]);
    for (std::size_t k = 1; k < x.size(); ++k) s += x[k] * y[k];
    return s;
}

template <class T>
T lorentz_inner(const LorentzVector<T>& x, const LorentzVector<T>& y) {
    return lorentz_inner(x.entries(), y.entries());
}

inline bool is_forward_lightlike(const std::vector<double>& x, double tol = kLightTol) {
    if (x.empty()) return false;
    double scale = 0.0;
    for (double v : x) scale += v * v;
    return x[0] > 0.0 && std::abs(lorentz_inner(x, x)) <= tol * scale;
}

inline bool is_forward_lightlike(const LorentzVector<double>& x, double tol = kLightTol) {
    return is_forward_lightlike(x.entries(), tol);
}

// Exact variant: requires real entries, an exactly null square and x0 > 0.
inline bool is_forward_lightlike(const LorentzVector<QI>& x) {
    for (const auto& v : x.entries())
        if (sgn(v.im()) != 0) return false;
    return lorentz_inner(x, x).is_zero() && sgn(x[0].re()) > 0;
}

// (x_1, ..., x_{n+3}) / x_0 for a forward lightlike x.
inline std::vector<double> projectivize(const std::vector<double>& x, double tol = kLightTol) {
    if (!is_forward_lightlike(x, tol)) throw std::domain_error("projectivize: vector is not forward lightlike");
    std::vector<double> p(x.begin() + 1, x.end());
    for (auto& v : p) v /= x[0];
    return p;
}

inline std::vector<double> projectivize(const LorentzVector<double>& x, double tol = kLightTol) {
    return projectivize(x.entries(), tol);
}

}  // namespace wll
