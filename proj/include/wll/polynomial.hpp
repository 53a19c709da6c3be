#pragma once
// Univariate polynomials in z, coefficients stored from low to high degree.

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wll/scalar.hpp"

namespace wll {

template <class T>
class Poly {
public:
    Poly() = default;
    Poly(T c) : c_{std::move(c)} { trim(); }  // NOLINT: constants promote
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly z() { return Poly(std::vector<T>{tr::zero(), tr::one()}); }
    static Poly monomial(std::size_t deg, T c) {
        std::vector<T> v(deg + 1, tr::zero());
        v[deg] = std::move(c);
        return Poly(std::move(v));
    }

    const std::vector<T>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : tr::zero(); }
    T lead() const { return c_.empty() ? tr::zero() : c_.back(); }

    template <class U>
    U eval(const U& x) const {
        U acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + convert<U>(*it);
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * tr::from_int(static_cast<long>(k));
        return Poly(std::move(d));
    }

    // Antiderivative vanishing at z = 0.
    Poly antiderivative() const {
        std::vector<T> a(c_.size() + 1, tr::zero());
        for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / tr::from_int(static_cast<long>(k + 1));
        return Poly(std::move(a));
    }

    Poly monic() const {
        if (c_.empty()) return {};
        const T inv = tr::one() / lead();
        Poly p = *this;
        for (auto& x : p.c_) x = x * inv;
        return p;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), tr::zero());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), tr::zero());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> p(a.c_.size() + b.c_.size() - 1, tr::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (tr::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(p));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Euclidean division: a = q b + r with deg r < deg b.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        Poly r = a;
        if (a.degree() < b.degree()) return {Poly(), r};
        std::vector<T> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), tr::zero());
        const T inv = tr::one() / b.lead();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            const std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
            const T f = r.lead() * inv;
            q[shift] = f;
            for (std::size_t k = 0; k < b.c_.size(); ++k) r.c_[k + shift] -= f * b.c_[k];
            r.c_.pop_back();  // leading term cancels exactly
            r.trim();
        }
        return {Poly(std::move(q)), r};
    }

    // Monic gcd (exact backends).
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    std::string str(const std::string& var = "z") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (tr::is_zero(c_[k])) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[k] << ")";
            if (k >= 1) os << "*" << var;
            if (k >= 2) os << "^" << k;
        }
        return os.str();
    }

private:
    using tr = scalar_traits<T>;

    template <class U>
    static U convert(const T& x) {
        if constexpr (std::is_same_v<U, T>) return x;
        else return U(tr::to_complex(x));
    }

    void trim() {
        while (!c_.empty() && tr::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

}  // namespace wll

namespace wll {

template <class T>
struct scalar_traits<Poly<T>> {
    static constexpr bool exact = scalar_traits<T>::exact;
    static Poly<T> zero() { return {}; }
    static Poly<T> one() { return Poly<T>(scalar_traits<T>::one()); }
    static Poly<T> imag_unit() { return Poly<T>(scalar_traits<T>::imag_unit()); }
    static bool is_zero(const Poly<T>& p) { return p.is_zero(); }
    static Poly<T> from_int(long v) { return Poly<T>(scalar_traits<T>::from_int(v)); }
};

}  // namespace wll
