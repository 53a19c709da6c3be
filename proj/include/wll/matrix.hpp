#pragma once
// Small dense matrices over an arbitrary field, used for the exact (QI) paths.
// Numeric work elsewhere goes through Eigen.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wll/scalar.hpp"

namespace wll {

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, scalar_traits<T>::zero()) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<T>::one();
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!scalar_traits<T>::is_zero(x)) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
        Mat b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
        return b;
    }

    void set_block(std::size_t i0, std::size_t j0, const Mat& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    Mat& operator+=(const Mat& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(const T& s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, const T& s) { return a *= s; }
    friend Mat operator*(const T& s, Mat a) { return a *= s; }
    friend Mat operator-(Mat a) {
        for (auto& x : a.a_) x = -x;
        return a;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix product: dimension mismatch");
        Mat p(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (scalar_traits<T>::is_zero(x)) continue;
                for (std::size_t j = 0; j < b.c_; ++j)
                    if (!scalar_traits<T>::is_zero(b(k, j))) p(i, j) += x * b(k, j);
            }
        return p;
    }

    friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }

    const std::vector<T>& data() const { return a_; }

private:
    void check_same(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix sum: dimension mismatch");
    }
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

// Row-reduces in place (exact field arithmetic); returns pivot columns.
// Zero entries are skipped, so block-sparse inputs stay cheap.
template <class T>
std::vector<std::size_t> row_reduce(Mat<T>& m) {
    using tr = scalar_traits<T>;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && tr::is_zero(m(p, col))) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        T inv = tr::one() / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j)
            if (!tr::is_zero(m(row, j))) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || tr::is_zero(m(i, col))) continue;
            T f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (!tr::is_zero(m(row, j))) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
std::size_t rank(Mat<T> m) {
    return row_reduce(m).size();
}

// Basis of the right null space, one vector per column of the result.
template <class T>
Mat<T> null_space(Mat<T> m) {
    auto piv = row_reduce(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_piv[j]) free.push_back(j);
    Mat<T> ns(m.cols(), free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        ns(free[k], k) = scalar_traits<T>::one();
        for (std::size_t r = 0; r < piv.size(); ++r) ns(piv[r], k) = -m(r, free[k]);
    }
    return ns;
}

template <class T, class F>
auto map_entries(const Mat<T>& m, F f) -> Mat<decltype(f(m(0, 0)))> {
    Mat<decltype(f(m(0, 0)))> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
    return out;
}

}  // namespace wll
