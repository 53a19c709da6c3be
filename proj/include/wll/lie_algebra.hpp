#pragma once
// so(1,2m-1,C) = { A : A^t I + I A = 0 }, I = diag(-1,1,...,1), realized as
// (2m)x(2m) matrices split into m blocks of size 2.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wll/matrix.hpp"
#include "wll/minkowski.hpp"

namespace wll {

enum class RootKind { E, F, H, L };

char kind_letter(RootKind k);
RootKind parse_kind(char c);

template <class T>
using LieMatrix = Mat<T>;

template <class T>
bool in_so(const Mat<T>& a) {
    if (a.rows() != a.cols() || a.rows() % 2 != 0) return false;
    auto g = MetricSignature{a.rows()}.matrix<T>();
    return (a.transpose() * g + g * a).is_zero();
}

template <class T>
Mat<T> bracket(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("bracket: dimension mismatch");
    return a * b - b * a;
}

namespace detail {
template <class T>
Mat<T> block2(T a, T b, T c, T d) {
    Mat<T> m(2, 2);
    m(0, 0) = a; m(0, 1) = b; m(1, 0) = c; m(1, 1) = d;
    return m;
}
}  // namespace detail

// The upper 2x2 block c_{rj} of the root vector of the given kind.
template <class T>
Mat<T> root_block(RootKind kind, bool first_block) {
    using tr = scalar_traits<T>;
    const T o = tr::one(), i = tr::imag_unit();
    if (first_block) {
        switch (kind) {
            case RootKind::E: return detail::block2<T>(o, i, o, i);
            case RootKind::F: return detail::block2<T>(o, i, -o, -i);
            case RootKind::H: return detail::block2<T>(o, -i, o, -i);
            case RootKind::L: return detail::block2<T>(o, -i, -o, i);
        }
    }
    switch (kind) {
        case RootKind::E: return detail::block2<T>(o, i, i, -o);
        case RootKind::F: return detail::block2<T>(o, i, -i, o);
        case RootKind::H: return detail::block2<T>(o, -i, i, o);
        case RootKind::L: return detail::block2<T>(o, -i, -i, -o);
    }
    throw std::logic_error("unreachable");
}

// Root vector with block c_{rj} and partner c_{jr} fixed by membership:
// c_{j1} = -c_{1j}^t I_{1,1} when r = 1 and c_{jr} = -c_{rj}^t otherwise.
template <class T>
Mat<T> basis_element(RootKind kind, std::size_t r, std::size_t j, std::size_t m) {
    if (m < 2 || r < 1 || j <= r || j > m) throw std::out_of_range("basis_element: need 1 <= r < j <= m");
    Mat<T> c = root_block<T>(kind, r == 1);
    Mat<T> partner = -c.transpose();
    if (r == 1) {
        partner(0, 0) = -partner(0, 0);
        partner(1, 0) = -partner(1, 0);
    }
    Mat<T> x(2 * m, 2 * m);
    x.set_block(2 * (r - 1), 2 * (j - 1), c);
    x.set_block(2 * (j - 1), 2 * (r - 1), partner);
    return x;
}

// Torus element with block 1 = [[0, i a1], [i a1, 0]] and blocks j >= 2 = [[0, aj], [-aj, 0]].
template <class T>
Mat<T> torus_matrix(const std::vector<T>& coeffs) {
    const std::size_t m = coeffs.size();
    if (m < 2) throw std::invalid_argument("torus element needs at least two blocks");
    Mat<T> x(2 * m, 2 * m);
    const T i = scalar_traits<T>::imag_unit();
    x(0, 1) = i * coeffs[0];
    x(1, 0) = i * coeffs[0];
    for (std::size_t b = 1; b < m; ++b) {
        x(2 * b, 2 * b + 1) = coeffs[b];
        x(2 * b + 1, 2 * b) = -coeffs[b];
    }
    return x;
}

// Integer combination sum_k n_k xi_hat_k.
struct TorusElement {
    std::vector<long> coeffs;

    std::size_t m() const { return coeffs.size(); }
    Mat<QI> matrix() const;
    static TorusElement unit(std::size_t l, std::size_t m);  // xi_hat_l, 1-based l
};

// Coordinates in the fixed basis X_ab = I (E_ab - E_ba), a < b, ordered lexicographically.
std::size_t so_dim(std::size_t m);
std::vector<QI> so_coords(const Mat<QI>& a);
Mat<QI> so_from_coords(const std::vector<QI>& c, std::size_t m);
Mat<QI> so_basis(std::size_t k, std::size_t m);

struct GradedDecomposition {
    std::map<int, std::vector<Mat<QI>>> spaces;
    int height = 0;

    std::size_t total_dim() const;
    std::size_t dim(int j) const;
};

// Exact eigenspaces {X : [xi, X] = i j X}; rejects non-integral coefficients.
GradedDecomposition grade(const std::vector<QI>& coeffs);
GradedDecomposition grade(const TorusElement& xi);

// Shape predicates for the symmetric-space split so(1,3) + so(n) (+) p.
bool in_k_shape(const Mat<QI>& x);
bool in_p_shape(const Mat<QI>& x);

bool parity_split_check(const TorusElement& xi);
bool parity_split_check(const GradedDecomposition& g);

// rank of the span of a list of so-elements (exact)
std::size_t span_rank(const std::vector<Mat<QI>>& xs);
bool same_span(const std::vector<Mat<QI>>& a, const std::vector<Mat<QI>>& b);

}  // namespace wll
