#include "wll/lie_algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace wll {

char kind_letter(RootKind k) {
    switch (k) {
        case RootKind::E: return 'E';
        case RootKind::F: return 'F';
        case RootKind::H: return 'H';
        case RootKind::L: return 'L';
    }
    return '?';
}

RootKind parse_kind(char c) {
    switch (c) {
        case 'E': return RootKind::E;
        case 'F': return RootKind::F;
        case 'H': return RootKind::H;
        case 'L': return RootKind::L;
        default: throw std::invalid_argument(std::string("unknown root kind '") + c + "'");
    }
}

Mat<QI> TorusElement::matrix() const {
    std::vector<QI> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return torus_matrix(c);
}

TorusElement TorusElement::unit(std::size_t l, std::size_t m) {
    if (l < 1 || l > m) throw std::out_of_range("torus unit index");
    TorusElement t{std::vector<long>(m, 0)};
    t.coeffs[l - 1] = 1;
    return t;
}

std::size_t so_dim(std::size_t m) { return m * (2 * m - 1); }

namespace {

// Index of X_ab in the lexicographic a<b ordering for size n.
std::size_t pair_index(std::size_t a, std::size_t b, std::size_t n) { return a * n - a * (a + 1) / 2 + (b - a - 1); }

}  // namespace

std::vector<QI> so_coords(const Mat<QI>& a) {
    const std::size_t n = a.rows();
    std::vector<QI> c(n * (n - 1) / 2);
    // X_ab = I(E_ab - E_ba) has (a,b) entry I_aa, so the coordinate is I_aa * A_ab.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) c[pair_index(i, j, n)] = i == 0 ? -a(i, j) : a(i, j);
    return c;
}

Mat<QI> so_basis(std::size_t k, std::size_t m) {
    const std::size_t n = 2 * m;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (pair_index(a, b, n) == k) {
                Mat<QI> x(n, n);
                x(a, b) = QI(a == 0 ? -1 : 1);
                x(b, a) = QI(-1);
                return x;
            }
    throw std::out_of_range("so_basis index");
}

Mat<QI> so_from_coords(const std::vector<QI>& c, std::size_t m) {
    const std::size_t n = 2 * m;
    if (c.size() != so_dim(m)) throw std::invalid_argument("so_from_coords: wrong length");
    Mat<QI> x(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            const QI& v = c[pair_index(a, b, n)];
            x(a, b) = a == 0 ? -v : v;
            x(b, a) = -v;
        }
    return x;
}

std::size_t GradedDecomposition::total_dim() const {
    std::size_t d = 0;
    for (const auto& [j, b] : spaces) d += b.size();
    return d;
}

std::size_t GradedDecomposition::dim(int j) const {
    auto it = spaces.find(j);
    return it == spaces.end() ? 0 : it->second.size();
}

GradedDecomposition grade(const std::vector<QI>& coeffs) {
    std::vector<long> ints;
    for (const auto& c : coeffs) {
        if (sgn(c.im()) != 0 || c.re().get_den() != 1) throw std::invalid_argument("grade: torus coefficients must be integers");
        if (!c.re().get_num().fits_slong_p()) throw std::invalid_argument("grade: coefficient out of range");
        ints.push_back(c.re().get_num().get_si());
    }
    return grade(TorusElement{ints});
}

GradedDecomposition grade(const TorusElement& xi) {
    const std::size_t m = xi.m();
    if (m < 2) throw std::invalid_argument("grade: need m >= 2");
    const std::size_t n = 2 * m;
    const std::size_t dim = so_dim(m);
    const Mat<QI> x = xi.matrix();

    // ad(xi) preserves the span of X_ab with a, b in a fixed pair of 2x2 blocks.
    GradedDecomposition g;
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = p; q < m; ++q) {
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t a = 2 * p; a < 2 * p + 2; ++a)
                for (std::size_t b = std::max(a + 1, 2 * q); b < 2 * q + 2; ++b) pairs.push_back({a, b});
            const std::size_t k = pairs.size();
            // xi has a single nonzero per row, at the partner index c ^ 1, so
            // [xi, X]_{cd} = xi_{c,c^1} X_{c^1,d} - X_{c,d^1} xi_{d^1,d}.
            auto basis_entry = [](std::pair<std::size_t, std::size_t> ab, std::size_t e, std::size_t f) {
                if (e == ab.first && f == ab.second) return QI(ab.first == 0 ? -1 : 1);
                if (e == ab.second && f == ab.first) return QI(-1);
                return QI();
            };
            Mat<QI> ad(k, k);
            for (std::size_t col = 0; col < k; ++col)
                for (std::size_t row = 0; row < k; ++row) {
                    const auto [c, d] = pairs[row];
                    QI v = x(c, c ^ 1) * basis_entry(pairs[col], c ^ 1, d) - basis_entry(pairs[col], c, d ^ 1) * x(d ^ 1, d);
                    ad(row, col) = c == 0 ? -v : v;
                }
            std::vector<std::size_t> idx;
            for (const auto& [a, b] : pairs) idx.push_back(pair_index(a, b, n));
            // Candidate grades; each is confirmed by an exact null space.
            const long np = xi.coeffs[p], nq = xi.coeffs[q];
            std::set<long> candidates = {np + nq, np - nq, -np + nq, -np - nq};
            for (long j : candidates) {
                Mat<QI> shifted = ad;
                const QI ev = QI(0, mpq_class(j));
                for (std::size_t d = 0; d < k; ++d) shifted(d, d) -= ev;
                Mat<QI> ns = null_space(shifted);
                if (ns.cols() == 0) continue;
                auto& out = g.spaces[static_cast<int>(j)];
                for (std::size_t c = 0; c < ns.cols(); ++c) {
                    std::vector<QI> v(dim);
                    for (std::size_t r = 0; r < k; ++r) v[idx[r]] = ns(r, c);
                    out.push_back(so_from_coords(v, m));
                }
                g.height = std::max(g.height, static_cast<int>(j));
            }
        }
    if (g.total_dim() != dim) throw std::logic_error("grade: ad(xi) is not diagonalizable over i*Z");
    return g;
}

bool in_k_shape(const Mat<QI>& x) {
    const std::size_t n = x.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (((i < 4) != (j < 4)) && !x(i, j).is_zero()) return false;
    return true;
}

bool in_p_shape(const Mat<QI>& x) {
    const std::size_t n = x.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (((i < 4) == (j < 4)) && !x(i, j).is_zero()) return false;
    return true;
}

bool parity_split_check(const GradedDecomposition& g) {
    for (const auto& [j, basis] : g.spaces)
        for (const auto& b : basis)
            if (j % 2 != 0 ? !in_p_shape(b) : !in_k_shape(b)) return false;
    return true;
}

bool parity_split_check(const TorusElement& xi) { return parity_split_check(grade(xi)); }

std::size_t span_rank(const std::vector<Mat<QI>>& xs) {
    if (xs.empty()) return 0;
    const std::size_t n = xs.front().rows();
    Mat<QI> rows(xs.size(), n * n);
    for (std::size_t k = 0; k < xs.size(); ++k)
        for (std::size_t e = 0; e < n * n; ++e) rows(k, e) = xs[k].data()[e];
    return rank(rows);
}

bool same_span(const std::vector<Mat<QI>>& a, const std::vector<Mat<QI>>& b) {
    const std::size_t ra = span_rank(a);
    if (ra != span_rank(b)) return false;
    std::vector<Mat<QI>> u = a;
    u.insert(u.end(), b.begin(), b.end());
    return span_rank(u) == ra;
}

}  // namespace wll
