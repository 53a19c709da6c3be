#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "wll/dpw.hpp"

namespace wll {

namespace {

CMat to_eigen(const Mat<cplx>& m) {
    CMat out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

CMat eval_poly_matrix(const QPolyMat& m, cplx z) {
    CMat out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = eval_complex(m(i, j), z);
    return out;
}

QPolyMat map_poly(const QPolyMat& m, const std::function<QPoly(const QPoly&)>& f) {
    QPolyMat out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
    return out;
}

// Antiderivative vanishing at z0.
QPoly integral_from(const QPoly& p, const QI& z0) {
    QPoly a = p.antiderivative();
    return a - QPoly(a.eval<QI>(z0));
}

double segment_distance(cplx a, cplx b, cplx p) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

}  // namespace

QPolyMat polynomial_matrix(const RMat& m) {
    QPolyMat out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const RF& f = m(i, j);
            if (!f.is_polynomial()) throw std::invalid_argument("polynomial_matrix: entry " + f.str() + " has poles");
            out(i, j) = f.num() * QPoly(QI(1) / f.den().lead());
        }
    return out;
}

bool ExactLoopFrame::maurer_cartan_exact() const {
    if (terms.empty() || !(terms[0] == QPolyMat::identity(n))) return false;
    for (std::size_t k = 1; k < terms.size(); ++k) {
        QPolyMat d = map_poly(terms[k], [](const QPoly& p) { return p.derivative(); });
        if (!(d == terms[k - 1] * eta)) return false;
        for (const auto& p : terms[k].data())
            if (!p.eval<QI>(z0).is_zero()) return false;
    }
    return (terms.back() * eta).is_zero();
}

LoopMatrix ExactLoopFrame::eval(cplx z) const {
    LoopMatrix f(n);
    for (std::size_t k = 0; k < terms.size(); ++k) f.set(-static_cast<int>(k), eval_poly_matrix(terms[k], z));
    return f;
}

ExactLoopFrame integrate_potential_exact(const NormalizedPotential& p, const QI& z0) {
    ExactLoopFrame f;
    f.n = 2 * p.m;
    f.z0 = z0;
    f.eta = polynomial_matrix(p.eta_minus1());
    f.terms.push_back(QPolyMat::identity(f.n));
    const std::size_t cap = 4 * f.n;
    while (true) {
        QPolyMat next = f.terms.back() * f.eta;
        if (next.is_zero()) break;
        if (f.terms.size() > cap)
            throw NonTerminatingSeries("integrate_potential: products of the potential do not vanish; not nilpotent");
        f.terms.push_back(map_poly(next, [&](const QPoly& q) { return integral_from(q, z0); }));
    }
    return f;
}

int nilpotency_depth(const NormalizedPotential& p, std::uint64_t seed) {
    const RMat eta = p.eta_minus1();
    const std::size_t n = 2 * p.m;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto sample = [&]() {
        while (true) {
            cplx z(u(rng), u(rng));
            bool near_pole = false;
            for (const auto& pole : p.poles) near_pole = near_pole || std::abs(pole.location - z) < 0.1;
            if (near_pole) continue;
            CMat e = to_eigen(eval_matrix(eta, z));
            const double s = e.cwiseAbs().maxCoeff();
            if (s > 0) return CMat(e / s);
        }
    };
    int depth = 0;
    for (int trial = 0; trial < 2; ++trial) {
        CMat prod = CMat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        int k = 0;
        while (true) {
            prod = prod * sample();
            if (prod.cwiseAbs().maxCoeff() < 1e-10) break;
            if (++k > static_cast<int>(4 * n))
                throw NonTerminatingSeries("nilpotency_depth: products of the potential do not vanish");
        }
        depth = std::max(depth, k);
    }
    return depth;
}

LoopMatrix integrate_potential_numeric(const NormalizedPotential& p, cplx z0, cplx z, int depth, double step) {
    for (const auto& pole : p.poles)
        if (segment_distance(z0, z, pole.location) < 1e-6)
            throw PoleOnPath("integrate_potential: pole at " + std::to_string(pole.location.real()) + "+" +
                             std::to_string(pole.location.imag()) + "i on the integration path");
    const RMat eta = p.eta_minus1();
    const auto n = static_cast<Eigen::Index>(2 * p.m);
    const cplx dz = z - z0;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(dz) / step)));
    const double h = 1.0 / steps;
    std::vector<CMat> terms(static_cast<std::size_t>(depth) + 1, CMat::Zero(n, n));
    terms[0] = CMat::Identity(n, n);
    auto deriv = [&](const std::vector<CMat>& t, const CMat& e) {
        std::vector<CMat> d(t.size(), CMat::Zero(n, n));
        for (std::size_t k = 1; k < t.size(); ++k) d[k] = t[k - 1] * e * dz;
        return d;
    };
    auto axpy = [](std::vector<CMat> a, const std::vector<CMat>& b, double s) {
        for (std::size_t k = 1; k < a.size(); ++k) a[k] += s * b[k];
        return a;
    };
    for (int s = 0; s < steps; ++s) {
        const double t = s * h;
        const CMat e0 = to_eigen(eval_matrix(eta, z0 + t * dz));
        const CMat eh = to_eigen(eval_matrix(eta, z0 + (t + h / 2) * dz));
        const CMat e1 = to_eigen(eval_matrix(eta, z0 + (t + h) * dz));
        auto k1 = deriv(terms, e0);
        auto k2 = deriv(axpy(terms, k1, h / 2), eh);
        auto k3 = deriv(axpy(terms, k2, h / 2), eh);
        auto k4 = deriv(axpy(terms, k3, h), e1);
        for (std::size_t k = 1; k < terms.size(); ++k) terms[k] += h / 6 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
    for (auto& t : terms) {
        if (!t.allFinite()) throw PoleOnPath("integrate_potential: non-finite values along the path");
    }
    LoopMatrix f(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < terms.size(); ++k) f.set(-static_cast<int>(k), terms[k]);
    return f;
}

LoopFrameSource make_loop_frame_source(const NormalizedPotential& p, cplx z0) {
    if (p.is_polynomial()) {
        auto exact = std::make_shared<ExactLoopFrame>(
            integrate_potential_exact(p, QI(mpq_class(z0.real()), mpq_class(z0.imag()))));
        return [exact](cplx z) { return exact->eval(z); };
    }
    for (const auto& pole : p.poles)
        if (std::abs(pole.location - z0) < 1e-6) throw PoleOnPath("integrate_potential: base point is a pole");
    const int depth = nilpotency_depth(p);
    return [p, z0, depth](cplx z) { return integrate_potential_numeric(p, z0, z, depth); };
}

}  // namespace wll
