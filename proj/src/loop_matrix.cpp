#include "wll/loop_matrix.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wll {

RMatD lorentz_metric(std::size_t n) {
    RMatD g = RMatD::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    g(0, 0) = -1;
    return g;
}

bool k_block(Eigen::Index i, Eigen::Index j) { return (i < 4) == (j < 4); }

void LoopMatrix::set(int k, CMat a) {
    if (static_cast<std::size_t>(a.rows()) != n_ || static_cast<std::size_t>(a.cols()) != n_)
        throw std::invalid_argument("LoopMatrix: coefficient size mismatch");
    c_[k] = std::move(a);
}

CMat LoopMatrix::eval(cplx lambda) const {
    const auto n = static_cast<Eigen::Index>(n_);
    CMat out = CMat::Zero(n, n);
    for (const auto& [k, a] : c_) out += std::pow(lambda, k) * a;
    return out;
}

LoopMatrix LoopMatrix::operator*(const LoopMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("LoopMatrix product: size mismatch");
    LoopMatrix p(n_);
    for (const auto& [k, a] : c_)
        for (const auto& [l, b] : o.c_) {
            auto it = p.c_.find(k + l);
            if (it == p.c_.end()) p.c_[k + l] = a * b;
            else it->second += a * b;
        }
    return p;
}

LoopMatrix LoopMatrix::right_multiply(const CMat& k) const {
    LoopMatrix p(n_);
    for (const auto& [e, a] : c_) p.c_[e] = a * k;
    return p;
}

bool LoopMatrix::is_twisted() const {
    for (const auto& [k, a] : c_) {
        const bool even = k % 2 == 0;
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                if (k_block(i, j) != even && a(i, j) != cplx(0.0, 0.0)) return false;
    }
    return true;
}

double LoopMatrix::group_residual(const std::vector<cplx>& lambdas) const {
    const CMat g = lorentz_metric(n_).cast<cplx>();
    double r = 0;
    for (cplx l : lambdas) {
        CMat f = eval(l);
        r = std::max(r, (f.transpose() * g * f - g).cwiseAbs().maxCoeff());
    }
    return r;
}

double LoopMatrix::reality_residual(const std::vector<cplx>& lambdas) const {
    double r = 0;
    for (cplx l : lambdas) r = std::max(r, eval(l).imag().cwiseAbs().maxCoeff());
    return r;
}

std::vector<cplx> unit_circle_samples(int count) {
    std::vector<cplx> s;
    for (int k = 0; k < count; ++k) s.push_back(std::exp(cplx(0, 2 * std::numbers::pi * (k + 0.5) / count)));
    return s;
}

}  // namespace wll
