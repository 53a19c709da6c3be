#pragma once
// Finite Laurent polynomials in lambda with (2m)x(2m) complex coefficients.

#include <Eigen/Dense>

#include <map>
#include <vector>

#include "wll/scalar.hpp"

namespace wll {

using CMat = Eigen::MatrixXcd;
using RMatD = Eigen::MatrixXd;

// diag(-1, 1, ..., 1) of size n
RMatD lorentz_metric(std::size_t n);

// True where (i < 4) == (j < 4): the block-diagonal (k) pattern.
bool k_block(Eigen::Index i, Eigen::Index j);

class LoopMatrix {
public:
    LoopMatrix() = default;
    explicit LoopMatrix(std::size_t n) : n_(n) {}

    std::size_t size() const { return n_; }
    const std::map<int, CMat>& coeffs() const { return c_; }
    void set(int k, CMat a);
    const CMat& at(int k) const { return c_.at(k); }
    int min_power() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_power() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    CMat eval(cplx lambda) const;
    LoopMatrix operator*(const LoopMatrix& o) const;
    LoopMatrix right_multiply(const CMat& k) const;

    // Even powers block-diagonal and odd powers off-diagonal, exactly.
    bool is_twisted() const;
    // max over samples of |F^t I F - I|
    double group_residual(const std::vector<cplx>& lambdas) const;
    // max over samples of |Im F|
    double reality_residual(const std::vector<cplx>& lambdas) const;

private:
    std::size_t n_ = 0;
    std::map<int, CMat> c_;
};

std::vector<cplx> unit_circle_samples(int count);

}  // namespace wll
