#include <gtest/gtest.h>

#include <cmath>

#include "wll/jet.hpp"

using namespace wll;

namespace {

const cplx kBase(0.3, -0.7);

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST(Jet, PolynomialDerivatives) {
    const Jet2 z = Jet2::variable_z(4, kBase), zb = Jet2::variable_zbar(4, kBase);
    const Jet2 f = z * z * zb + 3.0 * z;
    EXPECT_LT(std::abs(f.value() - (kBase * kBase * std::conj(kBase) + 3.0 * kBase)), 1e-15);
    EXPECT_LT(std::abs(f.derivative(1, 0) - (2.0 * kBase * std::conj(kBase) + 3.0)), 1e-15);
    EXPECT_LT(std::abs(f.derivative(0, 1) - kBase * kBase), 1e-15);
    EXPECT_LT(std::abs(f.derivative(2, 1) - 2.0), 1e-15);
    EXPECT_LT(std::abs(f.derivative(1, 1) - 2.0 * kBase), 1e-15);
    EXPECT_LT(std::abs(f.derivative(0, 2)), 1e-15);
    EXPECT_LT(std::abs(f.derivative(3, 0)), 1e-15);
}

TEST(Jet, DerivativeOperatorsCommuteWithCoefficients) {
    const Jet2 z = Jet2::variable_z(5, kBase), zb = Jet2::variable_zbar(5, kBase);
    const Jet2 f = exp(z * zb) * sin(z + 2.0 * zb);
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b <= 3; ++b) {
            EXPECT_LT(std::abs(f.dz().derivative(a, b) - f.derivative(a + 1, b)), 1e-12);
            EXPECT_LT(std::abs(f.dzbar().derivative(a, b) - f.derivative(a, b + 1)), 1e-12);
            EXPECT_LT(std::abs(f.dz().dzbar().derivative(a, b) - f.dzbar().dz().derivative(a, b)), 1e-12);
        }
}

TEST(Jet, InverseMatchesGeometricSeries) {
    const Jet2 z = Jet2::variable_z(6, kBase);
    const Jet2 g = inverse(1.0 + z);
    for (int k = 0; k <= 6; ++k) {
        const cplx want = (k % 2 == 0 ? 1.0 : -1.0) * factorial(k) / std::pow(1.0 + kBase, k + 1);
        EXPECT_LT(std::abs(g.derivative(k, 0) - want), 1e-12 * std::abs(want));
    }
}

TEST(Jet, ExpOfModulusSquared) {
    const Jet2 z = Jet2::variable_z(4, kBase), zb = Jet2::variable_zbar(4, kBase);
    const Jet2 f = exp(z * zb);
    const double r2 = std::norm(kBase);
    // d_z d_zbar e^{z zbar} = (1 + z zbar) e^{z zbar}
    EXPECT_LT(std::abs(f.derivative(1, 1) - (1 + r2) * std::exp(r2)), 1e-13);
    // d_z^2 e^{z zbar} = zbar^2 e^{z zbar}
    EXPECT_LT(std::abs(f.derivative(2, 0) - std::conj(kBase) * std::conj(kBase) * std::exp(r2)), 1e-13);
}

TEST(Jet, TrigonometricDerivativesCycle) {
    const Jet2 z = Jet2::variable_z(5, kBase);
    const Jet2 s = sin(z), c = cos(z);
    const cplx cycle[4] = {std::sin(kBase), std::cos(kBase), -std::sin(kBase), -std::cos(kBase)};
    for (int k = 0; k <= 5; ++k) {
        EXPECT_LT(std::abs(s.derivative(k, 0) - cycle[k % 4]), 1e-13);
        EXPECT_LT(std::abs(c.derivative(k, 0) - cycle[(k + 1) % 4]), 1e-13);
        EXPECT_LT(std::abs(s.derivative(0, k) - (k == 0 ? cycle[0] : 0.0)), 1e-13);
    }
}

TEST(Jet, FunctionalInverses) {
    const Jet2 z = Jet2::variable_z(5, kBase), zb = Jet2::variable_zbar(5, kBase);
    const Jet2 f = 2.0 + z * zb + 0.5 * z * z;
    const Jet2 checks[] = {log(exp(f)) - f, sqrt(f) * sqrt(f) - f, pow(f, -3) * pow(f, 3) - 1.0, f / f - 1.0};
    for (const Jet2& d : checks)
        for (int a = 0; a <= 5; ++a)
            for (int b = 0; a + b <= 5; ++b) EXPECT_LT(std::abs(d.coeff(a, b)), 1e-12);
}

TEST(Jet, ConjugateSwapsVariables) {
    const Jet2 z = Jet2::variable_z(3, kBase), zb = Jet2::variable_zbar(3, kBase);
    const Jet2 f = z * z * zb + cplx(0, 2) * zb;
    const Jet2 g = f.conj();
    const Jet2 want = zb * zb * z - cplx(0, 2) * z;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b) EXPECT_LT(std::abs(g.coeff(a, b) - want.coeff(a, b)), 1e-15);
}

TEST(Jet, MixedOrdersTruncate) {
    const Jet2 f = Jet2::variable_z(5, kBase), g = Jet2::variable_z(2, kBase);
    EXPECT_EQ((f * g).order(), 2);
    EXPECT_EQ((f + g).order(), 2);
    EXPECT_EQ(f.dz().order(), 4);
    EXPECT_THROW(g.derivative(2, 1), std::out_of_range);
    EXPECT_THROW(Jet2(0, 1.0).dz(), std::out_of_range);
}

TEST(Jet, DivisionByVanishingJetThrows) {
    const Jet2 z = Jet2::variable_z(3, 0.0);
    EXPECT_THROW(inverse(z), std::domain_error);
    EXPECT_THROW(sqrt(z), std::domain_error);
}

TEST(Jet, LorentzProductOfVectors) {
    const Jet2 z = Jet2::variable_z(2, kBase);
    const VJet v{z, 2.0 * z, Jet2(2, 1.0)};
    const Jet2 q = lorentz(v, v);  // 3 z^2 + 1
    EXPECT_LT(std::abs(q.value() - (3.0 * kBase * kBase + 1.0)), 1e-15);
    EXPECT_LT(std::abs(q.derivative(2, 0) - 6.0), 1e-15);
    EXPECT_LT(std::abs(euclid(v, v).derivative(2, 0) - 10.0), 1e-15);
}
