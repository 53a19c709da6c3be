#include <gtest/gtest.h>

#include <random>

#include "wll/rational_function.hpp"

using namespace wll;

namespace {
QPoly P(std::initializer_list<long> c) {
    std::vector<QI> v;
    for (long x : c) v.emplace_back(x);
    return QPoly(v);
}
}  // namespace

TEST(Polynomial, ArithmeticAndDivision) {
    auto a = P({1, 2, 1});  // (z+1)^2
    auto b = P({1, 1});
    auto [q, r] = QPoly::divmod(a, b);
    EXPECT_EQ(q, b);
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(QPoly::gcd(a, P({-1, 0, 1})), b);
    EXPECT_EQ(a.derivative(), P({2, 2}));
    EXPECT_EQ(b.antiderivative(), QPoly(std::vector<QI>{QI(0), QI(1), QI(mpq_class(1, 2))}));
    EXPECT_THROW(QPoly::divmod(a, QPoly()), std::domain_error);
    EXPECT_EQ(a.eval(QI(2)), QI(9));
}

TEST(RationalFunction, ReducedForm) {
    RationalFunction f(P({-1, 0, 1}), P({2, 2}));  // (z^2-1)/(2z+2) = (z-1)/2
    EXPECT_TRUE(f.is_polynomial());
    EXPECT_EQ(f, RationalFunction(QPoly(std::vector<QI>{QI(mpq_class(-1, 2)), QI(mpq_class(1, 2))})));
    RationalFunction g(P({1}), P({0, 3}));
    EXPECT_EQ(g.den(), P({0, 1}));  // monic denominator
    EXPECT_THROW(RationalFunction(P({1}), QPoly()), std::domain_error);
}

TEST(RationalFunction, FieldIdentities) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> c(-4, 4);
    auto rnd = [&] {
        QPoly n(std::vector<QI>{QI(c(rng), c(rng)), QI(c(rng), c(rng)), QI(c(rng), c(rng))});
        QPoly d(std::vector<QI>{QI(c(rng), c(rng)), QI(1)});
        return n.is_zero() ? RationalFunction(1) : RationalFunction(n, d);
    };
    for (int t = 0; t < 30; ++t) {
        auto a = rnd(), b = rnd(), d = rnd();
        EXPECT_EQ((a + b) * d, a * d + b * d);
        EXPECT_TRUE((a - a).is_zero());
        if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
        // quotient rule against numeric difference
        const cplx z0(0.37, -0.21), h(1e-6, 0);
        auto fd = (a.eval(z0 + h) - a.eval(z0 - h)) / (2.0 * h);
        EXPECT_LT(std::abs(a.derivative().eval(z0) - fd), 1e-5 * (1 + std::abs(fd)));
    }
}

TEST(RationalFunction, Roots) {
    // (z - 1/2)(z + i)(z^2 + 2) : two Gaussian-rational roots, two irrational ones
    QPoly p = (QPoly::z() - QPoly(QI(mpq_class(1, 2)))) * (QPoly::z() + QPoly(QI::i())) * P({2, 0, 1});
    auto roots = polynomial_roots(p);
    ASSERT_EQ(roots.size(), 4u);
    int exact = 0;
    for (const auto& r : roots) {
        exact += r.exact;
        EXPECT_LT(std::abs(eval_complex(p, r.location)), 1e-10);
    }
    EXPECT_EQ(exact, 2);
}

TEST(RationalFunction, MatrixRank) {
    RMat m(2, 2);
    auto z = RationalFunction::z();
    m(0, 0) = z;
    m(0, 1) = z * z;
    m(1, 0) = RationalFunction(1);
    m(1, 1) = z;
    EXPECT_EQ(rank(m), 1u);
    m(1, 1) = z + RationalFunction(1);
    EXPECT_EQ(rank(m), 2u);
}
