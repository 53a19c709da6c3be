#include <gtest/gtest.h>

#include <Eigen/SVD>
#include <fstream>
#include <random>

#include "wll/lie_algebra.hpp"
#include "wll/potential_io.hpp"
#include "wll/torus_periods.hpp"

using namespace wll;

namespace {
const RF I(QI::i());
const RF Z = RF::z();

RF c(long re, long im = 0) { return RF(QI(re, im)); }

// Numeric rank of B at a few random points, as an independent oracle for the exact rank.
std::size_t sampled_rank(const RMat& b) {
    std::size_t best = 0;
    for (cplx z : {cplx(0.31, 0.77), cplx(-1.3, 0.4), cplx(0.9, -1.1)}) {
        auto n = eval_matrix(b, z);
        Eigen::MatrixXcd e(n.rows(), n.cols());
        for (std::size_t i = 0; i < n.rows(); ++i)
            for (std::size_t j = 0; j < n.cols(); ++j) e(i, j) = n(i, j);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
        std::size_t r = 0;
        for (int k = 0; k < svd.singularValues().size(); ++k) r += svd.singularValues()(k) > 1e-9 * svd.singularValues()(0);
        best = std::max(best, r);
    }
    return best;
}

bool b_isotropic(const RMat& b) {
    auto g = b.transpose() * MetricSignature{4}.matrix<RF>() * b;
    return g.is_zero();
}
}  // namespace

TEST(Potentials, IsotropicPair) {
    auto [v1, v2] = isotropic_pair_from_functions(RF(), RF());
    EXPECT_EQ(v1, (RVec{c(1), c(-1), c(0), c(0)}));
    EXPECT_EQ(v2, (RVec{c(0), c(0), c(1), c(0, 1)}));
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        auto [a, b] = isotropic_pair_from_functions(random_rational(rng), random_rational(rng));
        EXPECT_TRUE(bilinear13(a, a).is_zero());
        EXPECT_TRUE(bilinear13(a, b).is_zero());
        EXPECT_TRUE(bilinear13(b, b).is_zero());
    }
}

TEST(Potentials, ExamplePotential) {
    auto p = example_potential();
    const RF h = RF(QI(mpq_class(1, 2)));
    RMat expected(4, 4);
    const RF i = I;
    RF rows[4][4] = {{c(0, 2) * Z, c(-2) * Z, -i, c(1)},
                     {c(0, -2) * Z, c(2) * Z, -i, c(1)},
                     {c(-2), c(0, -2), -Z, -(i * Z)},
                     {c(0, 2), c(-2), -(i * Z), Z}};
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) expected(r, k) = h * rows[r][k];
    EXPECT_EQ(p.b1, expected);
    EXPECT_EQ(p.type_tag, 3);
    EXPECT_EQ(generic_rank(p), 2u);
    EXPECT_EQ(sampled_rank(p.b1), 2u);
    EXPECT_FALSE(is_s_willmore(p));
    EXPECT_TRUE(p.is_polynomial());
    EXPECT_TRUE(in_so(p.eta_minus1()));
    EXPECT_TRUE(p.poles.empty());
}

TEST(Potentials, GenericKindIIRejected) {
    EXPECT_THROW(assemble({ColumnPair::kind_ii(Z, c(1), c(2), c(3)), ColumnPair::kind_ii(c(1), Z, c(0), c(1))}), IsotropyError);
}

TEST(Potentials, RandomPotentialsAreIsotropic) {
    std::mt19937_64 rng(2024);
    for (std::size_t m : {3u, 4u}) {
        for (int type = 1; type <= static_cast<int>(m) - 1; ++type) {
            for (int t = 0; t < 10; ++t) {
                auto p = random_potential(m, type, rng);
                EXPECT_EQ(p.type_tag, type);
                EXPECT_TRUE(b_isotropic(p.b1));
                EXPECT_TRUE(in_so(p.eta_minus1()));
            }
        }
    }
}

TEST(Potentials, CorruptionIsLocated) {
    std::mt19937_64 rng(9);
    auto p = random_potential(5, 3, rng);
    auto pairs = p.pairs;
    auto f = pairs[1].functions();
    f["h1"] += c(1);
    pairs[1] = ColumnPair::from_functions(PairKind::ii, f);
    try {
        assemble(pairs);
        FAIL() << "corrupted potential accepted";
    } catch (const IsotropyError& e) {
        const auto& v = e.violation();
        EXPECT_TRUE(v.j == 4 || v.l == 4);
        EXPECT_FALSE(v.value.is_zero());
    }
}

TEST(Potentials, S6Builders) {
    auto p1 = s6_case1(Z, Z * Z, c(0), c(0), c(0));
    EXPECT_EQ(generic_rank(p1), 1u);
    auto p2 = s6_case2(Z, c(1), Z, c(1), c(2));
    EXPECT_EQ(p2.type_tag, 2);
    EXPECT_EQ(generic_rank(p2), 2u);
    EXPECT_THROW(s6_case2(Z, c(1), Z, Z, I * Z), DegeneratePotential);
    auto p3 = s6_case3(Z, c(0), c(1), c(1), Z);
    EXPECT_EQ(p3.type_tag, 3);
    EXPECT_THROW(s6_case3(c(2), Z, c(1), c(1), c(1)), DegeneratePotential);
    EXPECT_THROW(s6_case1(Z, c(3), c(1), c(1), c(1)), DegeneratePotential);
}

TEST(Potentials, S5AndS4) {
    auto p = s5_builder(Z, Z, Z * Z, Z);
    EXPECT_EQ(generic_rank(p), 2u);
    EXPECT_EQ(sampled_rank(p.b1), 2u);
    for (int r = 0; r < 4; ++r) EXPECT_TRUE(p.b1(r, 3).is_zero());
    EXPECT_THROW(s5_builder(Z, Z, Z * Z, RF()), DegeneratePotential);
    auto a = s4_case1(Z, Z * Z, c(1), Z);
    auto b = s4_case2(Z, c(1), Z);
    EXPECT_EQ(a.m, 3u);
    EXPECT_EQ(generic_rank(a), 1u);
    EXPECT_EQ(generic_rank(b), 1u);
    EXPECT_TRUE(is_s_willmore(a));
    EXPECT_TRUE(is_s_willmore(b));
}

TEST(Potentials, LiteralS4FirstCaseVectorIsNotIsotropic) {
    // (h1, h1, i h2, i h2) has square h2^2 - h2^2 ... - i^2 h2^2 = -2 h2^2 under I_{1,3}... checked exactly
    RVec v = {Z, Z, I * Z * Z, I * Z * Z};
    EXPECT_FALSE(bilinear13(v, v).is_zero());
    RVec w = {Z, Z, Z * Z, I * Z * Z};
    EXPECT_TRUE(bilinear13(w, w).is_zero());
}

TEST(Potentials, GeneralTrichotomy) {
    auto a = general_case1(5, {{Z, c(1), Z * Z, c(2)}, {c(1), Z, c(3), Z}, {Z, Z, c(1), c(0, 1)}});
    EXPECT_EQ(a.type_tag, 1);
    auto b = general_case2(5, 4, Z, c(1), {{c(1), Z}, {Z, c(2)}, {c(3), Z}});
    EXPECT_EQ(b.type_tag, 3);
    auto d = general_case3(5, Z, c(1), {{c(1), Z}, {Z, c(2)}, {c(3), Z}});
    EXPECT_EQ(d.type_tag, 4);
    for (const auto* p : {&a, &b, &d}) EXPECT_TRUE(b_isotropic(p->b1));
}

TEST(Potentials, ConjugationStableKinds) {
    std::mt19937_64 rng(4);
    auto p = random_potential(5, 2, rng);
    // B -> -B and swapping pairs keep the kind multiset
    RMat neg = -p.b1;
    int fits_ii = 0;
    for (std::size_t q = 0; q < 3; ++q) {
        RVec v(4), vh(4);
        for (int r = 0; r < 4; ++r) {
            v[r] = neg(r, 2 * (2 - q));
            vh[r] = neg(r, 2 * (2 - q) + 1);
        }
        fits_ii += fits_kind_ii(v, vh) && !fits_kind_i(v, vh);
    }
    EXPECT_EQ(fits_ii, 1);
}

TEST(Potentials, Poles) {
    auto p = s6_case3(I / Z, c(0), I * Z, c(1) / (Z - c(1)), c(0));
    ASSERT_FALSE(p.poles.empty());
    bool found = false;
    for (const auto& pole : p.poles) found = found || (pole.exact && pole.exact_location == QI(1));
    EXPECT_TRUE(found);
}

TEST(Potentials, JsonRoundTrip) {
    auto p = example_potential();
    auto q = potential_from_json(potential_to_json(p));
    EXPECT_EQ(q.b1, p.b1);
    EXPECT_EQ(q.type_tag, 3);
    json b = json::parse(R"({"builder": "s6_case3", "h1": {"num": [[0,0],[1,0]]}, "h2": {"num": [[0,0]]},
                             "h10": {"num": [["1/2", 0]]}, "h30": {"num": [[1,0]]}, "h40": {"num": [[0,1]], "den": [[1,0],[1,0]]}})");
    auto r = potential_from_json(b);
    EXPECT_EQ(r.label, "s6_case3");
    EXPECT_FALSE(r.poles.empty());
    EXPECT_THROW(potential_from_json(json::parse(R"({"builder": "nope"})")), std::invalid_argument);
    EXPECT_THROW(potential_from_json(json::parse(R"({"m": 4, "pairs": []})")), std::invalid_argument);
    EXPECT_THROW(rational_from_json(json::parse(R"({"num": [["x", 0]]})")), std::invalid_argument);
}

TEST(TorusPeriods, ConstantsGiveZero) {
    auto r = torus_integral_check(c(2), c(1, 1), c(-3), ContourPath::circle(0, 1.0));
    EXPECT_LT(r.max_abs(), 1e-10);
}

TEST(TorusPeriods, RandomFunctionsGiveNonzeroPeriods) {
    // h1 = 1/z has residue 1 at the origin
    auto r = torus_integral_check(Z, c(1) / Z, c(1) / (Z - c(0, 1) * RF(QI(mpq_class(1, 2)))), ContourPath::circle(0, 1.0));
    EXPECT_NEAR(std::abs(r.periods[0] - cplx(0, 2 * M_PI)), 0.0, 1e-9);
    EXPECT_GT(r.max_abs(), 1.0);
    EXPECT_THROW(torus_integral_check(c(1), c(1) / (Z - c(1)), c(1), ContourPath::segment(0, 2)), std::domain_error);
}

TEST(TorusPeriods, ExampleConstruction) {
    // h1 = h2 = a', h0 = b'/a' for meromorphic a, b: first-level periods vanish,
    // second-level ones equal -2 * (contour integral of b da), which is reported.
    RF a = Z + c(1) / Z, b = c(1) / (Z * Z) + Z;
    RF h1 = a.derivative(), h0 = b.derivative() / a.derivative();
    auto r = torus_integral_check(h0, h1, h1, ContourPath::circle(0, 0.5));
    for (int k = 0; k < 4; ++k) EXPECT_LT(std::abs(r.periods[k]), 1e-9) << k;
    // contour integral of b a' over |z| = 1/2: residue of (1/z^2 + z)(1 - 1/z^2) at 0 is 0 ... computed by quadrature below
    cplx ref = 0;
    const int n = 20000;
    for (int k = 0; k < n; ++k) {
        const double t = (k + 0.5) / n;
        const cplx z = 0.5 * std::exp(cplx(0, 2 * M_PI * t)), dz = cplx(0, 2 * M_PI) * z / double(n);
        ref += b.eval(z) * a.derivative().eval(z) * dz;
    }
    EXPECT_LT(std::abs(r.periods[4] - (-2.0 * ref)), 1e-7);
}
