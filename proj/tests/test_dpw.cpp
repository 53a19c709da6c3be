#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "wll/dpw.hpp"

using namespace wll;

namespace {

CMat random_loop_coefficient(Eigen::Index n, bool even, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMat a = CMat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (k_block(i, j) == even) a(i, j) = cplx(g(rng), g(rng));
    return a;
}

}  // namespace

TEST(ClosedForm, OriginAndUnitPoint) {
    const Eigen::VectorXd x0 = closed_form_example(0.0, 1.0);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(7);
    e(0) = 1;
    EXPECT_LT((x0 - e).norm(), 1e-15);
    Eigen::VectorXd want(7);
    want << -1.0 / 3, 0, 20.0 / 9, 0, 11.0 / 6, 0, 7.0 / 3;
    want *= 18.0 / 67;
    EXPECT_LT((closed_form_example(1.0, 1.0) - want).norm(), 1e-15);
}

TEST(ClosedForm, UnitNormOnRandomSamples) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 1000; ++k) {
        const cplx z(u(rng), u(rng));
        const cplx l = std::polar(1.0, u(rng));
        EXPECT_NEAR(closed_form_example(z, l).norm(), 1.0, 1e-12);
    }
}

TEST(IntegratePotential, ExampleIsExactAndShallow) {
    const ExactLoopFrame f = integrate_potential_exact(example_potential());
    EXPECT_TRUE(f.maurer_cartan_exact());
    EXPECT_LE(f.depth(), 3);
    EXPECT_GE(f.depth(), 1);
    const LoopMatrix at0 = f.eval(0.0);
    EXPECT_LT((at0.eval(0.7) - CMat::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_TRUE(f.eval(cplx(0.3, -1.1)).is_twisted());
}

TEST(IntegratePotential, ConstantNilpotentIsExponential) {
    // a constant kind-ii column pair: b = (w, i w) with w lightlike-isotropic
    const RVec w{RF(1), RF(1), RF(0), RF(0)};
    const NormalizedPotential p = assemble({ColumnPair::kind_ii(w)});
    const ExactLoopFrame f = integrate_potential_exact(p);
    EXPECT_TRUE(f.maurer_cartan_exact());
    const cplx z(0.4, 0.9), lam = std::polar(1.0, 0.3);
    const Mat<cplx> e = eval_matrix(p.eta_minus1(), 0.0);
    CMat n(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) n(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = e(i, j);
    CMat expo = CMat::Identity(6, 6), term = CMat::Identity(6, 6);
    for (int k = 1; k < 8; ++k) {
        term = term * n * (z / lam) / static_cast<double>(k);
        expo += term;
    }
    EXPECT_LT((f.eval(z).eval(lam) - expo).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(IntegratePotential, NonNilpotentInputIsRejected) {
    NormalizedPotential p = example_potential();
    // entries of both signs break isotropy, so products of the potential no longer vanish
    p.b1(0, 0) = RF(1);
    p.b1(2, 1) = RF(2);
    EXPECT_THROW(integrate_potential_exact(p), NonTerminatingSeries);
}

TEST(IntegratePotential, NumericMatchesExact) {
    const NormalizedPotential p = example_potential();
    const ExactLoopFrame exact = integrate_potential_exact(p);
    const cplx z(0.8, -0.5);
    const LoopMatrix num = integrate_potential_numeric(p, 0.0, z, nilpotency_depth(p));
    const LoopMatrix ex = exact.eval(z);
    for (cplx l : unit_circle_samples(6)) EXPECT_LT((num.eval(l) - ex.eval(l)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Iwasawa, IdentityLoop) {
    LoopMatrix id(8);
    id.set(0, CMat::Identity(8, 8));
    const IwasawaResult r = iwasawa_at_point(id);
    ASSERT_TRUE(r.ok) << r.failure;
    EXPECT_LT((r.frame.eval(1.0) - CMat::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((r.plus.eval(0.3) - CMat::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Iwasawa, RealConstantLoopIsItsOwnFrame) {
    // block rotation diag(boost, rotation), real and lambda independent
    CMat k = CMat::Identity(8, 8);
    const double t = 0.7, a = 1.1;
    k(0, 0) = std::cosh(t); k(0, 2) = std::sinh(t); k(2, 0) = std::sinh(t); k(2, 2) = std::cosh(t);
    k(4, 4) = std::cos(a); k(4, 6) = -std::sin(a); k(6, 4) = std::sin(a); k(6, 6) = std::cos(a);
    LoopMatrix f(8);
    f.set(0, k);
    const IwasawaResult r = iwasawa_at_point(f);
    ASSERT_TRUE(r.ok) << r.failure;
    EXPECT_LT((r.frame.eval(cplx(0, 1)) - k).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((r.plus.eval(0.5) - CMat::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Iwasawa, ExampleFrameProperties) {
    const ExactLoopFrame f = integrate_potential_exact(example_potential());
    for (cplx z : {cplx(0.3, 0.2), cplx(-1.2, 0.7), cplx(0, 1.5)}) {
        const IwasawaResult r = iwasawa_at_point(f.eval(z));
        ASSERT_TRUE(r.ok) << r.failure;
        EXPECT_TRUE(r.twisted);
        EXPECT_LT(r.reality_residual, 1e-9);
        EXPECT_LT(r.group_residual, 1e-9);
        EXPECT_LT(r.reconstruction_residual, 1e-9);
        EXPECT_TRUE(in_solvable_subgroup(r.plus.at(0), 1e-8));
        EXPECT_GT(r.frame.eval(1.0)(0, 0).real(), 0);
    }
}

TEST(Iwasawa, SeedIndependence) {
    const ExactLoopFrame f = integrate_potential_exact(example_potential());
    const LoopMatrix fm = f.eval(cplx(0.9, -0.4));
    IwasawaOptions a, b;
    b.seed = 99;
    const IwasawaResult ra = iwasawa_at_point(fm, a), rb = iwasawa_at_point(fm, b);
    ASSERT_TRUE(ra.ok && rb.ok);
    for (cplx l : unit_circle_samples(8)) EXPECT_LT((ra.frame.eval(l) - rb.frame.eval(l)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Iwasawa, SolvableNormalizationOfRandomGroupElement) {
    std::mt19937_64 rng(11);
    // exp of a random complex block-diagonal element of so(1,3) + so(4)
    const CMat g = lorentz_metric(8).cast<cplx>();
    CMat x = random_loop_coefficient(8, true, rng);
    x = (x - g * x.transpose() * g) / 2.0;
    CMat b = CMat::Identity(8, 8), term = CMat::Identity(8, 8);
    for (int k = 1; k < 40; ++k) {
        term = term * x / static_cast<double>(k);
        b += term;
    }
    const SNormalization sn = s_normalize(b);
    ASSERT_TRUE(sn.ok) << sn.failure;
    EXPECT_TRUE(in_solvable_subgroup(sn.s, 1e-8));
    const Eigen::MatrixXd gi = lorentz_metric(8);
    EXPECT_LT((sn.k.transpose() * gi * sn.k - gi).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((b * sn.k.cast<cplx>() - sn.s).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ProjectSurface, IdentityFrameProjectsToAntipode) {
    // phi_1 - phi_2 = (1, -1, 0, ...) is lightlike, so the identity frame is a valid input
    const Eigen::VectorXd x = project_surface(RMatD::Identity(8, 8));
    Eigen::VectorXd want = Eigen::VectorXd::Zero(7);
    want(0) = -1;
    EXPECT_LT((x - want).norm(), 1e-15);
}

TEST(ProjectSurface, RejectsNonLightlikeAndInfinity) {
    RMatD f = RMatD::Identity(8, 8);
    f(0, 1) = 0.5;
    EXPECT_THROW(project_surface(f), ProjectionError);
    RMatD g = RMatD::Zero(8, 8);
    g(1, 0) = 1; g(2, 1) = 1;
    EXPECT_THROW(project_surface(g), ProjectionError);
}

TEST(Pipeline, ExampleMatchesClosedFormAtSamplePoints) {
    const FrameEvaluator ev(example_potential());
    for (cplx z : {cplx(0, 0), cplx(1, 0), cplx(0.5, 0.2), cplx(1.2, -0.7), cplx(-1.4, 0.3)}) {
        const FramePoint fp = ev.at(z);
        ASSERT_TRUE(fp.iwasawa.ok) << fp.iwasawa.failure;
        ASSERT_TRUE(fp.gauge.ok) << fp.gauge.failure;
        EXPECT_FALSE(fp.gauge.ambiguous);
        for (cplx l : {cplx(1, 0), cplx(0, 1), std::polar(1.0, std::numbers::pi / 3)}) {
            const Eigen::VectorXd x = project_surface(fp.adapted_frame_at(l));
            EXPECT_LT((x - closed_form_example(z, l)).norm(), 1e-9) << z << " " << l;
        }
    }
}

TEST(Pipeline, FrameIsIdentityAtBasePoint) {
    const FramePoint fp = FrameEvaluator(example_potential()).at(0.0);
    ASSERT_TRUE(fp.iwasawa.ok);
    EXPECT_LT((fp.frame_at(cplx(0, 1)) - RMatD::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pipeline, MaurerCartanFormHasThreeLambdaModes) {
    const FrameEvaluator ev(example_potential());
    const cplx z(0.6, 0.4);
    const double h = 1e-4;
    const FramePoint c = ev.at(z), xp = ev.at(z + h), xm = ev.at(z - h), yp = ev.at(z + cplx(0, h)),
                     ym = ev.at(z - cplx(0, h));
    const int nl = 16;
    const auto samples = unit_circle_samples(nl);
    // Fourier modes of F^{-1} F_z over lambda
    std::vector<CMat> modes(nl, CMat::Zero(8, 8));
    for (int s = 0; s < nl; ++s) {
        const cplx l = samples[static_cast<std::size_t>(s)];
        const CMat fx = (xp.frame_at(l) - xm.frame_at(l)).cast<cplx>() / (2 * h);
        const CMat fy = (yp.frame_at(l) - ym.frame_at(l)).cast<cplx>() / (2 * h);
        const CMat az = c.frame_at(l).inverse().cast<cplx>() * (fx - cplx(0, 1) * fy) / 2.0;
        for (int k = 0; k < nl; ++k) modes[static_cast<std::size_t>(k)] += az * std::pow(l, -(k - nl / 2)) / double(nl);
    }
    for (int k = 0; k < nl; ++k) {
        const int power = k - nl / 2;
        const double mag = modes[static_cast<std::size_t>(k)].cwiseAbs().maxCoeff();
        if (power == -1 || power == 0) EXPECT_GT(mag, 1e-3) << power;
        else EXPECT_LT(mag, 1e-6) << power;
    }
}

TEST(Pipeline, GridParsing) {
    EXPECT_EQ(parse_grid("disk:1.5:20").size(), 400u);
    EXPECT_EQ(parse_grid("rect:-1:1:-1:1:5").size(), 25u);
    EXPECT_EQ(parse_grid("point:0.5:-1").front(), cplx(0.5, -1));
    EXPECT_THROW(parse_grid("square:3"), std::invalid_argument);
    const auto l = parse_lambdas("1,i,deg:60");
    ASSERT_EQ(l.size(), 3u);
    EXPECT_LT(std::abs(l[2] - std::polar(1.0, std::numbers::pi / 3)), 1e-15);
    EXPECT_THROW(parse_lambdas("2"), std::invalid_argument);
}

TEST(Pipeline, TimingOfOnePoint) {
    const FrameEvaluator ev(example_potential());
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < 10; ++k) ev.at(cplx(0.1 * k, 0.05 * k));
    const double per = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 10;
    EXPECT_LT(per, 0.5);
}

TEST(Pipeline, ConstantLightlikeDirectionIsDiagnosed) {
    const RF z = RF::z();
    // both columns proportional to the real lightlike vector (1, 1, 0, 0)
    const NormalizedPotential p = assemble({ColumnPair::kind_i(z, RF(1) + z * z, RF(0), RF(0))});
    ASSERT_EQ(generic_rank(p), 1u);
    const PipelineResult r = run_pipeline(p, parse_grid("disk:1:4"), parse_lambdas("1,i"));
    EXPECT_TRUE(r.quarantine.empty());
    EXPECT_TRUE(r.constant_lightlike);
    for (const auto& s : r.points) EXPECT_TRUE(s.ambiguous);
}

TEST(Pipeline, RankOneDualPairWithoutConstantDirection) {
    const RF z = RF::z();
    // (w, i w) with w isotropic and no constant vector orthogonal to every w(z) being lightlike
    const RVec w{RF(1) + z * z, RF(1) - z * z, RF(2) * z, RF(0)};
    const NormalizedPotential p = assemble({ColumnPair::kind_ii(w)});
    ASSERT_EQ(generic_rank(p), 1u);
    const PipelineResult r = run_pipeline(p, parse_grid("disk:1:4"), parse_lambdas("1"));
    EXPECT_TRUE(r.quarantine.empty());
    EXPECT_FALSE(r.constant_lightlike);
    // off the real axis w(z) is not real, so the kernel plane carries both dual branches
    for (const auto& s : r.points) {
        ASSERT_TRUE(s.ok && s.ambiguous);
        if (std::abs(s.z.imag()) > 1e-9) EXPECT_EQ(s.branches.front().size(), 2u) << s.z;
    }
}

TEST(Pipeline, RationalPotentialsHaveSmallResiduals) {
    std::mt19937_64 rng(5);
    for (int type = 1; type <= 3; ++type) {
        const NormalizedPotential p = random_potential(4, type, rng);
        const PipelineResult r = run_pipeline(p, parse_grid("disk:0.5:4"), parse_lambdas("1,i"));
        EXPECT_TRUE(r.quarantine.empty());
        EXPECT_LT(r.max_reality, 1e-9);
        EXPECT_LT(r.max_group, 1e-9);
        EXPECT_LT(r.max_lightlike, 1e-9);
    }
}

TEST(Pipeline, PoleOnPathIsQuarantined) {
    // h1 = 1 / (z - 1/2) puts a pole on the segment from 0 to 1
    const RF h1 = RF(QPoly(QI(1)), QPoly::z() - QPoly(QI(mpq_class(1, 2))));
    const NormalizedPotential p = assemble({ColumnPair::kind_i(h1, RF(1), RF(0), RF(0))});
    const PipelineResult r = run_pipeline(p, {cplx(1, 0), cplx(0, 0.3)}, parse_lambdas("1"));
    ASSERT_EQ(r.quarantine.size(), 1u);
    EXPECT_EQ(r.quarantine.front(), 0u);
    EXPECT_NE(r.points[0].failure.find("pole"), std::string::npos);
}

TEST(Pipeline, ExampleGridMatchesClosedForm) {
    const ExampleVerification v = verify_example(parse_grid("disk:1.5:8"), parse_lambdas("1,i,deg:60"));
    EXPECT_EQ(v.quarantined, 0u);
    EXPECT_LT(v.fitted_deviation, 1e-8);
    EXPECT_LT(v.gram_deviation_i, 1e-8);
}

TEST(Procrustes, RecoversBlockRotation) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    Eigen::MatrixXd a(7, 30);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(7, 7);
    Eigen::MatrixXd q1 = Eigen::MatrixXd::Random(3, 3), q2 = Eigen::MatrixXd::Random(4, 4);
    r.topLeftCorner(3, 3) = Eigen::HouseholderQR<Eigen::MatrixXd>(q1).householderQ();
    r.bottomRightCorner(4, 4) = Eigen::HouseholderQR<Eigen::MatrixXd>(q2).householderQ();
    const BlockFit fit = block_procrustes(a, r * a, 3);
    EXPECT_LT(fit.max_deviation, 1e-12);
    EXPECT_LT(gram_deviation(a, r * a), 1e-12);
}
