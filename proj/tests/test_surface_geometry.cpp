#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wll/potentials.hpp"
#include "wll/surface_geometry.hpp"

using namespace wll;

namespace {

const cplx kI(0, 1);

// inverse stereographic image of a map into R^k
SurfaceMap lifted_plane_map(std::string name, std::size_t k, std::function<VJet(const Jet2&, const Jet2&)> plane) {
    SurfaceMap m;
    m.name = std::move(name);
    m.dim = k + 1;
    m.jet = [plane](const Jet2& z, const Jet2& zb) {
        const VJet p = plane(z, zb);
        const Jet2 p2 = euclid(p, p), inv = inverse(1.0 + p2);
        VJet y;
        for (const auto& c : p) y.push_back(2.0 * c * inv);
        y.push_back((p2 - 1.0) * inv);
        return y;
    };
    m.sample = [f = m.jet](cplx z) {
        const VJet y = f(Jet2(0, z), Jet2(0, std::conj(z)));
        Eigen::VectorXd out(static_cast<Eigen::Index>(y.size()));
        for (std::size_t i = 0; i < y.size(); ++i) out(static_cast<Eigen::Index>(i)) = y[i].value().real();
        return out;
    };
    return m;
}

std::vector<cplx> generic_points() {
    return {cplx(0.31, 0.42), cplx(-0.53, 0.21), cplx(0.12, -0.64), cplx(0.77, 0.35), cplx(-0.9, -0.8), cplx(1.2, 0.4)};
}

double field_max(const SurfaceReport& r, const std::string& key) { return r.max.at(key); }

}  // namespace

TEST(SurfaceJet, RoundSphereIsTotallyUmbilic) {
    for (std::size_t dim : {4u, 6u}) {
        const SurfaceMap m = round_sphere(dim);
        for (cplx z : generic_points()) {
            const SurfaceJet j = jet_from_map(m, z);
            EXPECT_LT(max_invariant_residual(j), 1e-13);
            EXPECT_EQ(j.normal_frame.size(), dim - 3);
            for (const auto& k : j.kappa) EXPECT_LT(std::abs(k.value()), 1e-13);
            // the chart is a Moebius image of the flat coordinate, whose Schwarzian vanishes
            EXPECT_LT(std::abs(j.s.value()), 1e-13);
            EXPECT_LT(willmore_residual(j), 1e-13);
        }
    }
    EXPECT_THROW(round_sphere(3), std::invalid_argument);
    SurfaceMap two_sphere = round_sphere(4);
    two_sphere.dim = 3;
    EXPECT_THROW(jet_from_map(two_sphere, 0.5), std::invalid_argument);
}

TEST(SurfaceJet, NormalFrameIsOrthonormalAndNormal) {
    const SurfaceJet j = jet_from_map(example_surface(1.0), cplx(0.4, 0.3));
    ASSERT_EQ(j.normal_frame.size(), 4u);
    for (std::size_t a = 0; a < 4; ++a) {
        const VJet& p = j.normal_frame[a];
        for (std::size_t b = 0; b < 4; ++b)
            EXPECT_NEAR(std::abs(lorentz(p, j.normal_frame[b]).value()), a == b ? 1.0 : 0.0, 1e-13);
        for (const VJet* t : {&j.Y, &j.Yz, &j.Yzb, &j.N}) EXPECT_LT(std::abs(lorentz(p, *t).value()), 1e-13);
        for (const auto& c : p) EXPECT_LT(std::abs(c.value().imag()), 1e-14);
    }
}

TEST(SurfaceJet, NonConformalInputIsRejectedWithResidual) {
    const SurfaceMap stretched = lifted_plane_map("stretched", 3, [](const Jet2& z, const Jet2& zb) {
        return VJet{(z + zb) * cplx(0.5, 0), (z - zb) / kI, Jet2(z.order(), 0.0)};
    });
    try {
        jet_from_map(stretched, cplx(0.2, 0.1));
        FAIL() << "expected NonConformal";
    } catch (const NonConformal& e) {
        EXPECT_GT(e.residual(), 0.1);
    }
}

TEST(SurfaceJet, BranchPointIsReported) {
    const SurfaceMap squared = lifted_plane_map("squared", 3, [](const Jet2& z, const Jet2& zb) {
        return VJet{(z * z + zb * zb) * cplx(0.5, 0), (z * z - zb * zb) / (2.0 * kI), Jet2(z.order(), 0.0)};
    });
    EXPECT_THROW(jet_from_map(squared, 0.0), BranchPoint);
    EXPECT_NO_THROW(jet_from_map(squared, 0.5));
    const SurfaceReport r = verify_surface(squared, {0.0, 0.5});
    ASSERT_EQ(r.quarantine.size(), 1u);
    EXPECT_EQ(r.quarantine.front(), 0u);
}

TEST(ExampleSurface, ChartAtInfinityIsTheSameMap) {
    for (cplx l : {cplx(1, 0), kI, std::polar(1.0, std::numbers::pi / 3)}) {
        const SurfaceMap a = example_surface(l), b = example_surface_at_infinity(l);
        for (cplx w : generic_points()) {
            EXPECT_LT((b.sample(w) - a.sample(1.0 / w)).norm(), 1e-14);
            EXPECT_LT((a.sample(w) - closed_form_example(w, l)).norm(), 1e-15);
        }
    }
}

TEST(ExampleSurface, PredicatesOnTheDisk) {
    const SurfaceReport r = verify_surface(example_surface(std::polar(1.0, std::numbers::pi / 3)), parse_grid("disk:1.5:20"));
    EXPECT_TRUE(r.quarantine.empty());
    EXPECT_LE(field_max(r, "unit_norm"), 1e-12);
    EXPECT_LE(field_max(r, "conformality"), 1e-9);
    EXPECT_LE(field_max(r, "invariants"), 1e-9);
    EXPECT_LE(field_max(r, "willmore"), 1e-6);
    EXPECT_LE(field_max(r, "isotropy"), 1e-6);
    EXPECT_LE(field_max(r, "b1_condition"), 1e-6);
    EXPECT_LE(field_max(r, "b1_isotropy"), 1e-6);
    EXPECT_LE(field_max(r, "harmonicity"), 1e-6);
    std::size_t generic = 0, rank2 = 0;
    for (std::size_t k = 0; k < r.s_willmore_field.size(); ++k) {
        generic += r.s_willmore_field[k] >= 0.1 ? 1 : 0;
        rank2 += r.b1_rank_field[k] == 2 ? 1 : 0;
    }
    EXPECT_EQ(generic, r.s_willmore_field.size());
    EXPECT_EQ(rank2, r.b1_rank_field.size());
}

TEST(ExampleSurface, SampleCloudIsFull) {
    const auto grid = parse_grid("disk:1.5:20");
    Eigen::MatrixXd cloud(7, static_cast<Eigen::Index>(grid.size()));
    for (std::size_t k = 0; k < grid.size(); ++k) cloud.col(static_cast<Eigen::Index>(k)) = closed_form_example(grid[k], 1.0);
    EXPECT_GT(fullness_proxy(cloud), 1e-3);
    // a round 2-sphere padded into R^7 is not full
    const SurfaceMap s = round_sphere(7);
    for (std::size_t k = 0; k < grid.size(); ++k) cloud.col(static_cast<Eigen::Index>(k)) = s.sample(grid[k]);
    EXPECT_LT(fullness_proxy(cloud), 1e-12);
}

TEST(Integrability, HoldsOnExampleAndControls) {
    const auto grid = generic_points();
    for (const SurfaceMap& m : {example_surface(1.0), example_surface(kI), round_sphere(4), perturbed_sphere(0.3), cmc_torus(0.6)}) {
        const SurfaceReport r = verify_surface(m, grid);
        ASSERT_TRUE(r.quarantine.empty()) << m.name;
        EXPECT_LT(field_max(r, "gauss"), 1e-6) << m.name;
        EXPECT_LT(field_max(r, "codazzi"), 1e-6) << m.name;
        EXPECT_LT(field_max(r, "ricci"), 1e-6) << m.name;
    }
}

TEST(Integrability, MisScaledLiftFires) {
    JetOptions opt;
    opt.omega_scale = 1.01;
    for (const SurfaceMap& m : {example_surface(1.0), perturbed_sphere(0.3)}) {
        const SurfaceReport r = verify_surface(m, generic_points(), opt);
        EXPECT_GT(field_max(r, "gauss"), 1e-4) << m.name;
        EXPECT_GT(r.min.at("invariants"), 1e-5) << m.name;
    }
}

TEST(WillmoreControls, FlatTorusIsNotWillmoreUnlessClifford) {
    const SurfaceReport bad = verify_surface(cmc_torus(0.6), generic_points());
    EXPECT_GT(bad.min.at("willmore"), 1e-3);
    EXPECT_GT(bad.min.at("harmonicity"), 1e-3);
    EXPECT_GT(bad.min.at("isotropy"), 1e-2);
    EXPECT_GT(bad.min.at("b1_isotropy"), 1e-2);
    const SurfaceReport clifford = verify_surface(cmc_torus(1 / std::sqrt(2.0)), generic_points());
    EXPECT_LT(clifford.max.at("willmore"), 1e-12);
    EXPECT_LT(clifford.max.at("harmonicity"), 1e-12);
}

TEST(WillmoreControls, FrameAlgebraicConditionHoldsForEverySurface) {
    // B_1^t I_{1,3} B_1 = 0 and the block shape follow from the frame alone, so they cannot separate
    // Willmore from non-Willmore inputs; harmonicity does.
    const SurfaceReport r = verify_surface(cmc_torus(0.6), generic_points());
    EXPECT_LT(r.max.at("b1_condition"), 1e-12);
    EXPECT_LT(r.max.at("b1_shape"), 1e-12);
    EXPECT_GT(r.min.at("harmonicity"), 1e-3);
}

TEST(WillmoreControls, HolomorphicGraphPerturbationBreaksWillmore) {
    const auto grid = generic_points();
    const SurfaceReport base = verify_surface(holomorphic_graph(example_surface(1.0), 0.0), grid);
    const SurfaceReport pert = verify_surface(holomorphic_graph(example_surface(1.0), 1e-3), grid);
    EXPECT_LT(base.max.at("willmore"), 1e-12);
    EXPECT_LT(pert.max.at("conformality"), 1e-12);
    EXPECT_GT(pert.min.at("willmore"), 1e6 * base.max.at("willmore"));
    EXPECT_GT(pert.min.at("harmonicity"), 1e6 * base.max.at("harmonicity"));
    const SurfaceMap flat = holomorphic_graph(example_surface(1.0), 0.0);
    for (cplx z : grid) {
        const Eigen::VectorXd y = flat.sample(z);
        EXPECT_LT((y.head(7) - closed_form_example(z, 1.0)).norm(), 1e-14);
        EXPECT_LT(y.tail(2).norm(), 1e-15);
    }
}

TEST(ChartCovariance, PredicatesTransformUnderAffineCharts) {
    const cplx a(0.6, 1.2), b(0.1, -0.2);
    const double s = std::abs(a);
    // kappa picks up a^2/|a| and D_zbar D_zbar kappa a further |a|^2 in norm
    const SurfaceMap torus = cmc_torus(0.6), torus_c = rescaled(torus, a, b);
    const SurfaceMap ex = example_surface(kI), ex_c = rescaled(ex, a, b);
    for (cplx w : generic_points()) {
        const SurfaceJet tz = jet_from_map(torus, a * w + b), tw = jet_from_map(torus_c, w);
        EXPECT_NEAR(isotropy_and_swillmore(tw).isotropy, s * s * isotropy_and_swillmore(tz).isotropy, 1e-12);
        EXPECT_NEAR(willmore_residual(tw), s * s * s * willmore_residual(tz), 1e-12);
        const SurfaceJet ez = jet_from_map(ex, a * w + b), ew = jet_from_map(ex_c, w);
        EXPECT_NEAR(isotropy_and_swillmore(ew).s_willmore, isotropy_and_swillmore(ez).s_willmore, 1e-9);
        const GaussMapValue gz = conformal_gauss_map(ez), gw = conformal_gauss_map(ew);
        EXPECT_EQ(gw.b1_rank, gz.b1_rank);
        // the conformal Gauss map is a chart-independent subspace
        EXPECT_LT((gw.projector - gz.projector).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(SampledMaps, FiniteDifferenceJetsOfTheExample) {
    const SurfaceReport r = verify_surface(sampled(example_surface(1.0)), generic_points());
    EXPECT_TRUE(r.quarantine.empty());
    EXPECT_LE(field_max(r, "invariants"), 1e-6);
    EXPECT_LE(field_max(r, "willmore"), 1e-6);
    EXPECT_LE(field_max(r, "isotropy"), 1e-6);
    EXPECT_GE(r.min.at("s_willmore"), 0.1);
    const SurfaceJet exact = jet_from_map(example_surface(1.0), cplx(0.3, 0.2));
    const SurfaceJet fd = jet_from_map(sampled(example_surface(1.0)), cplx(0.3, 0.2));
    EXPECT_FALSE(fd.exact);
    for (std::size_t k = 0; k < 7; ++k)
        for (int a = 0; a <= 5; ++a)
            for (int b = 0; a + b <= 5; ++b)
                EXPECT_NEAR(std::abs(fd.y[k].coeff(a, b) - exact.y[k].coeff(a, b)), 0.0, 1e-6) << k << ' ' << a << ' ' << b;
}

TEST(SampledMaps, DpwSurfaceOfTheExamplePotential) {
    const SurfaceMap m = dpw_surface(example_potential(), kI);
    const auto grid = std::vector<cplx>{cplx(0.3, 0.4), cplx(-0.6, 0.5)};
    for (cplx z : grid) EXPECT_LT((m.sample(z) - closed_form_example(z, kI)).norm(), 1e-9);
    const SurfaceReport r = verify_surface(m, grid);
    EXPECT_TRUE(r.quarantine.empty());
    EXPECT_LE(field_max(r, "willmore"), 1e-6);
    EXPECT_LE(field_max(r, "isotropy"), 1e-6);
    EXPECT_GE(r.min.at("s_willmore"), 0.1);
    EXPECT_EQ(r.min.at("b1_rank"), 2);
}

TEST(SampledMaps, RankOnePotentialGivesSWillmoreDualPair) {
    const RF z = RF::z();
    const RVec w{RF(1) + z * z, RF(1) - z * z, RF(2) * z, RF(0)};
    const NormalizedPotential p = assemble({ColumnPair::kind_ii(w)});
    const std::vector<cplx> grid{cplx(0.3, 0.4), cplx(-0.5, 0.3)};
    Eigen::VectorXd first, second;
    for (std::size_t branch : {0u, 1u}) {
        const SurfaceReport r = verify_surface(dpw_surface(p, 1.0, branch), grid);
        ASSERT_TRUE(r.quarantine.empty());
        EXPECT_LE(r.max.at("s_willmore"), 1e-6);
        EXPECT_LE(r.max.at("willmore"), 1e-6);
        EXPECT_EQ(r.max.at("b1_rank"), 1);
    }
    // the two branches are different surfaces
    EXPECT_GT((dpw_surface(p, 1.0, 0).sample(grid[0]) - dpw_surface(p, 1.0, 1).sample(grid[0])).norm(), 1e-3);
}

TEST(WillmoreEnergy, RoundSphereVanishes) {
    const EnergyEstimate e = willmore_energy(round_sphere(4), inverted_chart(round_sphere(4)), {4, 8});
    EXPECT_LT(std::abs(e.value), 1e-10);
}

TEST(WillmoreEnergy, ExampleConvergesAndIsChartInvariant) {
    const EnergyEstimate e = willmore_energy(example_surface(1.0), example_surface_at_infinity(1.0));
    EXPECT_GT(e.value, 0);
    EXPECT_GE(e.observed_order, 2.0);
    // z -> 2z: the chart at infinity becomes w -> w/2
    const EnergyEstimate s = willmore_energy(rescaled(example_surface(1.0), 2.0), rescaled(example_surface_at_infinity(1.0), 0.5));
    EXPECT_LT(std::abs(s.value - e.value), std::max(s.error, e.error));
    // inverting through the generic chart agrees with the cleared-denominator chart
    const EnergyEstimate g = willmore_energy(example_surface(1.0), inverted_chart(example_surface(1.0)), {16});
    EXPECT_LT(std::abs(g.value - e.value), 1e-8 * e.value);
}
