#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "heatlab/errors.hpp"
#include "heatlab/modal.hpp"
#include "heatlab/sampling.hpp"

using namespace heatlab;

namespace {

SymTensor3 iso(double v) { return SymTensor3::isotropic(v); }

void expect_coeffs(const Poly& p, std::vector<double> c) {
    ASSERT_EQ(p.coeffs.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_DOUBLE_EQ(p.coeffs[i], c[i]) << i;
}

}  // namespace

TEST(Spectrum, Dirichlet) {
    const auto l = laplacian_eigenvalues({BoundaryKind::Dirichlet, std::numbers::pi, 3, 1.0});
    ASSERT_EQ(l.size(), 3u);
    EXPECT_NEAR(l[0], 1, 1e-14);
    EXPECT_NEAR(l[1], 4, 1e-14);
    EXPECT_NEAR(l[2], 9, 1e-14);
}

TEST(Spectrum, Neumann) {
    const auto l = laplacian_eigenvalues({BoundaryKind::Neumann, std::numbers::pi, 3, 1.0});
    EXPECT_EQ(l[0], 0.0);
    EXPECT_NEAR(l[1], 1, 1e-14);
    EXPECT_NEAR(l[2], 4, 1e-14);
}

TEST(Spectrum, Ascending) {
    for (double L : {0.1, 1.0, 7.3}) {
        const auto l = laplacian_eigenvalues({BoundaryKind::Dirichlet, L, 50, 1.0});
        for (std::size_t i = 1; i < l.size(); ++i) EXPECT_GT(l[i], l[i - 1]);
    }
}

TEST(Spectrum, DiscreteEigenvalueApproachesContinuous) {
    const double L = std::numbers::pi;
    for (int N : {50, 100, 200}) {
        const double dx = L / (N + 1);
        EXPECT_NEAR(discrete_laplacian_eigenvalue(1, L, dx), 1.0, dx * dx / 12 * 1.01);
    }
}

TEST(CharacteristicPoly, Examples) {
    expect_coeffs(characteristic_poly(QuintanillaParams{1, iso(1), iso(2)}, 1), {1, 1, 2, 1});
    expect_coeffs(characteristic_poly(BurgersParams{1, 2, 1, 1}, 3), {1, 2, 7, 3});
    expect_coeffs(characteristic_poly(JeffreysParams{2, iso(3), iso(0.5)}, 2), {2, 1 + 2 * 2 * 0.5, 6});
    EXPECT_THROW(characteristic_poly(GKParams{0, 1, ThetaFunction::constant(1)}, 1), InvalidKind);
}

TEST(CharacteristicPoly, GN3WithoutDampingIsQuadratic) {
    const auto p = characteristic_poly(GN3Params{iso(1), iso(0)}, 4);
    EXPECT_EQ(p.degree(), 2);
    expect_coeffs(p, {1, 0, 4});
}

TEST(Discriminant, ZeroEigenvalue) { EXPECT_EQ(mgt_discriminant(1, 1, 1, 0), 0.0); }

TEST(Discriminant, UnitParameters) {
    // w^3 + w^2 + w + 1 = (w + 1)(w^2 + 1): roots -1, +i, -i
    EXPECT_NEAR(mgt_discriminant(1, 1, 1, 1), -16.0, 1e-12);
    EXPECT_NEAR(cubic_discriminant({{1, 1, 1, 1}}), -16.0, 1e-12);
}

TEST(Discriminant, NegativeForLargeEigenvalues) {
    EXPECT_LT(mgt_discriminant(1, 1, 1, 1e3), 0);
    for (double l = 1; l < 1e4; l *= 1.37) EXPECT_LT(mgt_discriminant(1, 1, 1, l), 0);
}

TEST(Discriminant, MatchesRootProductAndStructure) {
    Rng rng(103);
    for (int i = 0; i < 10000; ++i) {
        const double tau = uniform(rng, 0.1, 3), kappa = uniform(rng, 0.1, 3), xi = uniform(rng, 0.1, 3);
        const double lt = std::exp(uniform(rng, std::log(1e-2), std::log(1e2)));
        const double D = mgt_discriminant(tau, kappa, xi, lt);
        const RootSet r = solve_poly({{tau, 1, lt * kappa, lt * xi}});
        cplx prod = 1;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) prod *= (r.roots[a] - r.roots[b]) * (r.roots[a] - r.roots[b]);
        const double ref = std::pow(tau, 4) * prod.real();
        ASSERT_NEAR(D, ref, 1e-6 * std::max(1.0, std::abs(ref)));
        int complex_roots = 0;
        for (const auto& w : r.roots) complex_roots += w.imag() != 0.0;
        if (std::abs(D) > 1e-8 * std::max(1.0, std::abs(ref))) ASSERT_EQ(D < 0, complex_roots == 2);
    }
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify_mode({{cplx(0, 2), cplx(0, -2)}}), ModeClass::NeutralOscillation);
    EXPECT_EQ(classify_mode({{cplx(-0.57, 0), cplx(-0.215, 1.307), cplx(-0.215, -1.307)}}),
              ModeClass::OscillatoryDecaying);
    EXPECT_EQ(classify_mode({{cplx(0.1, 0), cplx(-1, 0), cplx(-2, 0)}}), ModeClass::Unstable);
    EXPECT_EQ(classify_mode({{cplx(-1, 0), cplx(-2, 0)}}), ModeClass::Decaying);
}

TEST(ModalSolution, Examples) {
    const ModalSolution a({{cplx(-1, 0), cplx(-2, 0)}}, {1, -1});
    for (double t : {0.0, 0.5, 2.0}) EXPECT_NEAR(a(t), std::exp(-t), 1e-12);
    const ModalSolution b({{cplx(0, 1), cplx(0, -1)}}, {1, 0});
    for (double t : {0.0, 0.5, 2.0}) EXPECT_NEAR(b(t), std::cos(t), 1e-12);
}

TEST(ModalSolution, ReproducesInitialData) {
    Rng rng(107);
    for (int i = 0; i < 500; ++i) {
        const Poly p{{uniform(rng, 0.5, 2), uniform(rng, 0.1, 2), uniform(rng, 0.1, 3), uniform(rng, 0.1, 3)}};
        const RootSet r = solve_poly(p);
        const std::vector<double> init{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
        const ModalSolution T(r, init);
        for (int d = 0; d < 3; ++d)
            ASSERT_NEAR(T.derivative(0, d), init[d], 1e-10 * std::max(1.0, std::abs(init[d])));
    }
}

TEST(ModalSolution, RepeatedRootsRejected) {
    EXPECT_THROW(ModalSolution({{cplx(-1, 0), cplx(-1, 0)}}, {1, 0}), RepeatedRoot);
    EXPECT_THROW(ModalSolution({{cplx(-1, 0), cplx(-2, 0)}}, {1}), InvalidInput);
}

TEST(ModalAnalysis, StableMGTParameters) {
    const auto reports = modal_analysis(QuintanillaParams{1, iso(1), iso(2)},
                                        {BoundaryKind::Dirichlet, std::numbers::pi, 200, 1.0});
    for (const auto& r : reports) {
        EXPECT_TRUE(r.rh_pass);
        EXPECT_TRUE(r.cls == ModeClass::Decaying || r.cls == ModeClass::OscillatoryDecaying);
        ASSERT_TRUE(r.discriminant.has_value());
    }
}

TEST(ModalAnalysis, UnstableMGTParameters) {
    const auto reports = modal_analysis(QuintanillaParams{1, iso(1), iso(0.5)},
                                        {BoundaryKind::Dirichlet, std::numbers::pi, 200, 1.0});
    bool unstable = false;
    for (const auto& r : reports) unstable = unstable || r.cls == ModeClass::Unstable;
    EXPECT_TRUE(unstable);
}

TEST(ModalAnalysis, UndampedGN3IsNeutral) {
    const auto reports = modal_analysis(GN3Params{iso(1), iso(0)},
                                        {BoundaryKind::Dirichlet, 1.0, 30, 1.0});
    for (const auto& r : reports) EXPECT_EQ(r.cls, ModeClass::NeutralOscillation);
}

TEST(ModalAnalysis, BurgersStableWhenFullyConsistent) {
    Rng rng(109);
    for (int i = 0; i < 300; ++i) {
        const double lambda = uniform(rng, 0.1, 2), tau = uniform(rng, 0.1, 2), mu = uniform(rng, 0.05, 2);
        const double nu = mu * lambda / (tau * tau) * uniform(rng, 1.0, 3.0);
        const auto reports = modal_analysis(BurgersParams{lambda, tau, mu, nu},
                                            {BoundaryKind::Dirichlet, 1.0, 40, 1.0});
        for (const auto& r : reports) ASSERT_TRUE(r.rh_pass);
    }
    // lambda < 0 is never reported stable
    const auto bad = modal_analysis(BurgersParams{-1, 1, 1, 1}, {BoundaryKind::Dirichlet, 1.0, 10, 1.0});
    for (const auto& r : bad) EXPECT_FALSE(r.rh_pass);
}
