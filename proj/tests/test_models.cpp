#include <gtest/gtest.h>

#include <cmath>

#include "heatlab/errors.hpp"
#include "heatlab/models.hpp"
#include "heatlab/sampling.hpp"

using namespace heatlab;

namespace {

SymTensor3 iso(double v) { return SymTensor3::isotropic(v); }

ThermalState x_state(double q, double g, double gd = 0.0) {
    ThermalState s;
    s.q = {q, 0, 0};
    s.grad_theta = {g, 0, 0};
    s.grad_theta_dot = Vec3{gd, 0, 0};
    return s;
}

void expect_vec(const Vec3& a, const Vec3& b, double tol = 1e-14) {
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], tol) << "component " << i;
}

ThermalState combine(double a, const ThermalState& s1, double b, const ThermalState& s2) {
    ThermalState s = s1;
    s.q = a * s1.q + b * s2.q;
    s.grad_theta = a * s1.grad_theta + b * s2.grad_theta;
    s.qdot = a * *s1.qdot + b * *s2.qdot;
    s.grad_theta_dot = a * *s1.grad_theta_dot + b * *s2.grad_theta_dot;
    s.lap_q = a * *s1.lap_q + b * *s2.lap_q;
    s.grad_div_q = a * *s1.grad_div_q + b * *s2.grad_div_q;
    s.grad_q = a * *s1.grad_q + b * *s2.grad_q;
    return s;
}

}  // namespace

TEST(FluxRate, PureRelaxation) {
    const auto r = flux_rate(MCVParams{1.0, iso(1.0)}, x_state(1, 0));
    EXPECT_EQ(r.order, 1);
    expect_vec(r.value, {-1, 0, 0});
}

TEST(FluxRate, FourierFlux) {
    const auto r = flux_rate(FourierParams{iso(2.0)}, x_state(0, 1));
    EXPECT_EQ(r.order, 0);
    expect_vec(r.value, {-2, 0, 0});
}

TEST(FluxRate, JeffreysSubstitution) {
    const auto r = flux_rate(JeffreysParams{2.0, iso(3.0), iso(1.0)}, x_state(1, 1, 1));
    expect_vec(r.value, {-3, 0, 0});
}

TEST(FluxRate, QuintanillaSecondOrder) {
    ThermalState s = x_state(0, 1, 1);
    s.qdot = Vec3{1, 0, 0};
    const auto r = flux_rate(QuintanillaParams{2.0, iso(3.0), iso(1.0)}, s);
    EXPECT_EQ(r.order, 2);
    expect_vec(r.value, {-(1 + 3 + 1) / 2.0, 0, 0});
}

TEST(FluxRate, BurgersSecondOrder) {
    ThermalState s = x_state(1, 1, 1);
    s.qdot = Vec3{1, 0, 0};
    // lambda qdd = -tau qd - q - mu g - tau nu gd
    const auto r = flux_rate(BurgersParams{0.5, 2.0, 3.0, 1.0}, s);
    expect_vec(r.value, {-(2 + 1 + 3 + 2) / 0.5, 0, 0});
}

TEST(FluxRate, GKOneDimensionalReduction) {
    // 1-D: lap q + 2 grad div q = 3 q_xx
    GKParams p{1.0, 0.5, ThetaFunction::constant(2.0)};
    ThermalState s = x_state(0, 0);
    s.theta = 1.0;
    s.lap_q = Vec3{1, 0, 0};
    s.grad_div_q = Vec3{1, 0, 0};
    s.grad_q = Mat3{};
    const auto r = flux_rate(p, s);
    expect_vec(r.value, {3 * p.lambda2(1.0), 0, 0});
}

TEST(FluxRate, ContractsAndDegenerateCases) {
    EXPECT_THROW(flux_rate(MCVParams{0.0, iso(1.0)}, x_state(1, 0)), DegenerateModel);
    EXPECT_THROW(flux_rate(JeffreysParams{0.0, iso(1.0), iso(1.0)}, x_state(1, 0)), DegenerateModel);
    ThermalState s = x_state(1, 0);
    s.grad_theta_dot.reset();
    EXPECT_THROW(flux_rate(JeffreysParams{1.0, iso(1.0), iso(1.0)}, s), ContractError);
    EXPECT_THROW(flux_rate(QuintanillaParams{1.0, iso(1.0), iso(1.0)}, x_state(1, 0)), ContractError);
    EXPECT_THROW(flux_rate(GKParams{1.0, 1.0, ThetaFunction::constant(1.0)}, x_state(1, 0)), ContractError);
}

TEST(FluxRate, LinearInStateFields) {
    Rng rng(29);
    for (ModelKind k : {ModelKind::MCV, ModelKind::Jeffreys, ModelKind::GN3, ModelKind::Quintanilla,
                        ModelKind::Burgers, ModelKind::GK, ModelKind::GN2, ModelKind::Fourier}) {
        for (int i = 0; i < 200; ++i) {
            const ModelParams m = random_admissible(k, rng);
            ThermalState s1 = random_state(rng), s2 = random_state(rng);
            s2.theta = s1.theta;
            const double a = uniform(rng, -2, 2), b = uniform(rng, -2, 2);
            const Vec3 lhs = flux_rate(m, combine(a, s1, b, s2)).value;
            const Vec3 rhs = a * flux_rate(m, s1).value + b * flux_rate(m, s2).value;
            ASSERT_LT(norm(lhs - rhs), 1e-11 * std::max(1.0, norm(rhs))) << kind_name(k);
        }
    }
}

TEST(GN2, RateAndConsistency) {
    expect_vec(gn2_rate(identity3(), {1, 2, 3}), {-1, -2, -3});
    Mat3 K = SymTensor3::diag(2, 1, 1).mat();
    expect_vec(gn2_rate(K, {1, 0, 0}), {-2, 0, 0});
    EXPECT_TRUE(gn2_consistent(K));
    K[0][1] = 0.5;
    EXPECT_FALSE(gn2_consistent(K));
    EXPECT_FALSE(gn2_consistent(SymTensor3::diag(1, 1, 0).mat()));
}

TEST(ReduceLimit, Examples) {
    const auto j = std::get<JeffreysParams>(reduce_limit(BurgersParams{0.0, 2.0, 3.0, 5.0}, Limit::BurgersLambdaToZero));
    EXPECT_EQ(j.tau, 2.0);
    EXPECT_EQ(j.xi.xx(), 3.0);
    EXPECT_EQ(j.kappa.xx(), 5.0);
    const auto f = std::get<FourierParams>(reduce_limit(MCVParams{0.0, iso(4.0)}, Limit::MCVTauToZero));
    EXPECT_EQ(f.kappa.xx(), 4.0);
    const auto g = std::get<GN3Params>(reduce_limit(QuintanillaParams{0.0, iso(1.0), iso(2.0)}, Limit::QuintanillaTauToZero));
    EXPECT_EQ(g.xi.xx(), 1.0);
    EXPECT_EQ(g.kappa.xx(), 2.0);
    const auto m = std::get<MCVParams>(reduce_limit(JeffreysParams{1.5, iso(2.0), iso(0.3)}, Limit::JeffreysKappaToZero));
    EXPECT_EQ(m.tau, 1.5);
    EXPECT_EQ(m.kappa.xx(), 2.0);
}

TEST(ReduceLimit, UndefinedLimitRejected) {
    EXPECT_THROW(reduce_limit(MCVParams{1.0, iso(1.0)}, Limit::BurgersLambdaToZero), InvalidLimit);
    EXPECT_THROW(reduce_limit(FourierParams{iso(1.0)}, Limit::MCVTauToZero), InvalidLimit);
}

TEST(ReduceLimit, GKNeedsReferenceForVaryingConductivity) {
    GKParams p{0.5, 0.1, ThetaFunction::constant(4.0)};
    EXPECT_THROW(reduce_limit(p, Limit::GKLengthToZero), InvalidLimit);
    const auto m = std::get<MCVParams>(reduce_limit(p, Limit::GKLengthToZero, 2.0));
    EXPECT_DOUBLE_EQ(m.kappa.xx(), 1.0);
    GKParams q{0.5, 0.1, ThetaFunction::power(3.0, 2.0)};
    EXPECT_DOUBLE_EQ(std::get<MCVParams>(reduce_limit(q, Limit::GKLengthToZero)).kappa.xx(), 3.0);
}

TEST(ReduceLimit, BurgersSlowManifold) {
    // lambda qdd is independent of lambda and equals tau (qd_J - qd).
    const BurgersParams base{0.0, 2.0, 1.5, 0.7};
    const auto jeff = reduce_limit(base, Limit::BurgersLambdaToZero);
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        ThermalState s = random_state(rng);
        const Vec3 qd_j = flux_rate(jeff, s).value;
        for (double eps : {1e-1, 1e-3, 1e-6}) {
            BurgersParams b = base;
            b.lambda = eps;
            const Vec3 lhs = eps * flux_rate(b, s).value;
            ASSERT_LT(norm(lhs - base.tau * (qd_j - *s.qdot)), 1e-12);
        }
        s.qdot = qd_j;
        BurgersParams b = base;
        b.lambda = 1e-3;
        ASSERT_LT(norm(flux_rate(b, s).value), 1e-9);
    }
}

TEST(Mixture, Examples) {
    const auto a = burgers_from_mixture(1, 1, 1, 1);
    EXPECT_DOUBLE_EQ(a.tau, 2);
    EXPECT_DOUBLE_EQ(a.lambda, 1);
    EXPECT_DOUBLE_EQ(a.mu, 2);
    EXPECT_DOUBLE_EQ(a.nu, 1);
    const auto b = burgers_from_mixture(1, 2, 3, 0);
    EXPECT_DOUBLE_EQ(b.tau, 3);
    EXPECT_DOUBLE_EQ(b.lambda, 2);
    EXPECT_DOUBLE_EQ(b.mu, 3);
    EXPECT_DOUBLE_EQ(b.nu, 2);
    EXPECT_THROW(burgers_from_mixture(2, 0, 1, 1), InvalidInput);
    EXPECT_THROW(burgers_from_mixture(-1, 1, 1, 1), InvalidInput);
}

TEST(Mixture, RelaxationTimesPositive) {
    Rng rng(37);
    for (int i = 0; i < 1000; ++i) {
        const auto b = burgers_from_mixture(uniform(rng, 1e-3, 5), uniform(rng, 1e-3, 5),
                                            uniform(rng, 0, 5), uniform(rng, 0, 5));
        ASSERT_GT(b.tau, 0);
        ASSERT_GT(b.lambda, 0);
    }
}

TEST(GKParameters, DerivedRelation) {
    Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        GKParams p{0.0, uniform(rng, 0.01, 2), ThetaFunction::power(uniform(rng, 0.1, 3), uniform(rng, -2, 3))};
        const double th = uniform(rng, 0.5, 500);
        ASSERT_NEAR(p.kappa(th) * th * th, p.lambda2(th) / (p.ell * p.ell),
                    1e-12 * p.lambda2(th) / (p.ell * p.ell));
        GKNonlinearParams n{0.0, p.ell, p.varkappa, uniform(rng, -3, 3)};
        ASSERT_DOUBLE_EQ(n.mu(th), 2 * n.nu(th));
    }
}

TEST(Kinds, NamesRoundTrip) {
    for (int i = 0; i <= static_cast<int>(ModelKind::GKNonlinear); ++i) {
        const auto k = static_cast<ModelKind>(i);
        EXPECT_EQ(parse_kind(kind_name(k)), k);
    }
    EXPECT_EQ(parse_kind("mgt"), ModelKind::Quintanilla);
    EXPECT_EQ(parse_kind("jp"), ModelKind::Burgers);
    EXPECT_THROW(parse_kind("cattaneo-christov"), InvalidKind);
}
