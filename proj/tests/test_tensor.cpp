#include <gtest/gtest.h>

#include <cmath>

#include "heatlab/errors.hpp"
#include "heatlab/sampling.hpp"
#include "heatlab/tensor.hpp"

using namespace heatlab;

namespace {

// All seven principal minors of a symmetric 3x3 matrix.
bool minors_psd(const SymTensor3& s, double tol) {
    const Mat3 a = s.mat();
    const double scale = std::max(1.0, s.frobenius());
    const double t1 = tol * scale, t2 = tol * scale * scale, t3 = tol * scale * scale * scale;
    for (int i = 0; i < 3; ++i)
        if (a[i][i] < -t1) return false;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (a[i][i] * a[j][j] - a[i][j] * a[j][i] < -t2) return false;
    return det(a) >= -t3;
}

}  // namespace

TEST(Definiteness, Identity) {
    const auto I = SymTensor3::isotropic(1.0);
    EXPECT_TRUE(is_psd(I));
    EXPECT_TRUE(is_pd(I));
    EXPECT_TRUE(is_nonsingular(I));
}

TEST(Definiteness, SmallNegativeEigenvalue) {
    EXPECT_FALSE(is_psd(SymTensor3::diag(1, -1e-3, 0)));
}

TEST(Definiteness, RankOneQuadraticForm) {
    // rows over (q, qdot, grad theta): only the last two blocks are populated
    SymTensor3 A(0, 1, 4, 0, 0, 2);
    EXPECT_TRUE(is_psd(A));
    EXPECT_FALSE(is_pd(A));
}

TEST(Definiteness, SemidefiniteAndIndefinite) {
    EXPECT_FALSE(is_pd(SymTensor3::diag(1, 1, 0)));
    EXPECT_TRUE(is_psd(SymTensor3::diag(1, 1, 0)));
    EXPECT_FALSE(is_pd(SymTensor3::diag(2, -1, 1)));
    EXPECT_TRUE(is_nonsingular(SymTensor3::diag(2, -1, 1)));
    EXPECT_FALSE(is_nonsingular(SymTensor3::diag(1, 1, 0)));
    EXPECT_FALSE(is_nonsingular(SymTensor3()));
}

TEST(Definiteness, RejectsNonFinite) {
    EXPECT_THROW(SymTensor3(NAN, 0, 0), InvalidInput);
    EXPECT_THROW(SymTensor3::isotropic(INFINITY), InvalidInput);
}

TEST(Definiteness, MarginSign) {
    EXPECT_GT(psd_test(SymTensor3::diag(1, 2, 3)).margin, 0.0);
    EXPECT_LT(psd_test(SymTensor3::diag(1, -2, 3)).margin, 0.0);
}

TEST(Definiteness, AgreesWithPrincipalMinors) {
    Rng rng(11);
    int compared = 0;
    for (int k = 0; k < 10000; ++k) {
        SymTensor3 s(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1),
                     uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
        const double lmin = s.eigenvalues()[0];
        if (std::abs(lmin) < 10 * kDefaultTol * std::max(1.0, s.frobenius())) continue;
        ++compared;
        ASSERT_EQ(is_psd(s), minors_psd(s, kDefaultTol)) << "k=" << k;
    }
    EXPECT_GT(compared, 9000);
    // the uniform ensemble is mostly indefinite; add guaranteed PSD draws
    for (int k = 0; k < 2000; ++k) {
        const auto R = random_rotation(rng);
        const auto s = rotated_diag(R, {uniform(rng, 0.01, 1), uniform(rng, 0.01, 1), uniform(rng, 0.01, 1)});
        ASSERT_TRUE(is_psd(s));
        ASSERT_TRUE(minors_psd(s, kDefaultTol));
    }
}

TEST(Eigen, JacobiMatchesReconstruction) {
    Rng rng(3);
    for (int k = 0; k < 500; ++k) {
        SymTensor3 s(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1),
                     uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
        const Vec3 ev = s.eigenvalues();
        const Mat3 V = s.eigenvectors();
        EXPECT_LE(ev[0], ev[1]);
        EXPECT_LE(ev[1], ev[2]);
        for (int c = 0; c < 3; ++c) {
            const Vec3 v{V[0][c], V[1][c], V[2][c]};
            const Vec3 r = s * v - ev[c] * v;
            EXPECT_LT(norm(r), 1e-12);
        }
        EXPECT_NEAR(ev[0] * ev[1] * ev[2], s.det(), 1e-12);
    }
}

TEST(Representation, AxisAligned) {
    const Vec3 z = representation_completion({1, 0, 0}, 5, {9, 2, 3});
    EXPECT_DOUBLE_EQ(z[0], 5);
    EXPECT_DOUBLE_EQ(z[1], 2);
    EXPECT_DOUBLE_EQ(z[2], 3);
}

TEST(Representation, Diagonal) {
    const double r = 1 / std::sqrt(2.0);
    const Vec3 z = representation_completion({r, r, 0}, 0, {1, 0, 0});
    EXPECT_NEAR(z[0], 0.5, 1e-15);
    EXPECT_NEAR(z[1], -0.5, 1e-15);
    EXPECT_NEAR(z[2], 0.0, 1e-15);
}

TEST(Representation, ZeroDirectionRejected) {
    EXPECT_THROW(representation_completion({0, 0, 0}, 1, {1, 1, 1}), InvalidInput);
}

TEST(Representation, ProjectionContract) {
    Rng rng(5);
    for (int k = 0; k < 10000; ++k) {
        Vec3 n = random_vec(rng);
        if (norm(n) < 1e-3) continue;
        const double g = uniform(rng, -10, 10);
        const Vec3 G = random_vec(rng, 10);
        const Vec3 z = representation_completion(n, g, G);
        const double proj = dot(z, (1.0 / norm(n)) * n);
        ASSERT_LE(std::abs(proj - g), 1e-12 * std::max({1.0, std::abs(g), norm(G)}));
    }
}

TEST(Matrix, InverseAndSingular) {
    Mat3 a{{{2, 1, 0}, {0, 3, 1}, {1, 0, 1}}};
    const Mat3 p = a * inverse(a);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_NEAR(p[i][j], i == j ? 1.0 : 0.0, 1e-14);
    Mat3 s{{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}};
    EXPECT_THROW(inverse(s), SingularParameter);
}
