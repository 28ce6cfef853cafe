#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace qsep;
using namespace qsep::testing;

namespace {

void expect_valid_for(const SeparableDecomposition& dec, const DensityMatrix& rho, double tol = 1e-12) {
    const auto v = verify_decomposition(dec, rho, tol);
    EXPECT_TRUE(v.pass) << "deviation " << v.max_deviation << ", violations " << v.violations.size();
}

} // namespace

TEST(IndSet, EvenParityMembers) {
    for (int n = 1; n <= 8; ++n) {
        const IndSet ind(n);
        EXPECT_EQ(ind.members.size(), std::size_t{1} << (n - 1));
        for (const auto& i : ind.members) EXPECT_EQ(i.parity(), 0);
    }
}

TEST(Product, TwoQubitZExample) {
    // (I + ZZ)/4 = (|00><00| + |11><11|)/2
    const auto dec = product_decomposition({2, {z_axis, z_axis}, Sign::plus});
    ASSERT_EQ(dec.terms.size(), 2u);
    for (const auto& t : dec.terms) {
        EXPECT_DOUBLE_EQ(t.weight, 0.5);
        EXPECT_EQ(t.bloch[0], t.bloch[1]);
        EXPECT_DOUBLE_EQ(std::abs(t.bloch[0][2]), 1.0);
    }
    EXPECT_NE(dec.terms[0].bloch[0], dec.terms[1].bloch[0]);
}

TEST(Product, MinusSignFlipsParity) {
    // (I - XX)/4: every term has antiparallel x vectors.
    const auto dec = product_decomposition({2, {x_axis, x_axis}, Sign::minus});
    for (const auto& t : dec.terms) EXPECT_DOUBLE_EQ(t.bloch[0][0] * t.bloch[1][0], -1.0);
}

TEST(Product, ReassemblesForRandomAxes) {
    Rng rng(40);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 5;
        const auto spec = random_product_spec(n, rng);
        const auto dec = product_decomposition(spec);
        EXPECT_EQ(dec.terms.size(), std::size_t{1} << (n - 1));
        EXPECT_LT(max_abs_diff(reassemble(dec), product_density(spec).matrix()), 1e-12);
        EXPECT_TRUE(certificate_violations(dec).empty());
    }
}

TEST(Product, ThreeQubitYExample) {
    // Frozen from tests/oracles/oracle.py: (I - YYY)/8 has eigenvalues {0 x4, 1/4 x4}.
    const ProductSpec spec{3, {y_axis, y_axis, y_axis}, Sign::minus};
    const auto e = hermitian_eigenvalues(product_density(spec).matrix());
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(e[static_cast<std::size_t>(i)], 0.0, 1e-14);
    for (int i = 4; i < 8; ++i) EXPECT_NEAR(e[static_cast<std::size_t>(i)], 0.25, 1e-14);
    expect_valid_for(product_decomposition(spec), product_density(spec));
}

TEST(SpinNormDecomposition, SlotAxes) {
    EXPECT_FALSE(spin_slot_axis(0, 0).has_value());
    EXPECT_EQ(*spin_slot_axis(0, 1), x_axis);
    EXPECT_EQ(*spin_slot_axis(1, 0), z_axis);
    EXPECT_EQ(*spin_slot_axis(1, 1), y_axis);
}

TEST(SpinNormDecomposition, MaximallyMixedIsSingleTerm) {
    const auto dec = spin_norm_decomposition(DensityMatrix::maximally_mixed(3));
    ASSERT_EQ(dec.terms.size(), 1u);
    EXPECT_DOUBLE_EQ(dec.terms[0].weight, 1.0);
}

TEST(SpinNormDecomposition, CertifiesSpinBall) {
    Rng rng(60);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 3;
        const double target = uniform(rng, 0.0, 1.0);
        const auto rho = random_spin_ball_density(n, target, rng);
        const auto dec = spin_norm_decomposition(rho);
        expect_valid_for(dec, rho, 1e-10);
        EXPECT_NEAR(dec.terms.front().weight, 1.0 - spin_norm1(rho), 1e-12);
        for (const auto& b : dec.terms.front().bloch) EXPECT_EQ(b, zero_bloch);
    }
}

TEST(SpinNormDecomposition, WernerAtThresholdForTwoQubits) {
    // n = 2 is the only size where the Werner threshold state has spin norm exactly 1.
    const auto rho = werner({2, 1.0 / 3.0, BitIndex::zeros(2), Sign::plus});
    const auto dec = spin_norm_decomposition(rho);
    expect_valid_for(dec, rho);
    EXPECT_NEAR(dec.terms.front().weight, 0.0, 1e-12);
}

TEST(SpinNormDecomposition, RefusesLargeNorm) {
    try {
        spin_norm_decomposition(ghz_projector(BitIndex::parse("00"), Sign::plus));
        FAIL();
    } catch (const NotCertifiableError& e) {
        EXPECT_NEAR(e.value(), 3.0, 1e-12);
    }
}

TEST(WernerDecomposition, VerifiesUpToThreshold) {
    for (int n = 2; n <= 5; ++n) {
        const double t = werner_threshold(n);
        for (double s : {0.0, 0.5 * t, t})
            for (Sign sg : {Sign::plus, Sign::minus})
                for (std::uint32_t jv : {0u, (1u << (n - 1)) - 1u}) {
                    const WernerSpec spec{n, s, BitIndex(n, jv), sg};
                    expect_valid_for(werner_decomposition(spec), werner(spec));
                }
    }
}

TEST(WernerDecomposition, IdentityWeightAndTermShape) {
    const WernerSpec spec{3, 0.1, BitIndex::zeros(3), Sign::plus};
    const auto dec = werner_decomposition(spec);
    EXPECT_NEAR(dec.terms.front().weight, 1.0 - 0.1 - 0.4, 1e-15);
    EXPECT_DOUBLE_EQ(dec.weight_sum(), 1.0);
    for (const auto& t : dec.terms) EXPECT_EQ(t.bloch.size(), 3u);
}

TEST(WernerDecomposition, RefusesAboveThreshold) {
    EXPECT_THROW(werner_decomposition({3, 0.2 + 1e-9, BitIndex::zeros(3), Sign::plus}), NotCertifiableError);
    EXPECT_NO_THROW(werner_decomposition({3, 0.2 + 1e-13, BitIndex::zeros(3), Sign::plus}));
}

TEST(MuDecomposition, VerifiesAtBound) {
    const DiagonalFamilySpec u{3, {0.4, 0.1, 0.05, 0.05}, {0.1, 0.0, 0.2, 0.1}};
    const double b = mu_bound(u);
    for (double s : {0.0, 0.3 * b, b}) expect_valid_for(mu_decomposition({s, u}), mu_state({s, u}));
    EXPECT_THROW(mu_decomposition({b + 1e-6, u}), NotCertifiableError);
}

TEST(Certificate, ViolationsAreReported) {
    SeparableDecomposition dec{2, {{0.5, {z_axis, z_axis}}, {0.6, {Bloch{2.0, 0.0, 0.0}, z_axis}}}};
    const auto v = certificate_violations(dec);
    EXPECT_GE(v.size(), 2u);
    EXPECT_FALSE(verify_decomposition(dec, DensityMatrix::maximally_mixed(2), 1e-10).pass);
    SeparableDecomposition neg{1, {{-0.1, {z_axis}}, {1.1, {zero_bloch}}}};
    EXPECT_FALSE(certificate_violations(neg).empty());
    EXPECT_THROW(verify_decomposition(neg, DensityMatrix::maximally_mixed(2), 1e-10), ArgumentError);
}

TEST(Certificate, WrongStateFailsVerification) {
    const WernerSpec spec{2, 0.2, BitIndex::zeros(2), Sign::plus};
    const auto dec = werner_decomposition(spec);
    const auto v = verify_decomposition(dec, werner({2, 0.25, BitIndex::zeros(2), Sign::plus}), 1e-10);
    EXPECT_FALSE(v.pass);
    EXPECT_GT(v.max_deviation, 1e-3);
    EXPECT_TRUE(v.violations.empty());
}
