#include "acai/model.hpp"

#include "support/random_geometry.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace acai;

namespace {

TEST(BuildEffectiveness, HexacopterMatchesReferenceRows) {
    const auto bf = build_effectiveness(pnpnpn_hexacopter());
    ASSERT_EQ(bf.cols(), 6);
    const double r = 0.275, s = std::sqrt(3.0) / 2.0;
    const double row2[] = {0.0, -s * r, -s * r, 0.0, s * r, s * r};
    const double row3[] = {0.275, 0.1375, -0.1375, -0.275, -0.1375, 0.1375};
    const double row4[] = {-0.1, 0.1, -0.1, 0.1, -0.1, 0.1};
    for (int i = 0; i < 6; ++i) {
        EXPECT_DOUBLE_EQ(bf(0, i), 1.0);
        EXPECT_NEAR(bf(1, i), row2[i], 1e-15);
        EXPECT_NEAR(bf(2, i), row3[i], 1e-15);
        EXPECT_DOUBLE_EQ(bf(3, i), row4[i]);
    }
}

TEST(BuildEffectiveness, PpnnpnYawRowFollowsSpins) {
    const auto bf = build_effectiveness(ppnnpn_hexacopter());
    const double row4[] = {-0.1, -0.1, 0.1, 0.1, -0.1, 0.1};
    for (int i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(bf(3, i), row4[i]);
}

TEST(BuildEffectiveness, FailedRotorGivesZeroColumn) {
    const auto bf = build_effectiveness(with_efficiency(pnpnpn_hexacopter(), 0, 0.0));
    EXPECT_TRUE(bf.col(0).isZero(0.0));
    EXPECT_FALSE(bf.col(1).isZero());
}

TEST(BuildEffectiveness, SingleRotorSubstitution) {
    RotorSpec rotor{.arm_length = 1.0, .azimuth = 0.0, .spin = Spin::Anticlockwise, .max_lift = 1.0, .efficiency = 1.0};
    const Eigen::Vector4d col = nominal_column(rotor, 0.1);
    EXPECT_EQ(col, Eigen::Vector4d(1.0, 0.0, 1.0, 0.1));
}

TEST(BuildEffectiveness, RejectsFewerThanFourRotors) {
    auto g = pnpnpn_hexacopter();
    g.rotors.resize(3);
    EXPECT_THROW(build_effectiveness(g), ConfigError);
}

TEST(BuildEffectiveness, RejectsInvalidRotor) {
    EXPECT_THROW(build_effectiveness(with_efficiency(pnpnpn_hexacopter(), 2, 1.5)), ConfigError);
    auto g = pnpnpn_hexacopter();
    g.rotors[1].max_lift = 0.0;
    EXPECT_THROW(build_effectiveness(g), ConfigError);
    g = pnpnpn_hexacopter();
    g.rotors[1].arm_length = -0.1;
    EXPECT_THROW(build_effectiveness(g), ConfigError);
}

TEST(BuildStatePair, ReferenceAirframe) {
    const auto pair = build_state_pair(pnpnpn_hexacopter());
    EXPECT_NEAR(pair.G(0), 15.043, 1e-12);
    EXPECT_TRUE(pair.G.tail<3>().isZero(0.0));
    EXPECT_DOUBLE_EQ(pair.B(4, 0), -1.0 / 1.535);
    EXPECT_DOUBLE_EQ(pair.B(5, 1), 1.0 / 0.0411);
    EXPECT_DOUBLE_EQ(pair.B(6, 2), 1.0 / 0.0478);
    EXPECT_DOUBLE_EQ(pair.B(7, 3), 1.0 / 0.0599);
    EXPECT_TRUE(pair.B.topRows<4>().isZero(0.0));
    EXPECT_TRUE((pair.A * pair.A).isZero(0.0));
    EXPECT_TRUE((pair.A.topRightCorner<4, 4>().isIdentity(0.0)));
}

TEST(BuildStatePair, RejectsNonPositiveMassOrInertia) {
    auto g = pnpnpn_hexacopter();
    g.mass = 0.0;
    EXPECT_THROW(build_state_pair(g), ConfigError);
    g = pnpnpn_hexacopter();
    g.jy = -1.0;
    EXPECT_THROW(build_state_pair(g), ConfigError);
}

TEST(Presets, LookupByName) {
    EXPECT_TRUE(preset_geometry("pnpnpn-table1"));
    EXPECT_TRUE(preset_geometry("ppnnpn-table1"));
    EXPECT_FALSE(preset_geometry("octo"));
}

TEST(EffectivenessProperties, PnpnpnTorqueRowsSumToZero) {
    const auto bf = build_effectiveness(pnpnpn_hexacopter());
    EXPECT_LT(bf.bottomRows<3>().rowwise().sum().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(EffectivenessProperties, PermutationAndScaling) {
    std::mt19937_64 rng(7);
    for (std::size_t m : {4u, 6u, 8u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto g = test_support::random_geometry(rng, m);
            const auto bf = build_effectiveness(g);

            std::vector<std::size_t> perm(m);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            auto permuted = g;
            for (std::size_t i = 0; i < m; ++i) permuted.rotors[i] = g.rotors[perm[i]];
            const auto bfp = build_effectiveness(permuted);
            for (std::size_t i = 0; i < m; ++i)
                EXPECT_EQ(bfp.col(static_cast<Eigen::Index>(i)), bf.col(static_cast<Eigen::Index>(perm[i])));

            const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            auto scaled = g;
            for (auto& r : scaled.rotors) r.efficiency *= alpha;
            EXPECT_LT((build_effectiveness(scaled) - alpha * bf).cwiseAbs().maxCoeff(), 1e-15);
        }
    }
}

}  // namespace
