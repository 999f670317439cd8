#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "kamlab/error.hpp"
#include "kamlab/model.hpp"
#include "oracles.hpp"

using namespace kamlab;

namespace {

std::shared_ptr<const Substrate> golden() {
  return std::make_shared<const Substrate>(
      Substrate::generate({1.0 / std::sqrt(5.0), std::sqrt(3.0)}, -100, 100));
}

}  // namespace

TEST(Model, PeriodicPotentialValues) {
  const InteractionModel m = InteractionModel::periodic(0.0, 1.0);
  EXPECT_DOUBLE_EQ(m.potential(0.5), 2.0);
  for (int k = -5; k <= 5; ++k) EXPECT_EQ(m.potential(k), 0.0);
  EXPECT_NEAR(m.potential(0.3), m.potential(7.3), 1e-12);
}

TEST(Model, QuasiperiodicPotentialMatchesCellScan) {
  const auto sub = golden();
  const InteractionModel m = InteractionModel::quasiperiodic(0.0, 1.0, sub);
  const std::vector<double> pts(sub->points().begin(), sub->points().end());
  for (std::int64_t k = -20; k <= 20; ++k) EXPECT_EQ(m.potential(sub->point(k)), 0.0);
  EXPECT_NEAR(m.potential(2.0 + std::sqrt(3.0) / 2.0), 6.0, 1e-12);
  for (double x = -30.0; x < 30.0; x += 0.173) EXPECT_NEAR(m.potential(x), oracle::potential_scan(pts, std::sqrt(3.0), x), 1e-12);
  EXPECT_THROW(m.potential(1e4), RangeError);
}

TEST(Model, HandEvaluatedEnergies) {
  EXPECT_EQ(InteractionModel::periodic(0.0, 1.0).energy(0.0, 0.0), 0.0);
  EXPECT_NEAR(InteractionModel::periodic(1.0, 0.1).energy(0.25, 0.25), 0.6, 1e-15);
  EXPECT_NEAR(InteractionModel::periodic(0.02, 0.5).energy(0.0, 1.0), 0.4802, 1e-15);
}

TEST(Model, ChainEnergy) {
  const std::vector<double> still{0.0, 0.0, 0.0};
  EXPECT_EQ(InteractionModel::periodic(0.0, 1.0).chain_energy(still), 0.0);
  const std::vector<double> stairs{0.0, 1.0, 2.0};
  EXPECT_EQ(InteractionModel::periodic(1.0, 0.1).chain_energy(stairs), 0.0);
  const std::vector<double> half{0.0, 0.5};
  EXPECT_DOUBLE_EQ(InteractionModel::periodic(0.0, 1.0).chain_energy(half), 0.125);
  EXPECT_THROW(InteractionModel::periodic(0.0, 1.0).chain_energy(std::vector<double>{1.0}), ParameterError);
}

TEST(Model, PeriodicWrapperMatchesLiftScan) {
  const InteractionModel m = InteractionModel::periodic(0.7, 0.3);
  oracle::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform(-3, 3), y = rng.uniform(-3, 3);
    EXPECT_NEAR(m.energy_periodic(x, y), oracle::periodic_energy(m, x, y), 1e-12);
  }
  EXPECT_THROW(InteractionModel::quasiperiodic(1.0, 0.1, golden()).energy_periodic(0.0, 0.0), ParameterError);
}

TEST(Model, PeriodicInvarianceIsExactOnIntegerShifts) {
  const InteractionModel m = InteractionModel::periodic(0.37, 0.21);
  for (double x : {0.125, 0.25, 0.5, 0.875}) {
    for (int k : {-3, 1, 4}) EXPECT_EQ(m.energy(x + k, x + k + 0.5), m.energy(x, x + 0.5));
  }
}

TEST(Model, SelfInteraction) {
  EXPECT_DOUBLE_EQ(InteractionModel::periodic(1.0, 0.1).self_interaction_inf({-2, 2}, 1.0 / 64), 0.5);
  EXPECT_EQ(InteractionModel::periodic(0.0, 0.7).self_interaction_inf({-2, 2}, 1.0 / 64), 0.0);
  EXPECT_DOUBLE_EQ(InteractionModel::periodic(0.02, 0.5).self_interaction_inf({-2, 2}, 1.0 / 64), 0.0002);
}

TEST(Model, TwistMixedDerivativeIsMinusOne) {
  const InteractionModel m = InteractionModel::periodic(0.4, 0.3);
  const TwistReport r = m.twist_sample({-2.0, 2.0}, 16);
  ASSERT_EQ(r.samples.size(), 16u);
  for (const auto& s : r.samples) EXPECT_NEAR(s.mixed, -1.0, 1e-6);
  EXPECT_EQ(m.twist_sample({0.0, 1.0}, 4).samples.size(), 4u);
  EXPECT_THROW(m.twist_sample({1.0, 1.0}, 4), ParameterError);
  const InteractionModel q = InteractionModel::quasiperiodic(0.4, 0.3, golden());
  for (const auto& s : q.twist_sample({-20.0, 20.0}, 32).samples) EXPECT_NEAR(s.mixed, -1.0, 1e-6);
}

TEST(Model, JumpRadius) {
  EXPECT_DOUBLE_EQ(InteractionModel::periodic(0.0, 1.0).jump_radius(2.0), 2.0);
  EXPECT_DOUBLE_EQ(InteractionModel::periodic(1.0, 1.0).jump_radius(0.5), 2.0);
  EXPECT_DOUBLE_EQ(InteractionModel::periodic(0.02, 0.5).jump_radius(0.0), 0.02);
  EXPECT_THROW(InteractionModel::periodic(0.0, 1.0).jump_radius(-1.0), ParameterError);
}

TEST(Model, SuperlinearBeyondJumpRadius) {
  const InteractionModel m = InteractionModel::periodic(0.6, 0.2);
  const double level = 1.3;
  const double r = m.jump_radius(level);
  for (double x = -1.0; x <= 1.0; x += 0.05) {
    EXPECT_GT(m.energy(x, x + r + 1e-6), level);
    EXPECT_GT(m.energy(x, x - r - 1e-6), level);
  }
}

TEST(Model, RejectsNegativeCoupling) {
  EXPECT_THROW(InteractionModel::periodic(0.0, -0.1), ParameterError);
  EXPECT_THROW(InteractionModel::quasiperiodic(0.0, 0.1, nullptr), ParameterError);
}
