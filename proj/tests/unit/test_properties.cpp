#include <gtest/gtest.h>

#include "properties.hpp"

namespace {

void expect_passes(const properties::Outcome& o) {
  EXPECT_EQ(o.cases, properties::kCases) << o.name;
  EXPECT_TRUE(o.passed()) << o.name << ": " << o.failures << " failures, worst " << o.worst << ", first "
                          << o.first_failure;
}

}  // namespace

TEST(Properties, TriangleInequality) { expect_passes(properties::triangle_inequality(properties::kSeed, properties::kCases)); }
TEST(Properties, PotentialBounds) { expect_passes(properties::potential_bounds(properties::kSeed + 1, properties::kCases)); }
TEST(Properties, OperatorMonotone) { expect_passes(properties::operator_monotone(properties::kSeed + 2, properties::kCases)); }
TEST(Properties, OperatorShift) { expect_passes(properties::operator_shift(properties::kSeed + 3, properties::kCases)); }
TEST(Properties, OperatorNonExpansive) {
  expect_passes(properties::operator_nonexpansive(properties::kSeed + 4, properties::kCases));
}
TEST(Properties, ChainMonotone) { expect_passes(properties::chain_monotone(properties::kSeed + 5, properties::kCases)); }
TEST(Properties, PatternEquivariance) {
  expect_passes(properties::pattern_equivariance(properties::kSeed + 6, properties::kCases));
}
