#include <gtest/gtest.h>

#include <cmath>

#include "kamlab/error.hpp"
#include "kamlab/grid.hpp"
#include "kamlab/substrate.hpp"
#include "oracles.hpp"

using namespace kamlab;

namespace {

const double kAlpha = 1.0 / std::sqrt(5.0);
const double kRho = std::sqrt(3.0);

Substrate golden(std::int64_t lo = -200, std::int64_t hi = 200) {
  return Substrate::generate({kAlpha, kRho}, lo, hi);
}

}  // namespace

TEST(Grid, NodesAreOriginPlusIntegerSteps) {
  const Grid g({-1.0, 1.0}, 0.25, 0.1);
  EXPECT_EQ(g.node(0), 0.1 + (-4) * 0.25);
  EXPECT_EQ(g.hi(), 0.1 + 3 * 0.25);
  EXPECT_EQ(g.size(), 8u);
  EXPECT_EQ(g.index_of(0.35), 5u);
  EXPECT_THROW(g.index_of(0.3), RangeError);
  EXPECT_THROW(Grid({0.0, 1.0}, 0.0), ParameterError);
}

TEST(Grid, RestrictSharesNodesBitwise) {
  const Grid g({-3.0, 3.0}, 1.0 / 3.0);
  const Grid sub = g.restrict({-1.0, 2.0});
  ASSERT_TRUE(sub.same_lattice(g));
  for (std::size_t i = 0; i < sub.size(); ++i) EXPECT_EQ(g.node(g.index_of(sub.node(i))), sub.node(i));
}

TEST(Grid, TorusHasOneOverStepNodes) {
  const Grid t = Grid::torus(1.0 / 64.0);
  EXPECT_EQ(t.size(), 64u);
  EXPECT_EQ(t.lo(), 0.0);
}

TEST(Substrate, FloorProductMatchesIntegerOracle) {
  for (std::int64_t k = -1000000; k <= 1000000; k += 997) {
    ASSERT_EQ(floor_product(k, kAlpha), oracle::floor_over_sqrt5(k)) << "k=" << k;
  }
  for (std::int64_t k = -300; k <= 300; ++k) ASSERT_EQ(floor_product(k, kAlpha), oracle::floor_over_sqrt5(k));
}

TEST(Substrate, FloorProductIsExactOnRepresentableProducts) {
  EXPECT_EQ(floor_product(10, 0.3), 2);  // the double 0.3 is below 3/10 although the product rounds to 3
  EXPECT_EQ(floor_product(4, 0.25), 1);
  EXPECT_EQ(floor_product(-4, 0.25), -1);
  EXPECT_EQ(floor_product(-3, 0.25), -1);
}

TEST(Substrate, HandEvaluatedPoints) {
  const Substrate s = golden();
  EXPECT_DOUBLE_EQ(s.point(1), 1.0);
  EXPECT_NEAR(s.point(3), 2.0 + std::sqrt(3.0), 1e-12);
  EXPECT_DOUBLE_EQ(s.point(0), 0.0);
}

TEST(Substrate, UnitRatioGivesIntegers) {
  const Substrate s = Substrate::generate({0.3, 1.0}, -50, 50);
  for (std::int64_t k = -50; k <= 50; ++k) EXPECT_EQ(s.point(k), static_cast<double>(k));
}

TEST(Substrate, GapsAreUnitOrRhoAndWordIsBalanced) {
  const Substrate s = golden();
  const auto pts = s.points();
  const auto word = s.word();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double gap = pts[i + 1] - pts[i];
    EXPECT_NEAR(gap, word[i + 1] ? kRho : 1.0, 1e-12);
  }
  // Sturmian balance: counts of 1 in equal-length factors differ by <= 1.
  for (std::size_t len : {5u, 13u, 34u}) {
    int lo = 1 << 30, hi = -1;
    for (std::size_t i = 0; i + len <= word.size(); ++i) {
      int c = 0;
      for (std::size_t j = 0; j < len; ++j) c += word[i + j];
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    EXPECT_LE(hi - lo, 1) << "length " << len;
  }
}

TEST(Substrate, CellLookup) {
  const Substrate s = golden();
  const Cell c = s.cell_at(2.5);
  EXPECT_EQ(c.k, 2);
  EXPECT_EQ(c.type, CellType::rho);
  EXPECT_NEAR(c.offset, 0.5, 1e-12);
  EXPECT_EQ(s.cell_at(s.point(7)).offset, 0.0);

  const Substrate z = Substrate::generate({0.3, 1.0}, -10, 10);
  const Cell u = z.cell_at(3.25);
  EXPECT_EQ(u.k, 3);
  EXPECT_EQ(u.type, z.letter(4) ? CellType::rho : CellType::unit);  // letters persist at rho = 1
  EXPECT_DOUBLE_EQ(u.offset, 0.25);
  EXPECT_THROW(z.cell_at(50.0), RangeError);
}

TEST(Substrate, SubwordFrequencies) {
  const Substrate s = golden(-2000, 2000);
  const double window = static_cast<double>(s.word().size());
  EXPECT_NEAR(s.subword_frequency("1"), kAlpha, 2.0 / window);
  EXPECT_NEAR(s.subword_frequency("0"), 1.0 - kAlpha, 2.0 / window);
  EXPECT_EQ(s.subword_frequency("11"), 0.0);
  EXPECT_NEAR(s.subword_frequency("00"), 1.0 - 2.0 * kAlpha, 4.0 / window);
}

TEST(Substrate, ReturnVectorsOnIntegersAreIntegers) {
  const Substrate z = Substrate::generate({0.3, 1.0}, -40, 40);
  const auto ts = z.return_vectors({0.2, 1.5}, {-10.0, 10.0});
  ASSERT_EQ(ts.size(), 21u);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_EQ(ts[i], static_cast<double>(i) - 10.0);
}

TEST(Substrate, ReturnVectorsMatchBruteForcePatternComparison) {
  const Substrate s = golden();
  const PatternQuery q{0.0, 3.0};
  const auto ts = s.return_vectors(q, {-60.0, 60.0});
  ASSERT_FALSE(ts.empty());
  double smallest = 1e300;
  for (double t : ts) {
    if (t > 0.5) smallest = std::min(smallest, t);
    // Independent check: every point of the base window maps onto a point.
    for (double p : s.points()) {
      if (p < q.center - q.radius + 1e-6 || p > q.center + q.radius - 1e-6) continue;
      bool found = false;
      for (double r : s.points()) found = found || std::abs(r - (p + t)) < 1e-9;
      EXPECT_TRUE(found) << "t=" << t << " p=" << p;
    }
  }
  // Linearly repetitive: the first return stays within a small multiple of
  // the pattern diameter.
  EXPECT_LE(smallest, 6.0 * 2.0 * q.radius);
}

TEST(Substrate, PatternOutsideRangeIsRangeError) {
  const Substrate s = golden(-10, 10);
  EXPECT_THROW(s.return_vectors({0.0, 100.0}, {-5.0, 5.0}), RangeError);
}

TEST(Substrate, RejectsInvalidSpecs) {
  EXPECT_THROW(Substrate::generate({0.7, 1.0}, 0, 10), ParameterError);
  EXPECT_THROW(Substrate::generate({0.3, -1.0}, 0, 10), ParameterError);
  EXPECT_THROW(Substrate::generate({0.3, 1.0}, 10, 0), ParameterError);
}
