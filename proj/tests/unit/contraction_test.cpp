#include "gcyc/contraction.hpp"
#include "gcyc/corpus.hpp"
#include "gcyc/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace gcyc {
namespace {

Point p1(double v) { return make_point({v}); }

Scenario chatterjea_example32(double alpha, double delta) {
  Scenario s = build_example32_scenario();
  s.kind = ContractionKind::ChatterjeaG;
  return s.with_constants(alpha, delta);
}

// Random adjacent pair (x in A_i, y in A_{i+1}) for the example32 cover.
std::pair<Point, Point> adjacent_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a = u(rng), b = u(rng);
  if (rng() & 1) return {p1(a), p1(-b)};
  return {p1(-a), p1(b)};
}

TEST(KannanGap, OracleValueAtEndpoints) {
  const auto s = build_example32_scenario();
  EXPECT_NEAR(kannan_gap(s, p1(1.0), p1(-1.0)), 1.3192249722269711, 1e-15);
  EXPECT_NEAR(kannan_gap(s, p1(0.5), p1(-0.5)), 0.76942500513826623, 1e-15);
}

TEST(KannanGap, ZeroAtTheFixedPoint) {
  const auto s = build_example32_scenario();
  EXPECT_EQ(kannan_gap(s, p1(0.0), p1(0.0)), 0.0);
}

TEST(ChatterjeaGap, OracleValue) {
  const auto s = chatterjea_example32(0.5, 0.0);
  EXPECT_NEAR(chatterjea_gap(s, p1(1.0), p1(0.0)), 0.63212055882855768, 1e-15);
}

TEST(Gap, WrongKindAndNonAdjacentArgumentsThrow) {
  const auto s = build_example32_scenario();
  EXPECT_THROW(chatterjea_gap(s, p1(1.0), p1(-1.0)), PreconditionError);
  try {
    kannan_gap(s, p1(0.5), p1(0.25));
    FAIL() << "expected AdjacencyError";
  } catch (const AdjacencyError& e) {
    EXPECT_NE(std::string(e.what()).find("y = (0.25)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(kannan_gap(s, p1(0.5), p1(-0.5), p1(0.5)), AdjacencyError);
}

TEST(GapProperty, ThreePointAtZEqualsYMatchesTwoPoint) {
  auto rng = make_rng(17);
  const auto k = build_example32_scenario();
  const auto c = chatterjea_example32(0.4, 0.3);
  for (int i = 0; i < 1000; ++i) {
    const auto [x, y] = adjacent_pair(rng);
    EXPECT_NEAR(kannan_gap(k, x, y, y), kannan_gap(k, x, y), 1e-15);
    EXPECT_NEAR(chatterjea_gap(c, x, y, y), chatterjea_gap(c, x, y), 1e-15);
  }
}

TEST(GapProperty, MonotoneInTheConstants) {
  auto rng = make_rng(23);
  const auto base = build_example32_scenario();
  const auto small = base.with_constants(0.25, 0.25);
  const auto large = base.with_constants(0.5, 0.5);
  for (int i = 0; i < 500; ++i) {
    const auto [x, y] = adjacent_pair(rng);
    EXPECT_LE(kannan_gap(small, x, y), kannan_gap(large, x, y) + 1e-15);
  }
}

TEST(GapProperty, GapIsBetweenClassicAndGForm) {
  // With phi = id, psi = 0 and G = g_sum, G(x,Tx,Tx) = 2 d(x,Tx), so the
  // two-point Kannan gap with alpha = gamma = a equals twice the classic gap.
  auto rng = make_rng(5);
  const auto s = build_example32_scenario().with_constants(0.4, 0.4);
  const auto d = MetricFn::euclidean(s.domain);
  for (int i = 0; i < 200; ++i) {
    const auto [x, y] = adjacent_pair(rng);
    EXPECT_NEAR(kannan_gap(s, x, y), 2.0 * classic_kannan_gap(d, s.map, 0.4, x, y), 1e-14);
  }
}

TEST(Zamfirescu, PerConditionGapsMatchClassic) {
  const auto d = MetricFn::euclidean(Box::interval(-1.0, 1.0));
  const Operator half = [](const Point& x) -> Point { return 0.5 * x; };
  auto rng = make_rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Point x = p1(u(rng)), y = p1(u(rng));
    const auto r = zamfirescu_check(d, half, 0.6, 0.3, 0.4, x, y);
    EXPECT_NEAR(r.gaps[1], classic_kannan_gap(d, half, 0.3, x, y), 1e-15);
    EXPECT_NEAR(r.gaps[2], classic_chatterjea_gap(d, half, 0.4, x, y), 1e-15);
    EXPECT_NEAR(r.gaps[0], 0.6 * std::abs(x[0] - y[0]) - 0.5 * std::abs(x[0] - y[0]), 1e-15);
    EXPECT_TRUE(r.any_pass);
  }
}

TEST(Zamfirescu, RejectsConstantsOutsideRange) {
  const auto d = MetricFn::euclidean(Box::interval(-1.0, 1.0));
  const Operator id = [](const Point& x) { return x; };
  EXPECT_THROW(zamfirescu_check(d, id, 1.0, 0.1, 0.1, p1(0), p1(1)), PreconditionError);
  EXPECT_THROW(zamfirescu_check(d, id, 0.5, 0.5, 0.1, p1(0), p1(1)), PreconditionError);
  EXPECT_THROW(zamfirescu_check(d, id, 0.5, 0.1, 0.5, p1(0), p1(1)), PreconditionError);
}

TEST(Certify, Example32Passes) {
  const auto c = certify(build_example32_scenario(), 4000, 1e-12, 7);
  EXPECT_TRUE(c.pass);
  EXPECT_GE(c.min_gap, -1e-12);
  EXPECT_EQ(c.samples, 8000u);
  ASSERT_TRUE(c.kappa.has_value());
  EXPECT_NEAR(*c.kappa, 0.75, 1e-15);
  EXPECT_TRUE(c.witness_label == 1 || c.witness_label == 2);
}

TEST(Certify, ReflectionFailsWithWitness) {
  auto s = build_example32_scenario();
  s.map = [](const Point& x) -> Point { return -x; };
  const auto c = certify(s, 2000, 1e-12, 7);
  EXPECT_FALSE(c.pass);
  EXPECT_LT(c.min_gap, 0.0);
  const double regap = kannan_gap(s, c.witness[0], c.witness[1]);
  EXPECT_EQ(regap, c.min_gap);
}

TEST(Certify, IndependentOfWorkerCount) {
  const auto s = build_example32_scenario();
  const auto one = certify(s, 5000, 1e-12, 99, {.three_point = true, .workers = 1});
  for (unsigned w : {2u, 3u, 8u}) {
    const auto many = certify(s, 5000, 1e-12, 99, {.three_point = true, .workers = w});
    EXPECT_EQ(many.min_gap, one.min_gap);
    EXPECT_EQ(many.samples, one.samples);
    EXPECT_EQ(many.witness_label, one.witness_label);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(many.witness[k], one.witness[k]);
  }
}

TEST(Certify, ChatterjeaAtOneHalfHasNoKappa) {
  const auto c = certify(chatterjea_example32(0.5, 0.0), 500, 1e-12, 1);
  EXPECT_FALSE(c.kappa.has_value());
}

TEST(Certify, Preconditions) {
  const auto s = build_example32_scenario();
  EXPECT_THROW(certify(s, 0, 1e-12, 1), PreconditionError);
  EXPECT_THROW(certify(s, 10, -1.0, 1), PreconditionError);
}

TEST(EstimateConstants, FindsPairNoWorseThanPublished) {
  const auto s = build_example32_scenario();
  const auto e = estimate_constants(s, 1000, 12, 7);
  ASSERT_TRUE(e.feasible);
  ASSERT_TRUE(e.kappa.has_value());
  EXPECT_LE(*e.kappa, 0.75 + 1e-15);
  EXPECT_TRUE(certify(s.with_constants(e.alpha, e.gamma), 1000, 1e-12, 7).pass);
  EXPECT_GE(e.candidates_tried, 1u);
  EXPECT_LE(e.candidates_tried, e.grid_size);
}

TEST(EstimateConstants, ReflectionOnlyAdmitsTheBoundaryPair) {
  auto s = build_example32_scenario();
  s.map = [](const Point& x) -> Point { return -x; };
  const auto e = estimate_constants(s, 200, 4, 7);
  ASSERT_TRUE(e.feasible);
  EXPECT_EQ(e.alpha, 0.5);
  EXPECT_EQ(e.gamma, 0.5);
}

TEST(EstimateConstants, ReportsInfeasibleForExpansion) {
  auto s = build_example32_scenario();
  s.map = [](const Point& x) -> Point {
    return make_point({-std::copysign(std::min(1.0, 2.0 * std::abs(x[0])), x[0])});
  };
  const auto e = estimate_constants(s, 200, 4, 7);
  EXPECT_FALSE(e.feasible);
  EXPECT_EQ(e.candidates_tried, e.grid_size);
}

TEST(Constants, ViolationMessages) {
  EXPECT_FALSE(constants_violation(ContractionKind::KannanG, 0.5, 1.0 / 3.0));
  EXPECT_TRUE(constants_violation(ContractionKind::KannanG, 0.0, 1.0));
  EXPECT_TRUE(constants_violation(ContractionKind::KannanG, 0.0, 0.0));
  EXPECT_TRUE(constants_violation(ContractionKind::ChatterjeaG, 0.6, 0.1));
  EXPECT_FALSE(constants_violation(ContractionKind::ChatterjeaG, 0.5, 0.5));
  EXPECT_THROW(build_example32_scenario().with_constants(0.2, 1.0), PreconditionError);
}

}  // namespace
}  // namespace gcyc
