#include "gcyc/corpus.hpp"
#include "gcyc/errors.hpp"
#include "gcyc/gmetric.hpp"
#include "gcyc/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace gcyc {
namespace {

Point p1(double v) { return make_point({v}); }

TEST(Picard, Example32FromOneConverges) {
  const auto s = build_example32_scenario();
  const auto t = picard(s, p1(1.0), 1e-8, 200);
  EXPECT_EQ(t.outcome, Outcome::Converged);
  EXPECT_LE(std::abs(t.final_iterate[0]), 1e-8);
  EXPECT_NEAR(t.iterates[1][0], -0.18393972058572116, 1e-16);
  EXPECT_NEAR(t.residuals[0], 2.0 * (1.0 + 0.18393972058572116), 1e-15);
  EXPECT_EQ(t.iterates.size(), t.steps() + 1);
  EXPECT_FALSE(t.truncated());
  EXPECT_EQ(t.labels[0], (std::vector<int>{1}));
  EXPECT_EQ(t.labels[1], (std::vector<int>{2}));
}

TEST(Picard, AlternatesBetweenSubsets) {
  const auto s = build_example32_scenario();
  const auto t = picard(s, p1(-0.9), 1e-12, 200);
  for (std::size_t n = 0; n + 1 < t.iterates.size(); ++n) {
    if (t.iterates[n][0] == 0.0) break;
    EXPECT_LE(t.iterates[n][0] * t.iterates[n + 1][0], 0.0);
  }
}

TEST(Picard, StartAtFixedPointConvergesInOneStep) {
  const auto t = picard(build_example32_scenario(), p1(0.0), 1e-8, 10);
  EXPECT_EQ(t.outcome, Outcome::Converged);
  EXPECT_EQ(t.steps(), 1u);
  EXPECT_EQ(t.residuals[0], 0.0);
}

TEST(Picard, ExhaustsBudget) {
  const auto t = picard(build_example32_scenario(), p1(1.0), 1e-300, 2);
  EXPECT_EQ(t.outcome, Outcome::MaxIterExhausted);
  EXPECT_EQ(t.steps(), 2u);
}

TEST(Picard, DetectsEscapeFromCover) {
  auto s = build_example32_scenario();
  s.cover = CyclicCover({SubsetSpec::from_boxes({Box::interval(0.5, 1.0)}),
                         SubsetSpec::from_boxes({Box::interval(-1.0, -0.5)})});
  const auto t = picard(s, p1(1.0), 1e-8, 50);
  EXPECT_EQ(t.outcome, Outcome::EscapedCover);
  EXPECT_TRUE(t.labels.back().empty());
}

TEST(Picard, DetectsNonFinite) {
  auto s = build_example32_scenario();
  s.map = [](const Point& x) -> Point { return x * std::numeric_limits<double>::quiet_NaN(); };
  EXPECT_EQ(picard(s, p1(0.5), 1e-8, 5).outcome, Outcome::NonFinite);
}

TEST(Picard, IterateCapKeepsResidualsAndTail) {
  auto slow = build_example32_scenario();
  slow.map = [](const Point& x) -> Point { return -0.999 * x; };
  const auto t = picard(slow, p1(1.0), 1e-300, 100, 10);
  EXPECT_EQ(t.steps(), 100u);
  EXPECT_EQ(t.iterates.size(), 10u);
  EXPECT_TRUE(t.truncated());
  EXPECT_EQ(t.tail.size(), kTailWindow);
  EXPECT_EQ(t.tail_start + t.tail.size(), 101u);
  EXPECT_EQ(t.tail.back(), t.final_iterate);
}

TEST(Picard, Preconditions) {
  const auto s = build_example32_scenario();
  EXPECT_THROW(picard(s, p1(2.0), 1e-8, 10), PreconditionError);
  EXPECT_THROW(picard(s, p1(0.5), 1e-8, 0), PreconditionError);
  EXPECT_THROW(picard(s, make_point({0.1, 0.2}), 1e-8, 10), PreconditionError);
}

TEST(ContractionFactor, Values) {
  EXPECT_NEAR(*contraction_factor(ContractionKind::KannanG, 0.5, 1.0 / 3.0), 0.75, 1e-15);
  EXPECT_NEAR(*contraction_factor(ContractionKind::ChatterjeaG, 0.25, 0.5), 1.0 / 3.0, 1e-15);
  EXPECT_FALSE(contraction_factor(ContractionKind::ChatterjeaG, 0.5, 0.0));
  EXPECT_FALSE(contraction_factor(ContractionKind::ZamfirescuMetric, 0.5, 0.1));
  EXPECT_THROW(contraction_factor(ContractionKind::KannanG, 0.0, 1.0), DomainError);
}

TEST(APriori, KnownValues) {
  EXPECT_EQ(a_priori_iterations(0.75, 1.0, 1e-6), 49u);
  EXPECT_EQ(a_priori_iterations(0.75, 2.3678794411714423, 1e-8), 68u);
  EXPECT_EQ(a_priori_iterations(0.5, 1.0, 0.25), 2u);
  EXPECT_EQ(a_priori_iterations(0.5, 0.1, 0.25), 0u);
  EXPECT_EQ(a_priori_iterations(0.0, 5.0, 1e-8), 1u);
  EXPECT_THROW(a_priori_iterations(1.0, 1.0, 1e-6), PreconditionError);
}

TEST(APriori, IsTheSmallestSufficientCount) {
  auto rng = make_rng(3);
  std::uniform_real_distribution<double> k(0.05, 0.95), r(0.1, 10.0), e(-12.0, -1.0);
  for (int i = 0; i < 500; ++i) {
    const double kappa = k(rng), r0 = r(rng), tol = std::pow(10.0, e(rng));
    const std::size_t n = a_priori_iterations(kappa, r0, tol);
    EXPECT_LE(std::pow(kappa, double(n)) * r0, tol);
    if (n > 0) EXPECT_GT(std::pow(kappa, double(n - 1)) * r0, tol);
  }
}

TEST(APriori, BoundsObservedCountForExample32) {
  const auto s = build_example32_scenario();
  for (double x0 : {1.0, -1.0, 0.37, -0.004, 0.999, -0.5}) {
    const auto t = picard(s, p1(x0), 1e-8, 200);
    ASSERT_EQ(t.outcome, Outcome::Converged);
    EXPECT_LE(t.steps(), a_priori_iterations(0.75, t.residuals[0], 1e-8) + 1) << x0;
  }
}

TEST(VerifyFixedPoint, ZeroIsTheFixedPoint) {
  const auto s = build_example32_scenario();
  const auto r = verify_fixed_point(s, p1(0.0), 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.defect, 0.0);
  EXPECT_EQ(r.membership, (std::vector<int>{1, 2}));
  EXPECT_TRUE(r.missing.empty());
}

TEST(VerifyFixedPoint, HalfIsNot) {
  const auto r = verify_fixed_point(build_example32_scenario(), p1(0.5), 1e-12);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.defect, 1.0676676416183063, 1e-15);
  EXPECT_EQ(r.missing, (std::vector<int>{2}));
}

TEST(VerifyFixedPoint, OutsideDomainThrows) {
  EXPECT_THROW(verify_fixed_point(build_example32_scenario(), p1(1.5), 1e-12), DomainError);
}

TEST(TraceProperties, Example32TraceSatisfiesEverything) {
  const auto s = build_example32_scenario();
  for (double x0 : {1.0, -1.0, 0.37, -0.004}) {
    const auto t = picard(s, p1(x0), 1e-8, 200);
    const auto r = check_trace_properties(t, s, 1e-9);
    EXPECT_TRUE(r.pass()) << x0;
    EXPECT_TRUE(r.monotone);
    EXPECT_TRUE(r.recursion);
    EXPECT_TRUE(r.geometric);
    EXPECT_TRUE(r.convergence_checked);
    EXPECT_LT(std::max({r.limit_sup, r.limit_nnu, r.limit_nuu, r.limit_nmu, r.cauchy}), 1e-6);
    EXPECT_GE(r.window_size, 2u);
  }
}

TEST(TraceProperties, ExplicitGeometricBound) {
  const auto s = build_example32_scenario();
  const auto t = picard(s, p1(1.0), 1e-14, 200);
  for (std::size_t n = 0; n < t.residuals.size(); ++n)
    EXPECT_LE(t.residuals[n], std::pow(0.75 + 1e-9, double(n)) * t.residuals[0]);
}

TEST(TraceProperties, DetectsBrokenRecursion) {
  auto s = build_example32_scenario();
  s.map = [](const Point& x) -> Point { return -0.9 * x; };
  const auto t = picard(s, p1(1.0), 1e-8, 300);
  const auto r = check_trace_properties(t, s, 1e-9);
  EXPECT_TRUE(r.monotone);
  EXPECT_FALSE(r.recursion);
  EXPECT_FALSE(r.geometric);
  ASSERT_TRUE(r.recursion_violation.has_value());
  EXPECT_EQ(*r.recursion_violation, 1u);
  EXPECT_FALSE(r.pass());
}

TEST(TraceProperties, DetectsNonMonotoneResiduals) {
  auto s = build_example32_scenario();
  s.map = [](const Point& x) -> Point { return make_point({x[0] > 0.995 ? 0.99 : -0.5 * x[0]}); };
  const auto t = picard(s, p1(1.0), 1e-8, 300);
  const auto r = check_trace_properties(t, s, 1e-9);
  EXPECT_FALSE(r.monotone);
  EXPECT_EQ(r.monotone_violation, std::optional<std::size_t>(1));
}

TEST(TraceProperties, UnconvergedTraceSkipsConvergenceChecks) {
  const auto s = build_example32_scenario();
  const auto t = picard(s, p1(1.0), 1e-300, 2);
  const auto r = check_trace_properties(t, s, 1e-9);
  EXPECT_FALSE(r.convergence_checked);
  EXPECT_FALSE(r.notice.empty());
}

TEST(TraceProperties, ChatterjeaHalfReportsTwoStepRatio) {
  auto s = build_example32_scenario();
  s.kind = ContractionKind::ChatterjeaG;
  s = s.with_constants(0.5, 0.0);
  const auto t = picard(s, p1(1.0), 1e-8, 200);
  const auto r = check_trace_properties(t, s, 1e-9);
  EXPECT_FALSE(r.kappa.has_value());
  EXPECT_TRUE(r.two_step_ratio.has_value());
}

TEST(MultiStart, AllStartsAgree) {
  const auto s = build_example32_scenario();
  auto rng = make_rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> starts;
  for (int i = 0; i < 50; ++i) starts.push_back(p1(u(rng)));
  const auto m = multi_start(s, starts, 1e-10, 200);
  EXPECT_TRUE(m.all_converged);
  EXPECT_LE(m.max_disagreement, 1e-9);
  EXPECT_EQ(m.traces.size(), 50u);
}

TEST(MultiStart, SumAndMaxMetricsShareTheLimit) {
  auto s = build_example32_scenario();
  const auto sum_t = picard(s, p1(0.8), 1e-10, 200);
  s.g = g_max_from_metric(MetricFn::euclidean(s.domain));
  const auto max_t = picard(s, p1(0.8), 1e-10, 200);
  ASSERT_EQ(sum_t.outcome, Outcome::Converged);
  ASSERT_EQ(max_t.outcome, Outcome::Converged);
  EXPECT_NEAR(sum_t.final_iterate[0], max_t.final_iterate[0], 1e-9);
}

TEST(TraceCsv, HeaderAndRows) {
  const auto t = picard(build_example32_scenario(), p1(1.0), 1e-8, 200);
  std::ostringstream out;
  write_trace_csv(out, t);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,x_0,residual,subset_indices");
  std::getline(in, line);
  EXPECT_EQ(line, "0,1,2.3678794411714423,1");
  std::size_t rows = 1;
  std::string last;
  while (std::getline(in, line)) {
    ++rows;
    last = line;
  }
  EXPECT_EQ(rows, t.iterates.size());
  EXPECT_NE(last.find(",,1|2"), std::string::npos) << last;
}

}  // namespace
}  // namespace gcyc
