#include "gcyc/corpus.hpp"
#include "gcyc/cyclic.hpp"
#include "gcyc/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace gcyc {
namespace {

CyclicCover two_halves() {
  return CyclicCover({SubsetSpec::from_boxes({Box::interval(0.0, 1.0)}),
                      SubsetSpec::from_boxes({Box::interval(-1.0, 0.0)})});
}

TEST(CyclicCover, NextLabelWrapsAround) {
  const auto cover = two_halves();
  EXPECT_EQ(cover.size(), 2);
  EXPECT_EQ(cover.next_label(1), 2);
  EXPECT_EQ(cover.next_label(2), 1);
  EXPECT_THROW(cover.subset(0), PreconditionError);
  EXPECT_THROW(cover.subset(3), PreconditionError);
}

TEST(CyclicCover, LocateIncludesSharedBoundary) {
  const auto cover = two_halves();
  EXPECT_EQ(locate(cover, make_point({0.0})), (std::vector<int>{1, 2}));
  EXPECT_EQ(locate(cover, make_point({0.5})), (std::vector<int>{1}));
  EXPECT_EQ(locate(cover, make_point({-0.5})), (std::vector<int>{2}));
  EXPECT_TRUE(locate(cover, make_point({1.5})).empty());
}

TEST(CyclicValidation, Example32MapIsCyclic) {
  const auto s = build_example32_scenario();
  const auto r = validate_cyclic_cover(s.cover, s.map, 7, 1000);
  EXPECT_TRUE(r.pass());
  ASSERT_EQ(r.subsets.size(), 2u);
  for (const auto& sub : r.subsets) {
    EXPECT_EQ(sub.samples, 1000u);
    EXPECT_EQ(sub.violations, 0u);
  }
}

TEST(CyclicValidation, SignPreservingMapFailsWithWitness) {
  const auto cover = two_halves();
  const Operator keep = [](const Point& x) -> Point { return 0.5 * x; };
  const auto r = validate_cyclic_cover(cover, keep, 11, 200, 4);
  EXPECT_FALSE(r.pass());
  ASSERT_EQ(r.subsets.size(), 2u);
  for (const auto& sub : r.subsets) {
    EXPECT_FALSE(sub.pass);
    EXPECT_GT(sub.violations, 0u);
    EXPECT_LE(sub.witnesses.size(), 4u);
    ASSERT_FALSE(sub.witnesses.empty());
    const auto& w = sub.witnesses.front();
    EXPECT_EQ(w.from_label, sub.label);
    EXPECT_NEAR(w.image[0], 0.5 * w.x[0], 1e-15);
    for (int l : w.image_labels) EXPECT_NE(l, cover.next_label(sub.label));
  }
}

TEST(CyclicValidation, ThreeSetRotationPasses) {
  // Rotation by 120 degrees permutes three sectors of the plane.
  const double pi = std::acos(-1.0);
  const Box domain(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1));
  auto sector = [&](int k) {
    return SubsetSpec::from_predicate(
        [k, pi](const Point& p) {
          if (p.norm() < 1e-12) return true;
          double a = std::atan2(p[1], p[0]);
          if (a < 0) a += 2 * pi;
          const double lo = 2 * pi * k / 3.0, hi = 2 * pi * (k + 1) / 3.0;
          return a >= lo - 1e-9 && a <= hi + 1e-9;
        },
        domain, "sector " + std::to_string(k));
  };
  const CyclicCover cover({sector(0), sector(1), sector(2)});
  const double c = std::cos(2 * pi / 3), sn = std::sin(2 * pi / 3);
  const Operator rot = [c, sn](const Point& p) -> Point {
    Point q(2);
    q << 0.5 * (c * p[0] - sn * p[1]), 0.5 * (sn * p[0] + c * p[1]);
    return q;
  };
  EXPECT_TRUE(validate_cyclic_cover(cover, rot, 3, 300).pass());
}

TEST(CyclicValidation, EmptySubsetIsAPrecondition) {
  const Box domain = Box::interval(-1.0, 1.0);
  const CyclicCover cover({SubsetSpec::from_predicate([](const Point&) { return false; }, domain, "empty", 50),
                           SubsetSpec::from_boxes({domain})});
  const Operator id = [](const Point& x) { return x; };
  EXPECT_THROW(validate_cyclic_cover(cover, id, 1, 10), PreconditionError);
}

TEST(CyclicValidation, DeterministicForSeed) {
  const auto cover = two_halves();
  const Operator keep = [](const Point& x) -> Point { return 0.5 * x; };
  const auto a = validate_cyclic_cover(cover, keep, 5, 100);
  const auto b = validate_cyclic_cover(cover, keep, 5, 100);
  ASSERT_EQ(a.subsets.size(), b.subsets.size());
  for (std::size_t i = 0; i < a.subsets.size(); ++i) {
    EXPECT_EQ(a.subsets[i].violations, b.subsets[i].violations);
    EXPECT_EQ(a.subsets[i].witnesses.front().x[0], b.subsets[i].witnesses.front().x[0]);
  }
}

}  // namespace
}  // namespace gcyc
