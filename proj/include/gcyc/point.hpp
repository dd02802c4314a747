#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gcyc {

using Point = Eigen::VectorXd;

/// Self-map of the carrier set.
using Operator = std::function<Point(const Point&)>;

/// Points closer than this in the inf-norm are treated as equal when an
/// axiom requires distinct arguments.
inline constexpr double kDistinctPointSeparation = 1e-9;

/// Strict inequalities "0 < v" are tested as "v > kStrictTolerance".
inline constexpr double kStrictTolerance = 1e-12;

bool all_finite(const Point& p);

/// Inf-norm distance, used only to decide whether two points are distinct.
double separation(const Point& a, const Point& b);

std::string format_point(const Point& p);

Point make_point(std::initializer_list<double> coords);

/// Closed coordinate box [lower, upper]; bounds may be infinite.
struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Box() = default;
  Box(Eigen::VectorXd lo, Eigen::VectorXd hi);

  static Box interval(double lo, double hi);

  Eigen::Index dimension() const { return lower.size(); }
  bool bounded() const;
  bool contains(const Point& p, double band = 0.0) const;

  /// Uniform sample; requires a bounded box.
  Point sample(std::mt19937_64& rng) const;
};

/// Throws DomainError if p has the wrong dimension, a non-finite coordinate,
/// or lies outside the box.
void require_in_domain(const Box& domain, const Point& p, const char* what = "point");

/// Seeded source of points. `next` returns nullopt once exhausted.
class PointSource {
 public:
  using Generator = std::function<std::optional<Point>()>;

  PointSource(Generator next, std::uint64_t seed) : next_(std::move(next)), seed_(seed) {}

  /// Uniform sampler over a bounded box, never exhausted.
  static PointSource uniform(const Box& box, std::uint64_t seed);

  /// Replays a fixed list, then reports exhaustion.
  static PointSource from_list(std::vector<Point> points);

  std::optional<Point> next() { return next_(); }
  std::uint64_t seed() const { return seed_; }

 private:
  Generator next_;
  std::uint64_t seed_;
};

/// Deterministic RNG for a (seed, stream, block) triple.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t block = 0);

}  // namespace gcyc
