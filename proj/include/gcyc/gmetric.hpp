#pragma once

#include "gcyc/point.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gcyc {

/// Ordinary metric d on a box domain.
class MetricFn {
 public:
  using Fn = std::function<double(const Point&, const Point&)>;

  MetricFn(Fn fn, Box domain) : fn_(std::move(fn)), domain_(std::move(domain)) {}

  /// d(x, y) = |x - y| in the Euclidean norm (absolute value in 1-D).
  static MetricFn euclidean(Box domain);

  double operator()(const Point& x, const Point& y) const { return fn_(x, y); }
  const Box& domain() const { return domain_; }

 private:
  Fn fn_;
  Box domain_;
};

/// Ternary distance G on a box domain. Whether G actually is a G-metric is
/// established by check_g_axioms, never assumed.
class GMetricFn {
 public:
  using Fn = std::function<double(const Point&, const Point&, const Point&)>;

  GMetricFn(Fn fn, Box domain) : fn_(std::move(fn)), domain_(std::move(domain)) {}

  double operator()(const Point& x, const Point& y, const Point& z) const { return fn_(x, y, z); }
  const Box& domain() const { return domain_; }

 private:
  Fn fn_;
  Box domain_;
};

/// G_s(x,y,z) = d(x,y) + d(y,z) + d(x,z).
GMetricFn g_sum_from_metric(const MetricFn& d);

/// G_m(x,y,z) = max{d(x,y), d(y,z), d(x,z)}.
GMetricFn g_max_from_metric(const MetricFn& d);

enum class Axiom { G1, G2, G3, G4, G5 };

inline constexpr std::array<Axiom, 5> kAllAxioms{Axiom::G1, Axiom::G2, Axiom::G3, Axiom::G4,
                                                 Axiom::G5};

const char* axiom_name(Axiom a);

struct AxiomResult {
  Axiom axiom{};
  bool pass = true;
  double worst_violation = 0.0;
  /// Arguments realizing the worst violation; empty when none was found.
  std::vector<Point> witness;
  /// Number of tuples the axiom was actually evaluated on.
  std::size_t evaluated = 0;
};

struct AxiomReport {
  std::array<AxiomResult, 5> results;
  std::size_t samples_used = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;

  bool pass() const;
  const AxiomResult& operator[](Axiom a) const { return results[static_cast<std::size_t>(a)]; }
};

/// Raised when the sampler runs dry before `count` samples; carries what was
/// evaluated so far.
class PartialReportError : public std::runtime_error {
 public:
  PartialReportError(AxiomReport partial, std::size_t requested);
  const AxiomReport& partial() const noexcept { return partial_; }
  std::size_t requested() const noexcept { return requested_; }

 private:
  AxiomReport partial_;
  std::size_t requested_;
};

/// Property-checks G1-G5 on `count` samples, each made of four fresh points
/// (x, y, z, a) drawn from `sampler`:
///   G1  G(x,x,x) = 0
///   G2  G(x,x,y) > kStrictTolerance for x != y
///   G3  G(x,x,y) <= G(x,y,z) for y != z
///   G4  all six permutations of (x,y,z) agree
///   G5  G(x,y,z) <= G(x,a,a) + G(a,y,z)
/// An axiom passes iff its worst violation is <= tol.
AxiomReport check_g_axioms(const GMetricFn& g, PointSource& sampler, std::size_t count, double tol);

/// Largest sampled value of G(x,y,z); a lower estimate of the G-diameter.
double estimate_g_diameter(const GMetricFn& g, PointSource& sampler, std::size_t count);

}  // namespace gcyc
