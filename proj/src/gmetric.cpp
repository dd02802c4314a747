#include "gcyc/gmetric.hpp"

#include "gcyc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gcyc {

MetricFn MetricFn::euclidean(Box domain) {
  return MetricFn([](const Point& x, const Point& y) { return (x - y).norm(); }, std::move(domain));
}

GMetricFn g_sum_from_metric(const MetricFn& d) {
  return GMetricFn(
      [d](const Point& x, const Point& y, const Point& z) { return d(x, y) + d(y, z) + d(x, z); },
      d.domain());
}

GMetricFn g_max_from_metric(const MetricFn& d) {
  return GMetricFn(
      [d](const Point& x, const Point& y, const Point& z) {
        return std::max({d(x, y), d(y, z), d(x, z)});
      },
      d.domain());
}

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::G1: return "G1";
    case Axiom::G2: return "G2";
    case Axiom::G3: return "G3";
    case Axiom::G4: return "G4";
    case Axiom::G5: return "G5";
  }
  return "?";
}

bool AxiomReport::pass() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.pass; });
}

PartialReportError::PartialReportError(AxiomReport partial, std::size_t requested)
    : std::runtime_error("sampler exhausted after " + std::to_string(partial.samples_used) +
                         " of " + std::to_string(requested) + " samples"),
      partial_(std::move(partial)),
      requested_(requested) {}

namespace {

void record(AxiomResult& r, double violation, std::vector<Point> witness) {
  ++r.evaluated;
  // NaN counts as an infinite violation.
  if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
  if (violation > r.worst_violation) {
    r.worst_violation = violation;
    r.witness = std::move(witness);
  }
}

void finalize(AxiomReport& report) {
  for (auto& r : report.results) r.pass = r.worst_violation <= report.tolerance;
}

}  // namespace

AxiomReport check_g_axioms(const GMetricFn& g, PointSource& sampler, std::size_t count, double tol) {
  if (count < 1) throw PreconditionError("check_g_axioms: count must be >= 1");
  if (!(tol >= 0.0)) throw PreconditionError("check_g_axioms: tol must be >= 0");

  AxiomReport report;
  report.tolerance = tol;
  report.seed = sampler.seed();
  for (std::size_t i = 0; i < report.results.size(); ++i) report.results[i].axiom = kAllAxioms[i];
  auto& g1 = report.results[0];
  auto& g2 = report.results[1];
  auto& g3 = report.results[2];
  auto& g4 = report.results[3];
  auto& g5 = report.results[4];

  for (std::size_t n = 0; n < count; ++n) {
    std::array<Point, 4> pts;
    for (auto& p : pts) {
      auto next = sampler.next();
      if (!next) {
        finalize(report);
        throw PartialReportError(std::move(report), count);
      }
      p = std::move(*next);
    }
    const Point& x = pts[0];
    const Point& y = pts[1];
    const Point& z = pts[2];
    const Point& a = pts[3];

    record(g1, std::abs(g(x, x, x)), {x, x, x});

    if (separation(x, y) > kDistinctPointSeparation) {
      const double v = g(x, x, y);
      record(g2, v > kStrictTolerance ? 0.0 : separation(x, y), {x, x, y});
    }

    const double gxyz = g(x, y, z);
    if (separation(y, z) > kDistinctPointSeparation) {
      record(g3, std::max(0.0, g(x, x, y) - gxyz), {x, y, z});
    }

    const std::array<double, 6> perms{gxyz,       g(x, z, y), g(y, x, z),
                                      g(y, z, x), g(z, x, y), g(z, y, x)};
    const auto [lo, hi] = std::minmax_element(perms.begin(), perms.end());
    record(g4, *hi - *lo, {x, y, z});

    record(g5, std::max(0.0, gxyz - g(x, a, a) - g(a, y, z)), {x, y, z, a});

    report.samples_used = n + 1;
  }
  finalize(report);
  return report;
}

double estimate_g_diameter(const GMetricFn& g, PointSource& sampler, std::size_t count) {
  double best = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    auto x = sampler.next();
    auto y = sampler.next();
    auto z = sampler.next();
    if (!x || !y || !z) break;
    best = std::max(best, g(*x, *y, *z));
  }
  return best;
}

}  // namespace gcyc
