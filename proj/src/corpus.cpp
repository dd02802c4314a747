#include "gcyc/corpus.hpp"

#include "gcyc/errors.hpp"

#include <cmath>

namespace gcyc {

double example32_map(double x) {
  if (!(std::abs(x) <= 1.0))
    throw DomainError("example32_map is defined on [-1, 1], got " + std::to_string(x));
  // Branch on the sign first so x = 0 never reaches 1/|x|.
  if (x > 0.0) return -(1.0 / 2.0) * x * std::exp(-1.0 / std::abs(x));
  if (x < 0.0) return -(1.0 / 3.0) * x * std::exp(-1.0 / std::abs(x));
  return 0.0;
}

Scenario build_example32_scenario() {
  const Box domain = Box::interval(-1.0, 1.0);
  CyclicCover cover({SubsetSpec::from_boxes({Box::interval(0.0, 1.0)}),
                     SubsetSpec::from_boxes({Box::interval(-1.0, 0.0)})});
  Scenario s{
      .id = "example32",
      .domain = domain,
      .g = g_sum_from_metric(MetricFn::euclidean(domain)),
      .cover = std::move(cover),
      .map = [](const Point& x) { return make_point({example32_map(x[0])}); },
      .phi = AlteringDistanceFn::identity(),
      .psi = PsiFn::zero(),
      .psi_mode = PsiMode::DegenerateAllowed,
      .kind = ContractionKind::KannanG,
      .alpha = 1.0 / 2.0,
      .gamma = 1.0 / 3.0,
      .defaults = {.tol = 1e-8, .max_iter = 200, .seed = 7},
  };
  validate_scenario(s);
  return s;
}

Scenario build_example31_scenario(const DensityFn& rho, double alpha, double gamma,
                                  Example31Variant variant, std::optional<Scenario> base,
                                  double quad_tol) {
  Scenario s = base ? std::move(*base) : build_example32_scenario();
  // phi only ever sees G-values; on [-1, 1] with g_sum these stay below 4.
  s.phi = make_integral_phi(rho, quad_tol, 8.0);
  s.psi = PsiFn::zero();
  s.psi_mode = PsiMode::DegenerateAllowed;
  s.kind = variant == Example31Variant::Kannan ? ContractionKind::KannanG
                                               : ContractionKind::ChatterjeaG;
  s.alpha = alpha;
  s.gamma = gamma;
  s.id = "example31(" + rho.label() + ")";
  validate_scenario(s);
  return s;
}

std::vector<std::string> corpus_ids() {
  return {"example32", "example31-unit", "example31-linear"};
}

std::optional<CorpusEntry> corpus_entry(const std::string& id) {
  if (id == "example32") {
    return CorpusEntry{id, "piecewise exponential map on [-1,1], G = g_sum(|x-y|)",
                       build_example32_scenario(), make_point({0.0}),
                       std::make_pair(1.0 / 2.0, 1.0 / 3.0)};
  }
  if (id == "example31-unit" || id == "example31-linear") {
    const bool unit = id == "example31-unit";
    DensityFn rho = unit ? DensityFn([](double) { return 1.0; }, "1")
                         : DensityFn([](double s) { return 2.0 * s; }, "2*s");
    Scenario s = build_example31_scenario(rho, 1.0 / 2.0, 1.0 / 3.0, Example31Variant::Kannan);
    s.id = id;
    return CorpusEntry{id,
                       unit ? "integral-type phi with unit density on the example32 geometry"
                            : "integral-type phi with density 2s on the example32 geometry",
                       std::move(s), make_point({0.0}), std::make_pair(1.0 / 2.0, 1.0 / 3.0)};
  }
  return std::nullopt;
}

}  // namespace gcyc
