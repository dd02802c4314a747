#pragma once

#include "gcyc/control.hpp"
#include "gcyc/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gcyc {

/// Piecewise map on [-1, 1]:
///   -x/2 e^{-1/|x|}  for x in (0, 1]
///   0                for x = 0
///   -x/3 e^{-1/|x|}  for x in [-1, 0)
/// Throws DomainError for |x| > 1.
double example32_map(double x);

/// Domain [-1, 1], G = g_sum(|.|), cover A_1 = [0, 1], A_2 = [-1, 0],
/// phi = identity, psi = 0, Kannan with (alpha, gamma) = (1/2, 1/3).
Scenario build_example32_scenario();

enum class Example31Variant { Kannan, Chatterjea };

/// Integral-type phi built from `rho`, psi = 0, on the given base geometry
/// (defaults to the example32 space, cover and map).
Scenario build_example31_scenario(const DensityFn& rho, double alpha, double gamma,
                                  Example31Variant variant,
                                  std::optional<Scenario> base = std::nullopt,
                                  double quad_tol = 1e-12);

/// Built-in scenario plus the results it is expected to reproduce.
struct CorpusEntry {
  std::string id;
  std::string description;
  Scenario scenario;
  std::optional<Point> expected_fixed_point;
  /// A constant pair known to be feasible.
  std::optional<std::pair<double, double>> feasible_constants;
};

std::vector<std::string> corpus_ids();

/// Rebuilds the entry for `id`; nullopt for unknown ids.
std::optional<CorpusEntry> corpus_entry(const std::string& id);

}  // namespace gcyc
