#pragma once

#include "gcyc/control.hpp"
#include "gcyc/cyclic.hpp"
#include "gcyc/gmetric.hpp"
#include "gcyc/point.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace gcyc {

enum class ContractionKind { KannanG, ChatterjeaG, ZamfirescuMetric };

const char* kind_name(ContractionKind kind);

struct SolverDefaults {
  double tol = 1e-8;
  std::size_t max_iter = 200;
  std::uint64_t seed = 7;
};

/// Everything a certification or solve needs: the space, the cover, the
/// operator, the control pair, and the contraction constants (alpha, gamma).
/// For Chatterjea, gamma plays the role of the second constant delta.
struct Scenario {
  std::string id;
  Box domain;
  GMetricFn g;
  CyclicCover cover;
  Operator map;
  AlteringDistanceFn phi = AlteringDistanceFn::identity();
  PsiFn psi = PsiFn::zero();
  PsiMode psi_mode = PsiMode::DegenerateAllowed;
  ContractionKind kind = ContractionKind::KannanG;
  double alpha = 0.0;
  double gamma = 0.0;
  SolverDefaults defaults;

  int dimension() const { return static_cast<int>(domain.dimension()); }

  /// Same scenario with different constants; the result is validated.
  Scenario with_constants(double alpha, double gamma) const;
};

/// Admissible constant region of each kind:
///   KannanG      0 <= gamma < 1, 0 < alpha + gamma <= 1
///   ChatterjeaG  0 <= alpha <= 1/2, 0 < alpha + gamma <= 1
/// Returns a description of the first violated clause, or nullopt.
std::optional<std::string> constants_violation(ContractionKind kind, double alpha, double gamma);

/// Throws PreconditionError if the constants are outside the kind's region or
/// the cover/domain dimensions disagree.
void validate_scenario(const Scenario& s);

}  // namespace gcyc
