#include "gcyc/scenario.hpp"

#include "gcyc/errors.hpp"

#include <cmath>

namespace gcyc {

const char* kind_name(ContractionKind kind) {
  switch (kind) {
    case ContractionKind::KannanG: return "kannan";
    case ContractionKind::ChatterjeaG: return "chatterjea";
    case ContractionKind::ZamfirescuMetric: return "zamfirescu";
  }
  return "?";
}

std::optional<std::string> constants_violation(ContractionKind kind, double alpha, double gamma) {
  if (!std::isfinite(alpha) || !std::isfinite(gamma)) return "constants must be finite";
  const double sum = alpha + gamma;
  switch (kind) {
    case ContractionKind::KannanG:
      if (!(gamma >= 0.0 && gamma < 1.0)) return "0<=gamma<1 violated";
      if (!(sum > 0.0 && sum <= 1.0)) return "0<alpha+gamma<=1 violated";
      if (alpha < 0.0) return "alpha must be >= 0";
      return std::nullopt;
    case ContractionKind::ChatterjeaG:
      if (!(alpha >= 0.0 && alpha <= 0.5)) return "0<=alpha<=1/2 violated";
      if (!(sum > 0.0 && sum <= 1.0)) return "0<alpha+gamma<=1 violated";
      if (gamma < 0.0) return "gamma must be >= 0";
      return std::nullopt;
    case ContractionKind::ZamfirescuMetric:
      return "zamfirescu constants are checked by zamfirescu_check";
  }
  return "unknown kind";
}

void validate_scenario(const Scenario& s) {
  if (auto why = constants_violation(s.kind, s.alpha, s.gamma))
    throw PreconditionError("invalid constants for " + std::string(kind_name(s.kind)) + ": " + *why);
  if (!s.map) throw PreconditionError("scenario has no operator");
}

Scenario Scenario::with_constants(double a, double c) const {
  Scenario copy = *this;
  copy.alpha = a;
  copy.gamma = c;
  validate_scenario(copy);
  return copy;
}

}  // namespace gcyc
