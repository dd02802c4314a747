#pragma once

#include "gcyc/gmetric.hpp"
#include "gcyc/point.hpp"
#include "gcyc/scenario.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace gcyc {

// Gap convention: gap = rhs - lhs. A nonnegative gap means the contraction
// inequality holds at that tuple.
//
// Every gap evaluator requires x in A_i and y, z in A_{i+1} for some label i
// and throws AdjacencyError otherwise.

/// Three-point Kannan form with beta = gamma / 2:
///   phi(alpha G(x,Tx,Tx) + beta (G(y,Ty,Ty) + G(z,Tz,Tz)))
///     - psi(G(x,Tx,Tx), G(y,Ty,Ty), G(z,Tz,Tz)) - phi(G(Tx,Ty,Tz))
double kannan_gap(const Scenario& s, const Point& x, const Point& y, const Point& z);

/// Two-point Kannan form (z = y) with gamma used directly.
double kannan_gap(const Scenario& s, const Point& x, const Point& y);

/// Three-point Chatterjea form with beta = gamma:
///   phi(alpha G(x,Ty,Tz) + beta G(y,z,Tx))
///     - psi(G(x,Ty,Tz), G(y,z,Tx), G(z,y,Tx)) - phi(G(Tx,Ty,Tz))
double chatterjea_gap(const Scenario& s, const Point& x, const Point& y, const Point& z);

/// Two-point Chatterjea form (z = y): phi(alpha G(x,Ty,Ty) + gamma G(y,y,Tx)) - ...
double chatterjea_gap(const Scenario& s, const Point& x, const Point& y);

/// Dispatches on s.kind.
double contraction_gap(const Scenario& s, const Point& x, const Point& y, const Point& z);
double contraction_gap(const Scenario& s, const Point& x, const Point& y);

/// Classic Kannan gap alpha [d(x,Tx) + d(y,Ty)] - d(Tx,Ty).
double classic_kannan_gap(const MetricFn& d, const Operator& map, double alpha, const Point& x,
                          const Point& y);

/// Classic Chatterjea gap alpha [d(x,Ty) + d(y,Tx)] - d(Tx,Ty).
double classic_chatterjea_gap(const MetricFn& d, const Operator& map, double alpha,
                              const Point& x, const Point& y);

struct ZamfirescuResult {
  /// rhs_k - d(Tx,Ty) for (i) alpha d(x,y), (ii) beta [d(x,Tx)+d(y,Ty)],
  /// (iii) gamma [d(x,Ty)+d(y,Tx)].
  std::array<double, 3> gaps{};
  bool any_pass = false;
};

/// Requires 0 <= alpha < 1 and 0 <= beta, gamma < 1/2.
ZamfirescuResult zamfirescu_check(const MetricFn& d, const Operator& map, double alpha,
                                  double beta, double gamma, const Point& x, const Point& y,
                                  double tol = 0.0);

/// Sampled evidence that a scenario's contraction inequality holds.
struct Certificate {
  ContractionKind kind{};
  double alpha = 0.0;
  double gamma = 0.0;
  std::size_t samples = 0;
  double min_gap = 0.0;
  /// (x, y, z) realizing min_gap, and the label i with x in A_i.
  std::array<Point, 3> witness;
  int witness_label = 0;
  std::optional<double> kappa;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool three_point = false;
  bool pass = false;
};

struct CertifyOptions {
  /// Also evaluate three-point tuples with independently drawn y, z.
  bool three_point = false;
  /// Worker threads; results do not depend on this.
  unsigned workers = 1;
};

/// For every label i draws `samples` tuples x in A_i, y in A_{i+1} (z = y,
/// plus an independent z in three-point mode) and records the minimum gap.
/// pass iff min_gap >= -tol.
Certificate certify(const Scenario& s, std::size_t samples, double tol, std::uint64_t seed,
                    const CertifyOptions& options = {});

struct ConstantsEstimate {
  double alpha = 0.0;
  double gamma = 0.0;
  std::optional<double> kappa;
  bool feasible = false;
  /// Candidates certified before the search stopped.
  std::size_t candidates_tried = 0;
  std::size_t grid_size = 0;
};

/// Uniform grid over the kind's admissible region (gamma = 1 excluded, alpha
/// = 1/2 included for Chatterjea). Returns the certified pair with the
/// smallest contraction factor, ties broken by smaller alpha then gamma.
ConstantsEstimate estimate_constants(const Scenario& s, std::size_t samples, int resolution,
                                     std::uint64_t seed, double tol = 1e-12,
                                     const CertifyOptions& options = {});

}  // namespace gcyc
