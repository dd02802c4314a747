#pragma once

#include "gcyc/point.hpp"
#include "gcyc/scenario.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gcyc {

enum class Outcome { Converged, MaxIterExhausted, EscapedCover, NonFinite };

const char* outcome_name(Outcome o);

/// Picard orbit x_0, x_1, ... with residuals r_n = G(x_n, x_{n+1}, x_{n+1}).
struct IterationTrace {
  /// Recorded iterates; stops growing once `iterate_cap` is reached.
  std::vector<Point> iterates;
  /// locate() of each recorded iterate.
  std::vector<std::vector<int>> labels;
  /// One residual per step, always complete.
  std::vector<double> residuals;
  Outcome outcome = Outcome::MaxIterExhausted;
  std::size_t iterate_cap = 0;
  Point final_iterate;
  /// The last (up to kTailWindow) iterates and the index of the first one,
  /// kept even when `iterates` was truncated.
  std::vector<Point> tail;
  std::size_t tail_start = 0;

  std::size_t steps() const { return residuals.size(); }
  bool truncated() const { return iterates.size() < residuals.size() + 1; }
};

inline constexpr std::size_t kTailWindow = 32;
inline constexpr std::size_t kDefaultIterateCap = 100000;

/// x_{n+1} = T x_n until r_n <= tol, max_iter steps, an iterate leaves the
/// cover, or a non-finite value appears. Throws PreconditionError if x0 is in
/// no subset or max_iter < 1.
IterationTrace picard(const Scenario& s, const Point& x0, double tol, std::size_t max_iter,
                      std::size_t iterate_cap = kDefaultIterateCap);

/// Residual decay factor: alpha / (1 - gamma) for Kannan, alpha / (1 - alpha)
/// for Chatterjea. nullopt when no geometric rate exists (Chatterjea with
/// alpha = 1/2, or the metric Zamfirescu kind). Throws DomainError for a
/// Kannan gamma of 1.
std::optional<double> contraction_factor(ContractionKind kind, double alpha, double gamma);

/// Smallest n with kappa^n r0 <= tol. 0 when r0 <= tol; 1 when kappa = 0.
/// Throws PreconditionError unless 0 <= kappa < 1.
std::size_t a_priori_iterations(double kappa, double r0, double tol);

struct FixedPointReport {
  Point candidate;
  Point image;
  double defect = 0.0;
  std::vector<int> membership;
  std::vector<int> missing;
  bool pass = false;
};

/// defect = G(u, Tu, Tu); pass iff defect <= tol and u lies in every A_i.
FixedPointReport verify_fixed_point(const Scenario& s, const Point& u, double tol);

struct TraceReport {
  double tolerance = 0.0;

  /// r_{n+1} <= r_n + tol.
  bool monotone = true;
  std::optional<std::size_t> monotone_violation;

  std::optional<double> kappa;
  /// r_n <= kappa r_{n-1} + tol, checked when kappa is defined.
  bool recursion = true;
  std::optional<std::size_t> recursion_violation;
  /// r_n <= (kappa + tol)^n r_0, checked when kappa is defined.
  bool geometric = true;
  std::optional<std::size_t> geometric_violation;

  /// Convergence equivalences on the tail, with u the last iterate.
  bool convergence_checked = false;
  std::string notice;
  std::size_t window_start = 0;
  std::size_t window_size = 0;
  double limit_sup = 0.0;        // max G(u, x_n, x_m)
  double limit_nnu = 0.0;        // max G(x_n, x_n, u)
  double limit_nuu = 0.0;        // max G(x_n, u, u)
  double limit_nmu = 0.0;        // max G(x_n, x_m, u)
  double cauchy = 0.0;           // max G(x_n, x_m, x_m)
  bool convergence = true;
  bool cauchy_pass = true;

  /// Chatterjea alpha = 1/2 diagnostic: G(x_{n-1}, x_{n+1}, x_{n+1}) / (2 r_n)
  /// at the last step with r_n > 0.
  std::optional<double> two_step_ratio;

  bool pass() const;
};

/// Checks residual monotonicity, the kind's residual recursion and geometric
/// bound, and (for converged traces) the G-convergence and G-Cauchy criteria
/// on the tail window. The tail starts where every later residual is <= tol,
/// limited to the last `window` iterates.
TraceReport check_trace_properties(const IterationTrace& trace, const Scenario& s, double tol,
                                   std::size_t window = kTailWindow);

struct MultiStartReport {
  std::vector<Point> starts;
  std::vector<IterationTrace> traces;
  /// Largest G(u_a, u_b, u_b) between final iterates.
  double max_disagreement = 0.0;
  bool all_converged = false;
};

/// Runs picard from each start; an empirical uniqueness probe.
MultiStartReport multi_start(const Scenario& s, const std::vector<Point>& starts, double tol,
                             std::size_t max_iter);

/// Trace CSV: header `n,x_0..x_{d-1},residual,subset_indices`; the residual
/// column of row n is r_n (empty on the final row), labels joined by '|'.
/// Numbers use 17 significant digits.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

}  // namespace gcyc
