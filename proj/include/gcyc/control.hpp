#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gcyc {

/// phi : [0, inf) -> [0, inf). Whether it is an altering distance function is
/// checked by check_control_pair on a grid.
class AlteringDistanceFn {
 public:
  using Fn = std::function<double(double)>;

  explicit AlteringDistanceFn(Fn fn, std::string label = "custom")
      : fn_(std::move(fn)), label_(std::move(label)) {}

  static AlteringDistanceFn identity();

  double operator()(double t) const { return fn_(t); }
  const std::string& label() const { return label_; }

 private:
  Fn fn_;
  std::string label_;
};

/// psi : [0, inf)^3 -> [0, inf).
class PsiFn {
 public:
  using Fn = std::function<double(double, double, double)>;

  explicit PsiFn(Fn fn, std::string label = "custom")
      : fn_(std::move(fn)), label_(std::move(label)) {}

  static PsiFn zero();

  double operator()(double a, double b, double c) const { return fn_(a, b, c); }
  const std::string& label() const { return label_; }

 private:
  Fn fn_;
  std::string label_;
};

/// Density rho : [0, inf) -> [0, inf) for integral-type phi.
class DensityFn {
 public:
  using Fn = std::function<double(double)>;

  explicit DensityFn(Fn fn, std::string label = "custom")
      : fn_(std::move(fn)), label_(std::move(label)) {}

  double operator()(double s) const { return fn_(s); }
  const std::string& label() const { return label_; }

 private:
  Fn fn_;
  std::string label_;
};

/// Adaptive Simpson quadrature on [a, b]. A panel is accepted when the
/// difference between its one-panel and two-panel estimates is at most its
/// share of `tol`. `f` is called only at points of [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48);

/// phi(t) = integral_0^t rho(s) ds. rho is screened for negative or
/// non-finite values on a grid over [0, t_max]; evaluation re-checks every
/// integrand value it touches. phi(0) = 0 exactly.
AlteringDistanceFn make_integral_phi(const DensityFn& rho, double quad_tol, double t_max = 8.0);

enum class PsiMode {
  /// psi identically zero on the grid is flagged but accepted.
  DegenerateAllowed,
  /// psi must be positive away from the origin.
  Strict,
};

struct ControlReport {
  struct Check {
    bool pass = true;
    double worst_violation = 0.0;
    /// Grid location (t, or a psi argument triple) of the first violation.
    std::vector<double> witness;
  };

  Check phi_zero_at_zero;
  Check phi_monotone;
  Check phi_positive;
  Check psi_zero_at_origin;
  Check psi_positive;
  /// psi vanished on every sampled triple; accepted in DegenerateAllowed mode.
  bool psi_degenerate = false;
  PsiMode psi_mode = PsiMode::DegenerateAllowed;

  /// Continuity diagnostic: largest |phi(t_{i+1}) - phi(t_i)| on the grid and,
  /// when a modulus was supplied, whether every step stayed within it.
  double max_oscillation = 0.0;
  std::optional<bool> oscillation_within_modulus;

  std::size_t grid_size = 0;
  double grid_min = 0.0;
  double grid_max = 0.0;
  double tolerance = 0.0;

  bool pass() const;
};

struct ControlCheckOptions {
  PsiMode psi_mode = PsiMode::DegenerateAllowed;
  /// Per-step oscillation bound for the continuity diagnostic.
  std::optional<double> oscillation_modulus;
  /// Grid points used per axis for psi triples beyond the axes and diagonal.
  std::size_t psi_subgrid = 24;
};

/// Checks phi(0) = 0, phi nondecreasing within tol, phi(t) > kStrictTolerance
/// for t > kStrictTolerance, psi(0,0,0) = 0 and psi positivity on grid
/// triples. Throws PreconditionError on an empty or unsorted grid.
ControlReport check_control_pair(const AlteringDistanceFn& phi, const PsiFn& psi,
                                 const std::vector<double>& grid, double tol,
                                 const ControlCheckOptions& options = {});

/// n+1 evenly spaced points on [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t n);

}  // namespace gcyc
