#include "gcyc/control.hpp"

#include "gcyc/errors.hpp"
#include "gcyc/point.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

namespace gcyc {

AlteringDistanceFn AlteringDistanceFn::identity() {
  return AlteringDistanceFn([](double t) { return t; }, "identity");
}

PsiFn PsiFn::zero() {
  return PsiFn([](double, double, double) { return 0.0; }, "zero");
}

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Panels are always split this many times first, so a lucky agreement of
// the coarse estimates on an oscillating integrand is not accepted.
constexpr int kMinLevel = 4;

double simpson_step(const std::function<double(double)>& f, double a, double fa, double m,
                    double fm, double b, double fb, double whole, double tol, int level,
                    int max_level) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, flm, m, fm);
  const double right = simpson(m, fm, frm, b, fb);
  const double two = left + right;
  const bool settled = level >= kMinLevel && std::abs(two - whole) <= tol;
  if (level >= max_level || settled || !(lm > a && rm < b)) return two;
  return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, level + 1, max_level) +
         simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, level + 1, max_level);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (!(tol > 0.0)) throw PreconditionError("adaptive_simpson: tol must be > 0");
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  return simpson_step(f, a, fa, m, fm, b, fb, simpson(a, fa, fm, b, fb), tol, 0, max_depth);
}

AlteringDistanceFn make_integral_phi(const DensityFn& rho, double quad_tol, double t_max) {
  if (!(quad_tol > 0.0)) throw PreconditionError("make_integral_phi: quad_tol must be > 0");
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw PreconditionError("make_integral_phi: t_max must be positive and finite");

  auto checked = [rho](double s) {
    const double v = rho(s);
    if (!std::isfinite(v))
      throw EvalError("density is not finite at s = " + std::to_string(s));
    if (v < 0.0)
      throw InvalidDensityError("density is negative at s = " + std::to_string(s) + " (" +
                                std::to_string(v) + ")");
    return v;
  };

  constexpr std::size_t kScreen = 1024;
  for (std::size_t i = 0; i <= kScreen; ++i) checked(t_max * static_cast<double>(i) / kScreen);

  AlteringDistanceFn phi(
      [checked, quad_tol](double t) {
        if (t < 0.0 || std::isnan(t)) throw DomainError("phi is defined on [0, inf)");
        if (t == 0.0) return 0.0;
        return adaptive_simpson(checked, 0.0, t, quad_tol);
      },
      "integral(" + rho.label() + ")");

  for (std::size_t i = 1; i <= 16; ++i) {
    const double t = t_max * static_cast<double>(i) / 16.0;
    if (!(phi(t) > 0.0))
      throw InvalidDensityError("integral of the density vanishes on [0, " + std::to_string(t) +
                                "]");
  }
  return phi;
}

bool ControlReport::pass() const {
  const bool psi_ok = psi_positive.pass || (psi_degenerate && psi_mode == PsiMode::DegenerateAllowed);
  return phi_zero_at_zero.pass && phi_monotone.pass && phi_positive.pass &&
         psi_zero_at_origin.pass && psi_ok;
}

std::vector<double> uniform_grid(double t_max, std::size_t n) {
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    grid[i] = i == n ? t_max : t_max * static_cast<double>(i) / static_cast<double>(n);
  return grid;
}

namespace {

void flag(ControlReport::Check& c, double violation, std::vector<double> where) {
  if (c.pass) c.witness = std::move(where);
  c.pass = false;
  c.worst_violation = std::max(c.worst_violation, violation);
}

}  // namespace

ControlReport check_control_pair(const AlteringDistanceFn& phi, const PsiFn& psi,
                                 const std::vector<double>& grid, double tol,
                                 const ControlCheckOptions& options) {
  if (grid.empty()) throw PreconditionError("check_control_pair: grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    throw PreconditionError("check_control_pair: grid must be strictly increasing");
  if (grid.front() < 0.0) throw PreconditionError("check_control_pair: grid must lie in [0, inf)");
  if (!(tol >= 0.0)) throw PreconditionError("check_control_pair: tol must be >= 0");

  ControlReport report;
  report.psi_mode = options.psi_mode;
  report.grid_size = grid.size();
  report.grid_min = grid.front();
  report.grid_max = grid.back();
  report.tolerance = tol;

  const double phi0 = phi(0.0);
  if (std::abs(phi0) > tol) flag(report.phi_zero_at_zero, std::abs(phi0), {0.0});

  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), [&](double t) { return phi(t); });

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double drop = values[i] - values[i + 1];
    if (drop > tol) flag(report.phi_monotone, drop, {grid[i], grid[i + 1]});
    report.max_oscillation = std::max(report.max_oscillation, std::abs(values[i + 1] - values[i]));
  }
  if (options.oscillation_modulus)
    report.oscillation_within_modulus = report.max_oscillation <= *options.oscillation_modulus;

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > kStrictTolerance && !(values[i] > kStrictTolerance))
      flag(report.phi_positive, kStrictTolerance - values[i], {grid[i]});
  }

  const double psi0 = psi(0.0, 0.0, 0.0);
  if (std::abs(psi0) > tol) flag(report.psi_zero_at_origin, std::abs(psi0), {0.0, 0.0, 0.0});

  // Axes, diagonal, and a strided cartesian subgrid.
  std::vector<std::array<double, 3>> triples;
  for (double t : grid) {
    if (t <= kStrictTolerance) continue;
    triples.push_back({t, 0.0, 0.0});
    triples.push_back({0.0, t, 0.0});
    triples.push_back({0.0, 0.0, t});
    triples.push_back({t, t, t});
  }
  const std::size_t stride = std::max<std::size_t>(1, grid.size() / std::max<std::size_t>(1, options.psi_subgrid));
  std::vector<double> sub;
  for (std::size_t i = 0; i < grid.size(); i += stride) sub.push_back(grid[i]);
  for (double a : sub)
    for (double b : sub)
      for (double c : sub)
        if (std::max({a, b, c}) > kStrictTolerance) triples.push_back({a, b, c});

  bool any_positive = false;
  for (const auto& [a, b, c] : triples) {
    const double v = psi(a, b, c);
    if (v > kStrictTolerance)
      any_positive = true;
    else
      flag(report.psi_positive, kStrictTolerance - v, {a, b, c});
  }
  report.psi_degenerate = !triples.empty() && !any_positive;
  return report;
}

}  // namespace gcyc
