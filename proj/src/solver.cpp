#include "gcyc/solver.hpp"

#include "gcyc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gcyc {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Converged: return "converged";
    case Outcome::MaxIterExhausted: return "max_iter_exhausted";
    case Outcome::EscapedCover: return "escaped_cover";
    case Outcome::NonFinite: return "non_finite";
  }
  return "?";
}

IterationTrace picard(const Scenario& s, const Point& x0, double tol, std::size_t max_iter,
                      std::size_t iterate_cap) {
  if (!(tol > 0.0)) throw PreconditionError("picard: tol must be > 0");
  if (max_iter < 1) throw PreconditionError("picard: max_iter must be >= 1");
  if (x0.size() != s.dimension())
    throw PreconditionError("picard: x0 has dimension " + std::to_string(x0.size()));
  auto start_labels = locate(s.cover, x0);
  if (start_labels.empty())
    throw PreconditionError("picard: x0 = " + format_point(x0) + " lies in no subset of the cover");

  IterationTrace trace;
  trace.iterate_cap = std::max<std::size_t>(1, iterate_cap);
  trace.iterates.push_back(x0);
  trace.labels.push_back(std::move(start_labels));
  trace.tail.push_back(x0);

  auto remember = [&](const Point& x, std::vector<int> labels) {
    if (trace.iterates.size() < trace.iterate_cap) {
      trace.iterates.push_back(x);
      trace.labels.push_back(std::move(labels));
    }
    trace.tail.push_back(x);
    if (trace.tail.size() > kTailWindow) {
      trace.tail.erase(trace.tail.begin());
      ++trace.tail_start;
    }
  };

  Point x = x0;
  for (std::size_t n = 0; n < max_iter; ++n) {
    Point next;
    try {
      next = s.map(x);
    } catch (const EvalError&) {
      trace.outcome = Outcome::NonFinite;
      break;
    }
    if (!all_finite(next)) {
      trace.outcome = Outcome::NonFinite;
      break;
    }
    const double r = s.g(x, next, next);
    if (!std::isfinite(r)) {
      trace.outcome = Outcome::NonFinite;
      break;
    }
    auto labels = locate(s.cover, next);
    const bool escaped = labels.empty();
    trace.residuals.push_back(r);
    remember(next, std::move(labels));
    x = std::move(next);
    if (escaped) {
      trace.outcome = Outcome::EscapedCover;
      break;
    }
    if (r <= tol) {
      trace.outcome = Outcome::Converged;
      break;
    }
    trace.outcome = Outcome::MaxIterExhausted;
  }
  trace.final_iterate = x;
  return trace;
}

std::optional<double> contraction_factor(ContractionKind kind, double alpha, double gamma) {
  switch (kind) {
    case ContractionKind::KannanG:
      if (gamma == 1.0) throw DomainError("contraction_factor: gamma = 1 divides by zero");
      return alpha / (1.0 - gamma);
    case ContractionKind::ChatterjeaG:
      if (alpha == 0.5) return std::nullopt;
      return alpha / (1.0 - alpha);
    case ContractionKind::ZamfirescuMetric:
      return std::nullopt;
  }
  return std::nullopt;
}

std::size_t a_priori_iterations(double kappa, double r0, double tol) {
  if (!(kappa >= 0.0 && kappa < 1.0))
    throw PreconditionError("a_priori_iterations: kappa must lie in [0, 1)");
  if (!(tol > 0.0)) throw PreconditionError("a_priori_iterations: tol must be > 0");
  if (!(r0 >= 0.0)) throw PreconditionError("a_priori_iterations: r0 must be >= 0");
  if (r0 <= tol) return 0;
  if (kappa == 0.0) return 1;
  const double estimate = std::ceil(std::log(tol / r0) / std::log(kappa));
  auto n = static_cast<std::size_t>(std::max(1.0, estimate));
  // The log ratio can be off by one ulp; settle on the exact smallest n.
  auto within = [&](std::size_t k) { return std::pow(kappa, static_cast<double>(k)) * r0 <= tol; };
  while (n > 1 && within(n - 1)) --n;
  while (!within(n)) ++n;
  return n;
}

FixedPointReport verify_fixed_point(const Scenario& s, const Point& u, double tol) {
  require_in_domain(s.domain, u, "candidate");
  FixedPointReport report;
  report.candidate = u;
  report.image = s.map(u);
  report.defect = s.g(u, report.image, report.image);
  report.membership = locate(s.cover, u);
  for (int i = 1; i <= s.cover.size(); ++i) {
    if (std::find(report.membership.begin(), report.membership.end(), i) == report.membership.end())
      report.missing.push_back(i);
  }
  report.pass = report.defect <= tol && report.missing.empty();
  return report;
}

bool TraceReport::pass() const {
  return monotone && recursion && geometric && convergence && cauchy_pass;
}

TraceReport check_trace_properties(const IterationTrace& trace, const Scenario& s, double tol,
                                   std::size_t window) {
  if (trace.steps() < 1) throw PreconditionError("check_trace_properties: trace needs >= 2 iterates");
  if (window < 2) throw PreconditionError("check_trace_properties: window must be >= 2");

  TraceReport rep;
  rep.tolerance = tol;
  const auto& r = trace.residuals;

  for (std::size_t n = 0; n + 1 < r.size(); ++n) {
    if (r[n + 1] > r[n] + tol) {
      rep.monotone = false;
      rep.monotone_violation = n + 1;
      break;
    }
  }

  if (s.kind == ContractionKind::KannanG || s.kind == ContractionKind::ChatterjeaG)
    rep.kappa = contraction_factor(s.kind, s.alpha, s.gamma);
  if (rep.kappa) {
    const double kappa = *rep.kappa;
    for (std::size_t n = 1; n < r.size(); ++n) {
      if (r[n] > kappa * r[n - 1] + tol) {
        rep.recursion = false;
        rep.recursion_violation = n;
        break;
      }
    }
    double bound = r[0];
    for (std::size_t n = 1; n < r.size(); ++n) {
      bound *= kappa + tol;
      if (r[n] > bound) {
        rep.geometric = false;
        rep.geometric_violation = n;
        break;
      }
    }
  }

  if (s.kind == ContractionKind::ChatterjeaG && s.alpha == 0.5 && !trace.truncated()) {
    const auto& xs = trace.iterates;
    for (std::size_t n = r.size(); n-- > 1;) {
      if (r[n] > 0.0 && n + 1 < xs.size()) {
        rep.two_step_ratio = s.g(xs[n - 1], xs[n + 1], xs[n + 1]) / (2.0 * r[n]);
        break;
      }
    }
  }

  if (trace.outcome != Outcome::Converged) {
    rep.notice = std::string("trace outcome is ") + outcome_name(trace.outcome) +
                 "; convergence and Cauchy checks skipped";
    return rep;
  }

  // Tail: iterates after which every residual stays <= tol, at most `window`
  // of them and always at least the last two.
  const std::size_t total = r.size() + 1;
  std::size_t settled = r.size();
  while (settled > 0 && r[settled - 1] <= tol) --settled;
  std::size_t start = std::min(settled, total - 2);
  start = std::max(start, total > window ? total - window : 0);
  start = std::max(start, trace.tail_start);

  const Point& u = trace.final_iterate;
  std::vector<const Point*> tail;
  for (std::size_t i = start; i < total; ++i) tail.push_back(&trace.tail[i - trace.tail_start]);

  rep.convergence_checked = true;
  rep.window_start = start;
  rep.window_size = tail.size();
  for (const Point* xn : tail) {
    rep.limit_nnu = std::max(rep.limit_nnu, s.g(*xn, *xn, u));
    rep.limit_nuu = std::max(rep.limit_nuu, s.g(*xn, u, u));
    for (const Point* xm : tail) {
      rep.limit_sup = std::max(rep.limit_sup, s.g(u, *xn, *xm));
      rep.limit_nmu = std::max(rep.limit_nmu, s.g(*xn, *xm, u));
      rep.cauchy = std::max(rep.cauchy, s.g(*xn, *xm, *xm));
    }
  }
  rep.convergence = std::max({rep.limit_sup, rep.limit_nnu, rep.limit_nuu, rep.limit_nmu}) <= tol;
  rep.cauchy_pass = rep.cauchy <= tol;
  return rep;
}

MultiStartReport multi_start(const Scenario& s, const std::vector<Point>& starts, double tol,
                             std::size_t max_iter) {
  MultiStartReport rep;
  rep.starts = starts;
  rep.all_converged = true;
  for (const auto& x0 : starts) {
    rep.traces.push_back(picard(s, x0, tol, max_iter));
    rep.all_converged = rep.all_converged && rep.traces.back().outcome == Outcome::Converged;
  }
  for (const auto& a : rep.traces)
    for (const auto& b : rep.traces)
      rep.max_disagreement =
          std::max(rep.max_disagreement, s.g(a.final_iterate, b.final_iterate, b.final_iterate));
  return rep;
}

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
  const Eigen::Index d = trace.final_iterate.size();
  out << "n";
  for (Eigen::Index i = 0; i < d; ++i) out << ",x_" << i;
  out << ",residual,subset_indices\n";
  for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
    out << n;
    for (Eigen::Index i = 0; i < d; ++i) out << ',' << num17(trace.iterates[n][i]);
    out << ',';
    if (n < trace.residuals.size()) out << num17(trace.residuals[n]);
    out << ',';
    const auto& labels = trace.labels[n];
    for (std::size_t k = 0; k < labels.size(); ++k) out << (k ? "|" : "") << labels[k];
    out << '\n';
  }
}

}  // namespace gcyc
