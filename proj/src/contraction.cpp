#include "gcyc/contraction.hpp"

#include "gcyc/errors.hpp"
#include "gcyc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <tuple>

namespace gcyc {

namespace {

bool has_label(const std::vector<int>& labels, int label) {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

void require_adjacent(const Scenario& s, const Point& x, const Point& y, const Point& z) {
  const auto lx = locate(s.cover, x);
  if (lx.empty()) throw AdjacencyError("x = " + format_point(x) + " lies in no subset of the cover");
  const auto ly = locate(s.cover, y);
  const auto lz = locate(s.cover, z);
  bool y_ok = false;
  for (int i : lx) {
    const int next = s.cover.next_label(i);
    if (has_label(ly, next)) {
      y_ok = true;
      if (has_label(lz, next)) return;
    }
  }
  if (!y_ok)
    throw AdjacencyError("y = " + format_point(y) + " is not in the successor of any set holding x");
  throw AdjacencyError("z = " + format_point(z) + " is not in the successor set holding y");
}

double kannan3(const Scenario& s, const Point& x, const Point& y, const Point& z) {
  const Point tx = s.map(x);
  const Point ty = s.map(y);
  const Point tz = s.map(z);
  const double gx = s.g(x, tx, tx);
  const double gy = s.g(y, ty, ty);
  const double gz = s.g(z, tz, tz);
  const double beta = s.gamma / 2.0;
  const double rhs = s.phi(s.alpha * gx + beta * (gy + gz)) - s.psi(gx, gy, gz);
  return rhs - s.phi(s.g(tx, ty, tz));
}

double kannan2(const Scenario& s, const Point& x, const Point& y) {
  const Point tx = s.map(x);
  const Point ty = s.map(y);
  const double gx = s.g(x, tx, tx);
  const double gy = s.g(y, ty, ty);
  const double rhs = s.phi(s.alpha * gx + s.gamma * gy) - s.psi(gx, gy, gy);
  return rhs - s.phi(s.g(tx, ty, ty));
}

double chatterjea3(const Scenario& s, const Point& x, const Point& y, const Point& z) {
  const Point tx = s.map(x);
  const Point ty = s.map(y);
  const Point tz = s.map(z);
  const double a = s.g(x, ty, tz);
  const double b = s.g(y, z, tx);
  const double c = s.g(z, y, tx);
  const double rhs = s.phi(s.alpha * a + s.gamma * b) - s.psi(a, b, c);
  return rhs - s.phi(s.g(tx, ty, tz));
}

double chatterjea2(const Scenario& s, const Point& x, const Point& y) {
  const Point tx = s.map(x);
  const Point ty = s.map(y);
  const double a = s.g(x, ty, ty);
  const double b = s.g(y, y, tx);
  const double rhs = s.phi(s.alpha * a + s.gamma * b) - s.psi(a, b, b);
  return rhs - s.phi(s.g(tx, ty, ty));
}

void require_kind(const Scenario& s, ContractionKind kind, const char* op) {
  if (s.kind != kind)
    throw PreconditionError(std::string(op) + " called on a " + kind_name(s.kind) + " scenario");
}

double gap3_unchecked(const Scenario& s, const Point& x, const Point& y, const Point& z) {
  switch (s.kind) {
    case ContractionKind::KannanG: return kannan3(s, x, y, z);
    case ContractionKind::ChatterjeaG: return chatterjea3(s, x, y, z);
    default: throw PreconditionError("no G-metric gap for the zamfirescu kind");
  }
}

double gap2_unchecked(const Scenario& s, const Point& x, const Point& y) {
  switch (s.kind) {
    case ContractionKind::KannanG: return kannan2(s, x, y);
    case ContractionKind::ChatterjeaG: return chatterjea2(s, x, y);
    default: throw PreconditionError("no G-metric gap for the zamfirescu kind");
  }
}

}  // namespace

double kannan_gap(const Scenario& s, const Point& x, const Point& y, const Point& z) {
  require_kind(s, ContractionKind::KannanG, "kannan_gap");
  require_adjacent(s, x, y, z);
  return kannan3(s, x, y, z);
}

double kannan_gap(const Scenario& s, const Point& x, const Point& y) {
  require_kind(s, ContractionKind::KannanG, "kannan_gap");
  require_adjacent(s, x, y, y);
  return kannan2(s, x, y);
}

double chatterjea_gap(const Scenario& s, const Point& x, const Point& y, const Point& z) {
  require_kind(s, ContractionKind::ChatterjeaG, "chatterjea_gap");
  require_adjacent(s, x, y, z);
  return chatterjea3(s, x, y, z);
}

double chatterjea_gap(const Scenario& s, const Point& x, const Point& y) {
  require_kind(s, ContractionKind::ChatterjeaG, "chatterjea_gap");
  require_adjacent(s, x, y, y);
  return chatterjea2(s, x, y);
}

double contraction_gap(const Scenario& s, const Point& x, const Point& y, const Point& z) {
  require_adjacent(s, x, y, z);
  return gap3_unchecked(s, x, y, z);
}

double contraction_gap(const Scenario& s, const Point& x, const Point& y) {
  require_adjacent(s, x, y, y);
  return gap2_unchecked(s, x, y);
}

double classic_kannan_gap(const MetricFn& d, const Operator& map, double alpha, const Point& x,
                          const Point& y) {
  const Point tx = map(x);
  const Point ty = map(y);
  return alpha * (d(x, tx) + d(y, ty)) - d(tx, ty);
}

double classic_chatterjea_gap(const MetricFn& d, const Operator& map, double alpha,
                              const Point& x, const Point& y) {
  const Point tx = map(x);
  const Point ty = map(y);
  return alpha * (d(x, ty) + d(y, tx)) - d(tx, ty);
}

ZamfirescuResult zamfirescu_check(const MetricFn& d, const Operator& map, double alpha,
                                  double beta, double gamma, const Point& x, const Point& y,
                                  double tol) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw PreconditionError("zamfirescu: 0<=alpha<1 violated");
  if (!(beta >= 0.0 && beta < 0.5)) throw PreconditionError("zamfirescu: 0<=beta<1/2 violated");
  if (!(gamma >= 0.0 && gamma < 0.5)) throw PreconditionError("zamfirescu: 0<=gamma<1/2 violated");
  const Point tx = map(x);
  const Point ty = map(y);
  const double lhs = d(tx, ty);
  ZamfirescuResult r;
  r.gaps[0] = alpha * d(x, y) - lhs;
  r.gaps[1] = beta * (d(x, tx) + d(y, ty)) - lhs;
  r.gaps[2] = gamma * (d(x, ty) + d(y, tx)) - lhs;
  r.any_pass = std::any_of(r.gaps.begin(), r.gaps.end(), [tol](double g) { return g >= -tol; });
  return r;
}

namespace {

constexpr std::size_t kBlockSize = 1024;

struct BlockResult {
  double min_gap = std::numeric_limits<double>::infinity();
  // (label, sample index, three-point flag) of the minimizer; lexicographic
  // order breaks ties so the reduction is partition-independent.
  std::tuple<int, std::size_t, int> ordinal{0, 0, 0};
  std::array<Point, 3> witness;
  std::size_t evaluated = 0;
  bool empty_subset = false;
  int empty_label = 0;

  void offer(double gap, std::tuple<int, std::size_t, int> ord, const Point& x, const Point& y,
             const Point& z) {
    if (std::isnan(gap)) gap = -std::numeric_limits<double>::infinity();
    if (gap < min_gap || (gap == min_gap && ord < ordinal)) {
      min_gap = gap;
      ordinal = ord;
      witness = {x, y, z};
    }
  }

  void merge(const BlockResult& other) {
    evaluated += other.evaluated;
    if (other.empty_subset && !empty_subset) {
      empty_subset = true;
      empty_label = other.empty_label;
    }
    if (other.evaluated == 0) return;
    if (other.min_gap < min_gap || (other.min_gap == min_gap && other.ordinal < ordinal)) {
      min_gap = other.min_gap;
      ordinal = other.ordinal;
      witness = other.witness;
    }
  }
};

struct Task {
  int label;
  std::size_t block;
};

BlockResult run_block(const Scenario& s, const Task& task, std::size_t samples, std::uint64_t seed,
                      bool three_point) {
  BlockResult out;
  const SubsetSpec& from = s.cover.subset(task.label);
  const SubsetSpec& to = s.cover.subset(s.cover.next_label(task.label));
  auto rng = make_rng(seed, static_cast<std::uint64_t>(task.label), task.block);
  const std::size_t begin = task.block * kBlockSize;
  const std::size_t end = std::min(samples, begin + kBlockSize);
  for (std::size_t n = begin; n < end; ++n) {
    auto x = from.sample(rng);
    auto y = to.sample(rng);
    if (!x || !y) {
      out.empty_subset = true;
      out.empty_label = !x ? task.label : s.cover.next_label(task.label);
      return out;
    }
    out.offer(gap2_unchecked(s, *x, *y), {task.label, n, 0}, *x, *y, *y);
    ++out.evaluated;
    if (three_point) {
      auto z = to.sample(rng);
      if (!z) {
        out.empty_subset = true;
        out.empty_label = s.cover.next_label(task.label);
        return out;
      }
      out.offer(gap3_unchecked(s, *x, *y, *z), {task.label, n, 1}, *x, *y, *z);
      ++out.evaluated;
    }
  }
  return out;
}

}  // namespace

Certificate certify(const Scenario& s, std::size_t samples, double tol, std::uint64_t seed,
                    const CertifyOptions& options) {
  validate_scenario(s);
  if (samples < 1) throw PreconditionError("certify: samples must be >= 1");
  if (!(tol >= 0.0)) throw PreconditionError("certify: tol must be >= 0");

  std::vector<Task> tasks;
  const std::size_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  for (int i = 1; i <= s.cover.size(); ++i)
    for (std::size_t b = 0; b < blocks; ++b) tasks.push_back({i, b});

  std::vector<BlockResult> results(tasks.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, tasks.size()));
  if (workers == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t)
      results[t] = run_block(s, tasks[t], samples, seed, options.three_point);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < tasks.size(); t += workers)
            results[t] = run_block(s, tasks[t], samples, seed, options.three_point);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  BlockResult total;
  for (const auto& r : results) total.merge(r);
  if (total.empty_subset)
    throw PreconditionError("certify: subset A_" + std::to_string(total.empty_label) +
                            " produced no sample; it may be empty");

  Certificate cert;
  cert.kind = s.kind;
  cert.alpha = s.alpha;
  cert.gamma = s.gamma;
  cert.samples = total.evaluated;
  cert.min_gap = total.min_gap;
  cert.witness = total.witness;
  cert.witness_label = std::get<0>(total.ordinal);
  cert.kappa = contraction_factor(s.kind, s.alpha, s.gamma);
  cert.seed = seed;
  cert.tolerance = tol;
  cert.three_point = options.three_point;
  cert.pass = cert.min_gap >= -tol;
  return cert;
}

ConstantsEstimate estimate_constants(const Scenario& s, std::size_t samples, int resolution,
                                     std::uint64_t seed, double tol,
                                     const CertifyOptions& options) {
  if (resolution < 2) throw PreconditionError("estimate_constants: resolution must be >= 2");
  if (s.kind != ContractionKind::KannanG && s.kind != ContractionKind::ChatterjeaG)
    throw PreconditionError("estimate_constants needs a kannan or chatterjea scenario");

  struct Candidate {
    double alpha;
    double gamma;
    std::optional<double> kappa;
  };
  std::vector<Candidate> grid;
  const int r = resolution;
  auto push = [&](double a, double c) {
    if (a + c > 1.0) c = 1.0 - a;
    if (constants_violation(s.kind, a, c)) return;
    grid.push_back({a, c, contraction_factor(s.kind, a, c)});
  };
  if (s.kind == ContractionKind::KannanG) {
    // alpha = k/r, gamma = j/r with j < r and 0 < k + j <= r.
    for (int k = 0; k <= r; ++k)
      for (int j = 0; j < r && k + j <= r; ++j)
        if (k + j > 0) push(static_cast<double>(k) / r, static_cast<double>(j) / r);
  } else {
    // alpha = k/(2r) up to 1/2, gamma = j/r with 0 < k + 2j <= 2r.
    for (int k = 0; k <= r; ++k)
      for (int j = 0; j <= r && k + 2 * j <= 2 * r; ++j)
        if (k + j > 0) push(static_cast<double>(k) / (2.0 * r), static_cast<double>(j) / r);
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::stable_sort(grid.begin(), grid.end(), [inf](const Candidate& a, const Candidate& b) {
    return std::make_tuple(a.kappa.value_or(inf), a.alpha, a.gamma) <
           std::make_tuple(b.kappa.value_or(inf), b.alpha, b.gamma);
  });

  ConstantsEstimate est;
  est.grid_size = grid.size();
  for (const auto& c : grid) {
    ++est.candidates_tried;
    const Certificate cert = certify(s.with_constants(c.alpha, c.gamma), samples, tol, seed, options);
    if (cert.pass) {
      est.alpha = c.alpha;
      est.gamma = c.gamma;
      est.kappa = c.kappa;
      est.feasible = true;
      return est;
    }
  }
  return est;
}

}  // namespace gcyc
