#include "gcyc/point.hpp"

#include "gcyc/errors.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

namespace gcyc {

bool all_finite(const Point& p) { return p.allFinite(); }

double separation(const Point& a, const Point& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).lpNorm<Eigen::Infinity>();
}

std::string format_point(const Point& p) {
  std::string out = "(";
  char buf[32];
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p[i++] = c;
  return p;
}

Box::Box(Eigen::VectorXd lo, Eigen::VectorXd hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size())
    throw PreconditionError("box bounds have different dimensions");
  if (lower.size() == 0) throw PreconditionError("box must have dimension >= 1");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i])
      throw PreconditionError("box bounds must satisfy lower <= upper");
  }
}

Box Box::interval(double lo, double hi) { return Box(make_point({lo}), make_point({hi})); }

bool Box::bounded() const { return lower.allFinite() && upper.allFinite(); }

bool Box::contains(const Point& p, double band) const {
  if (p.size() != lower.size()) return false;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p[i] >= lower[i] - band && p[i] <= upper[i] + band)) return false;
  }
  return true;
}

Point Box::sample(std::mt19937_64& rng) const {
  if (!bounded()) throw PreconditionError("cannot sample an unbounded box");
  Point p(lower.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (lower[i] == upper[i]) {
      p[i] = lower[i];
      continue;
    }
    std::uniform_real_distribution<double> dist(lower[i], upper[i]);
    p[i] = dist(rng);
  }
  return p;
}

void require_in_domain(const Box& domain, const Point& p, const char* what) {
  if (p.size() != domain.dimension())
    throw DomainError(std::string(what) + " has dimension " + std::to_string(p.size()) +
                      ", expected " + std::to_string(domain.dimension()));
  if (!all_finite(p)) throw DomainError(std::string(what) + " has a non-finite coordinate");
  if (!domain.contains(p))
    throw DomainError(std::string(what) + " " + format_point(p) + " lies outside the domain");
}

PointSource PointSource::uniform(const Box& box, std::uint64_t seed) {
  if (!box.bounded()) throw PreconditionError("uniform sampler needs a bounded box");
  auto rng = std::make_shared<std::mt19937_64>(make_rng(seed));
  return PointSource([box, rng]() -> std::optional<Point> { return box.sample(*rng); }, seed);
}

PointSource PointSource::from_list(std::vector<Point> points) {
  auto data = std::make_shared<std::vector<Point>>(std::move(points));
  auto pos = std::make_shared<std::size_t>(0);
  return PointSource(
      [data, pos]() -> std::optional<Point> {
        if (*pos >= data->size()) return std::nullopt;
        return (*data)[(*pos)++];
      },
      0);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(block)};
  return std::mt19937_64(seq);
}

}  // namespace gcyc
