#include "gcyc/config.hpp"

#include "gcyc/errors.hpp"
#include "gcyc/expr.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gcyc {

namespace {

using json = nlohmann::json;
using expr::Compiled;
using expr::Expr;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  require_object(j, path);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
      throw ConfigError(join(path, it.key()), "unknown key");
  }
}

const json& field(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(join(path, key), "missing required field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

Expr parse_at(const json& j, const std::string& path) {
  const std::string src = text(j, path);
  try {
    return expr::parse_expr(src);
  } catch (const expr::SyntaxError& e) {
    throw ConfigError(path, e.what(), ConfigError::Code::Parse);
  }
}

Compiled bind_at(const Expr& e, const std::vector<std::string>& slots, const std::string& path,
                 bool boolean) {
  if (e.is_boolean() != boolean)
    throw ConfigError(path, boolean ? "expected a condition" : "expected a numeric expression, found a condition");
  try {
    return Compiled(e, slots);
  } catch (const expr::UnboundVariableError& err) {
    throw ConfigError(path, err.what(), ConfigError::Code::UnboundVariable);
  }
}

/// A constant given as a number or as a variable-free expression ("1/3").
double constant(const json& j, const std::string& path) {
  if (j.is_number()) return number(j, path);
  const Expr e = parse_at(j, path);
  const Compiled c = bind_at(e, {}, path, false);
  try {
    return c({});
  } catch (const EvalError& err) {
    throw ConfigError(path, err.what());
  }
}

std::vector<std::string> coord_names(const char* prefix, int d, const char* alias) {
  std::vector<std::string> names;
  for (int i = 0; i < d; ++i) names.push_back(prefix + std::to_string(i));
  if (d == 1 && alias) names.emplace_back(alias);
  return names;
}

/// Slots for functions of a point: x0..x{d-1} (and x when d = 1).
std::vector<std::string> point_slots(int d) { return coord_names("x", d, "x"); }

void fill_point(std::vector<double>& buf, std::size_t offset, const Point& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i) buf[offset + static_cast<std::size_t>(i)] = p[i];
  if (p.size() == 1) buf[offset + 1] = p[0];
}

Eigen::VectorXd vector_at(const json& j, const std::string& path, int d) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  if (static_cast<int>(j.size()) != d)
    throw ConfigError(path, "expected " + std::to_string(d) + " entries, got " + std::to_string(j.size()));
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) {
    const json& e = j[static_cast<std::size_t>(i)];
    if (e.is_string()) {
      const std::string s = e.get<std::string>();
      if (s == "inf" || s == "+inf") v[i] = std::numeric_limits<double>::infinity();
      else if (s == "-inf") v[i] = -std::numeric_limits<double>::infinity();
      else throw ConfigError(index(path, i), "expected a number, \"inf\" or \"-inf\"");
    } else {
      v[i] = number(e, index(path, i));
    }
  }
  return v;
}

Box box_at(const json& j, const std::string& path, int d) {
  only_keys(j, path, {"lower", "upper"});
  auto lo = vector_at(field(j, path, "lower"), join(path, "lower"), d);
  auto hi = vector_at(field(j, path, "upper"), join(path, "upper"), d);
  try {
    return Box(lo, hi);
  } catch (const PreconditionError& e) {
    throw ConfigError(path, e.what());
  }
}

GMetricFn gmetric_at(const json& j, const std::string& path, const Box& domain, int d) {
  only_keys(j, path, {"construction", "metric", "expression"});
  const std::string how = text(field(j, path, "construction"), join(path, "construction"));
  if (how == "sum" || how == "max") {
    if (j.contains("expression")) throw ConfigError(join(path, "expression"), "not allowed with construction '" + how + "'");
    const std::string mp = join(path, "metric");
    auto slots = coord_names("x", d, "x");
    auto ys = coord_names("y", d, "y");
    slots.insert(slots.end(), ys.begin(), ys.end());
    const Compiled metric = bind_at(parse_at(field(j, path, "metric"), mp), slots, mp, false);
    const std::size_t stride = static_cast<std::size_t>(d) + (d == 1 ? 1 : 0);
    MetricFn dfn(
        [metric, stride](const Point& x, const Point& y) {
          std::vector<double> buf(2 * stride);
          fill_point(buf, 0, x);
          fill_point(buf, stride, y);
          return metric(buf);
        },
        domain);
    return how == "sum" ? g_sum_from_metric(dfn) : g_max_from_metric(dfn);
  }
  if (how == "raw") {
    if (j.contains("metric")) throw ConfigError(join(path, "metric"), "not allowed with construction 'raw'");
    const std::string ep = join(path, "expression");
    auto slots = coord_names("x", d, "x");
    for (const char* p : {"y", "z"}) {
      auto more = coord_names(p, d, p);
      slots.insert(slots.end(), more.begin(), more.end());
    }
    const Compiled g = bind_at(parse_at(field(j, path, "expression"), ep), slots, ep, false);
    const std::size_t stride = static_cast<std::size_t>(d) + (d == 1 ? 1 : 0);
    return GMetricFn(
        [g, stride](const Point& x, const Point& y, const Point& z) {
          std::vector<double> buf(3 * stride);
          fill_point(buf, 0, x);
          fill_point(buf, stride, y);
          fill_point(buf, 2 * stride, z);
          return g(buf);
        },
        domain);
  }
  throw ConfigError(join(path, "construction"), "expected 'sum', 'max' or 'raw'");
}

CyclicCover cover_at(const json& j, const std::string& path, const Box& domain, int d, double band) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty array of subsets");
  std::vector<SubsetSpec> subsets;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string sp = index(path, i);
    const json& s = j[i];
    only_keys(s, sp, {"boxes", "predicate"});
    if (s.contains("boxes") == s.contains("predicate"))
      throw ConfigError(sp, "give exactly one of 'boxes' or 'predicate'");
    if (s.contains("boxes")) {
      const json& boxes = s["boxes"];
      const std::string bp = join(sp, "boxes");
      if (!boxes.is_array() || boxes.empty()) throw ConfigError(bp, "expected a nonempty array of boxes");
      std::vector<Box> list;
      for (std::size_t k = 0; k < boxes.size(); ++k) list.push_back(box_at(boxes[k], index(bp, k), d));
      subsets.push_back(SubsetSpec::from_boxes(std::move(list), band));
    } else {
      const std::string pp = join(sp, "predicate");
      const Expr e = parse_at(s["predicate"], pp);
      const Compiled pred = bind_at(e, point_slots(d), pp, true);
      const std::size_t width = static_cast<std::size_t>(d) + (d == 1 ? 1 : 0);
      auto membership = [pred, width, domain](const Point& x) {
        if (!domain.contains(x)) return false;
        std::vector<double> buf(width);
        fill_point(buf, 0, x);
        return pred.test(buf);
      };
      if (!domain.bounded()) throw ConfigError(pp, "predicate subsets need a bounded domain for sampling");
      subsets.push_back(SubsetSpec::from_predicate(membership, domain, expr::to_string(e)));
    }
  }
  return CyclicCover(std::move(subsets));
}

Operator map_at(const json& j, const std::string& path, const Box& domain, int d) {
  std::vector<Compiled> coords;
  if (j.is_string()) {
    if (d != 1) throw ConfigError(path, "a single map expression needs dimension 1; give an array");
    coords.push_back(bind_at(parse_at(j, path), point_slots(d), path, false));
  } else if (j.is_array()) {
    if (static_cast<int>(j.size()) != d)
      throw ConfigError(path, "expected " + std::to_string(d) + " coordinate expressions");
    for (std::size_t i = 0; i < j.size(); ++i)
      coords.push_back(bind_at(parse_at(j[i], index(path, i)), point_slots(d), index(path, i), false));
  } else {
    throw ConfigError(path, "expected an expression string or an array of them");
  }
  const std::size_t width = static_cast<std::size_t>(d) + (d == 1 ? 1 : 0);
  return [coords, width, domain](const Point& x) {
    require_in_domain(domain, x, "map argument");
    std::vector<double> buf(width);
    fill_point(buf, 0, x);
    Point out(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) out[static_cast<Eigen::Index>(i)] = coords[i](buf);
    return out;
  };
}

double g_diameter(const GMetricFn& g, const Box& domain, std::uint64_t seed) {
  if (!domain.bounded()) return 8.0;
  double best = 0.0;
  const Point lo = domain.lower;
  const Point hi = domain.upper;
  best = std::max({g(lo, hi, hi), g(lo, lo, hi), g(lo, hi, lo)});
  auto src = PointSource::uniform(domain, seed);
  best = std::max(best, estimate_g_diameter(g, src, 2048));
  return best > 0.0 ? best : 1.0;
}

AlteringDistanceFn phi_at(const json& j, const std::string& path, const GMetricFn& g,
                          const Box& domain, std::uint64_t seed) {
  only_keys(j, path, {"type", "expression", "density", "quad_tol", "t_max"});
  const std::string type = text(field(j, path, "type"), join(path, "type"));
  if (type == "identity") return AlteringDistanceFn::identity();
  if (type == "expression") {
    const std::string ep = join(path, "expression");
    const Expr e = parse_at(field(j, path, "expression"), ep);
    const Compiled c = bind_at(e, {"t"}, ep, false);
    return AlteringDistanceFn([c](double t) { return c(std::span<const double>(&t, 1)); },
                              expr::to_string(e));
  }
  if (type == "integral") {
    const std::string dp = join(path, "density");
    const Expr e = parse_at(field(j, path, "density"), dp);
    const Compiled c = bind_at(e, {"s", "t"}, dp, false);
    const double quad_tol = j.contains("quad_tol") ? number(j["quad_tol"], join(path, "quad_tol")) : 1e-12;
    if (!(quad_tol > 0.0)) throw ConfigError(join(path, "quad_tol"), "must be > 0");
    const double t_max = j.contains("t_max") ? number(j["t_max"], join(path, "t_max"))
                                             : g_diameter(g, domain, seed);
    DensityFn rho(
        [c](double s) {
          const double v[2] = {s, s};
          return c(v);
        },
        expr::to_string(e));
    try {
      return make_integral_phi(rho, quad_tol, t_max);
    } catch (const Error& err) {
      throw ConfigError(dp, err.what());
    }
  }
  throw ConfigError(join(path, "type"), "expected 'identity', 'expression' or 'integral'");
}

PsiFn psi_at(const json& j, const std::string& path) {
  only_keys(j, path, {"type", "expression"});
  const std::string type = text(field(j, path, "type"), join(path, "type"));
  if (type == "zero") return PsiFn::zero();
  if (type == "expression") {
    const std::string ep = join(path, "expression");
    const Expr e = parse_at(field(j, path, "expression"), ep);
    const Compiled c = bind_at(e, {"x", "y", "z"}, ep, false);
    return PsiFn(
        [c](double a, double b, double d) {
          const double v[3] = {a, b, d};
          return c(v);
        },
        expr::to_string(e));
  }
  throw ConfigError(join(path, "type"), "expected 'zero' or 'expression'");
}

}  // namespace

Scenario load_scenario(const std::string& document, const std::string& fallback_id) {
  json root;
  try {
    root = json::parse(document, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what(), ConfigError::Code::Parse);
  }
  only_keys(root, "", {"id", "dimension", "domain", "gmetric", "subsets", "boundary_tol", "map",
                       "phi", "psi", "psi_mode", "kind", "alpha", "gamma", "solver"});

  const json& dim = field(root, "", "dimension");
  if (!dim.is_number_integer() || dim.get<int>() < 1) throw ConfigError("dimension", "expected an integer >= 1");
  const int d = dim.get<int>();

  SolverDefaults defaults;
  if (root.contains("solver")) {
    const json& s = root["solver"];
    only_keys(s, "solver", {"tol", "max_iter", "seed"});
    if (s.contains("tol")) {
      defaults.tol = number(s["tol"], "solver.tol");
      if (!(defaults.tol > 0.0)) throw ConfigError("solver.tol", "must be > 0");
    }
    if (s.contains("max_iter")) {
      if (!s["max_iter"].is_number_integer() || s["max_iter"].get<long long>() < 1)
        throw ConfigError("solver.max_iter", "expected an integer >= 1");
      defaults.max_iter = s["max_iter"].get<std::size_t>();
    }
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned()) throw ConfigError("solver.seed", "expected a nonnegative integer");
      defaults.seed = s["seed"].get<std::uint64_t>();
    }
  }

  const Box domain = box_at(field(root, "", "domain"), "domain", d);
  const double band = root.contains("boundary_tol") ? number(root["boundary_tol"], "boundary_tol") : 0.0;
  if (band < 0.0) throw ConfigError("boundary_tol", "must be >= 0");

  GMetricFn g = gmetric_at(field(root, "", "gmetric"), "gmetric", domain, d);
  CyclicCover cover = cover_at(field(root, "", "subsets"), "subsets", domain, d, band);
  Operator map = map_at(field(root, "", "map"), "map", domain, d);
  AlteringDistanceFn phi = phi_at(field(root, "", "phi"), "phi", g, domain, defaults.seed);
  PsiFn psi = psi_at(field(root, "", "psi"), "psi");

  PsiMode mode = PsiMode::DegenerateAllowed;
  if (root.contains("psi_mode")) {
    const std::string m = text(root["psi_mode"], "psi_mode");
    if (m == "strict") mode = PsiMode::Strict;
    else if (m != "degenerate-allowed") throw ConfigError("psi_mode", "expected 'degenerate-allowed' or 'strict'");
  }

  const std::string kind_text = text(field(root, "", "kind"), "kind");
  ContractionKind kind;
  if (kind_text == "kannan") kind = ContractionKind::KannanG;
  else if (kind_text == "chatterjea") kind = ContractionKind::ChatterjeaG;
  else throw ConfigError("kind", "expected 'kannan' or 'chatterjea'");

  const double alpha = constant(field(root, "", "alpha"), "alpha");
  const double gamma = constant(field(root, "", "gamma"), "gamma");
  if (auto why = constants_violation(kind, alpha, gamma))
    throw ConfigError(kind == ContractionKind::KannanG && (gamma < 0.0 || gamma >= 1.0) ? "gamma" : "alpha",
                      "invalid constants: " + *why, ConfigError::Code::InvalidConstants);

  Scenario s{
      .id = root.contains("id") ? text(root["id"], "id") : fallback_id,
      .domain = domain,
      .g = std::move(g),
      .cover = std::move(cover),
      .map = std::move(map),
      .phi = std::move(phi),
      .psi = std::move(psi),
      .psi_mode = mode,
      .kind = kind,
      .alpha = alpha,
      .gamma = gamma,
      .defaults = defaults,
  };
  validate_scenario(s);
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open scenario file", ConfigError::Code::Io);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str(), path.stem().string());
}

}  // namespace gcyc
