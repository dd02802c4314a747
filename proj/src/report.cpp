#include "gcyc/report.hpp"

namespace gcyc::report {

Json point_json(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

Json labels_json(const std::vector<int>& labels) {
  Json a = Json::array();
  for (int l : labels) a.push_back(l);
  return a;
}

Json maybe(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

namespace {

Json points_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

Json witness(const std::string& check, Json points, double value) {
  Json w;
  w["check"] = check;
  w["points"] = std::move(points);
  w["value"] = value;
  return w;
}

Json check_json(const ControlReport::Check& c) {
  Json j;
  j["pass"] = c.pass;
  j["worst_violation"] = c.worst_violation;
  j["witness"] = c.witness;
  return j;
}

}  // namespace

Json axiom_details(const AxiomReport& r) {
  Json d;
  d["samples_used"] = r.samples_used;
  d["tolerance"] = r.tolerance;
  Json axioms = Json::object();
  for (const auto& a : r.results) {
    Json j;
    j["pass"] = a.pass;
    j["worst_violation"] = a.worst_violation;
    j["evaluated"] = a.evaluated;
    j["witness"] = points_json(a.witness);
    axioms[axiom_name(a.axiom)] = std::move(j);
  }
  d["axioms"] = std::move(axioms);
  return d;
}

void axiom_witnesses(const AxiomReport& r, Json& out) {
  for (const auto& a : r.results)
    if (!a.pass) out.push_back(witness(axiom_name(a.axiom), points_json(a.witness), a.worst_violation));
}

Json control_details(const ControlReport& r) {
  Json d;
  d["psi_mode"] = r.psi_mode == PsiMode::Strict ? "strict" : "degenerate-allowed";
  d["phi_zero_at_zero"] = check_json(r.phi_zero_at_zero);
  d["phi_monotone"] = check_json(r.phi_monotone);
  d["phi_positive"] = check_json(r.phi_positive);
  d["psi_zero_at_origin"] = check_json(r.psi_zero_at_origin);
  d["psi_positive"] = check_json(r.psi_positive);
  d["psi_degenerate"] = r.psi_degenerate;
  d["max_oscillation"] = r.max_oscillation;
  d["grid"] = {{"size", r.grid_size}, {"min", r.grid_min}, {"max", r.grid_max}};
  d["tolerance"] = r.tolerance;
  d["pass"] = r.pass();
  return d;
}

void control_witnesses(const ControlReport& r, Json& out) {
  auto add = [&](const char* name, const ControlReport::Check& c) {
    if (!c.pass) out.push_back(witness(name, Json(c.witness), c.worst_violation));
  };
  add("phi_zero_at_zero", r.phi_zero_at_zero);
  add("phi_monotone", r.phi_monotone);
  add("phi_positive", r.phi_positive);
  add("psi_zero_at_origin", r.psi_zero_at_origin);
  if (!r.pass()) add("psi_positive", r.psi_positive);
}

Json cyclic_details(const CyclicReport& r) {
  Json d;
  Json subsets = Json::array();
  for (const auto& s : r.subsets) {
    Json j;
    j["label"] = s.label;
    j["pass"] = s.pass;
    j["samples"] = s.samples;
    j["violations"] = s.violations;
    subsets.push_back(std::move(j));
  }
  d["subsets"] = std::move(subsets);
  d["note"] = CyclicReport::kClosednessNote;
  return d;
}

void cyclic_witnesses(const CyclicReport& r, Json& out) {
  for (const auto& s : r.subsets) {
    for (const auto& v : s.witnesses) {
      Json w = witness("cyclic A_" + std::to_string(v.from_label), points_json({v.x, v.image}), 0.0);
      w["image_labels"] = labels_json(v.image_labels);
      w.erase("value");
      out.push_back(std::move(w));
    }
  }
}

Json certificate_details(const Certificate& c) {
  Json d;
  d["kind"] = kind_name(c.kind);
  d["alpha"] = c.alpha;
  d["gamma"] = c.gamma;
  d["samples"] = c.samples;
  d["tolerance"] = c.tolerance;
  d["three_point"] = c.three_point;
  d["min_gap"] = c.min_gap;
  d["witness"] = {{"label", c.witness_label},
                  {"x", point_json(c.witness[0])},
                  {"y", point_json(c.witness[1])},
                  {"z", point_json(c.witness[2])}};
  d["kappa"] = maybe(c.kappa);
  return d;
}

void certificate_witnesses(const Certificate& c, Json& out) {
  if (!c.pass)
    out.push_back(witness("contraction", points_json({c.witness[0], c.witness[1], c.witness[2]}), c.min_gap));
}

Json estimate_details(const ConstantsEstimate& e, ContractionKind kind) {
  Json d;
  d["kind"] = kind_name(kind);
  d["feasible"] = e.feasible;
  d["alpha"] = e.feasible ? Json(e.alpha) : Json(nullptr);
  d["gamma"] = e.feasible ? Json(e.gamma) : Json(nullptr);
  d["kappa"] = e.feasible ? maybe(e.kappa) : Json(nullptr);
  d["candidates_tried"] = e.candidates_tried;
  d["grid_size"] = e.grid_size;
  return d;
}

Json trace_details(const IterationTrace& t) {
  Json d;
  d["outcome"] = outcome_name(t.outcome);
  d["iterations"] = t.steps();
  d["final_iterate"] = point_json(t.final_iterate);
  d["initial_residual"] = t.residuals.empty() ? Json(nullptr) : Json(t.residuals.front());
  d["final_residual"] = t.residuals.empty() ? Json(nullptr) : Json(t.residuals.back());
  d["truncated"] = t.truncated();
  return d;
}

Json trace_report_details(const TraceReport& r) {
  Json d;
  d["tolerance"] = r.tolerance;
  d["monotone"] = r.monotone;
  d["kappa"] = maybe(r.kappa);
  d["recursion"] = r.recursion;
  d["geometric"] = r.geometric;
  d["convergence_checked"] = r.convergence_checked;
  if (!r.notice.empty()) d["notice"] = r.notice;
  if (r.convergence_checked) {
    d["window"] = {{"start", r.window_start}, {"size", r.window_size}};
    d["limit_sup"] = r.limit_sup;
    d["limit_nnu"] = r.limit_nnu;
    d["limit_nuu"] = r.limit_nuu;
    d["limit_nmu"] = r.limit_nmu;
    d["cauchy"] = r.cauchy;
    d["convergence"] = r.convergence;
    d["cauchy_pass"] = r.cauchy_pass;
  }
  if (r.two_step_ratio) d["two_step_ratio"] = *r.two_step_ratio;
  d["pass"] = r.pass();
  return d;
}

void trace_report_witnesses(const TraceReport& r, const IterationTrace& t, Json& out) {
  auto at = [&](const char* name, std::size_t n) {
    Json w = witness(name, Json::array(), n < t.residuals.size() ? t.residuals[n] : 0.0);
    w["index"] = n;
    out.push_back(std::move(w));
  };
  if (r.monotone_violation) at("residual_monotone", *r.monotone_violation);
  if (r.recursion_violation) at("residual_recursion", *r.recursion_violation);
  if (r.geometric_violation) at("geometric_bound", *r.geometric_violation);
  if (r.convergence_checked && !r.convergence)
    out.push_back(witness("g_convergence", Json::array(),
                          std::max({r.limit_sup, r.limit_nnu, r.limit_nuu, r.limit_nmu})));
  if (r.convergence_checked && !r.cauchy_pass)
    out.push_back(witness("g_cauchy", Json::array(), r.cauchy));
}

Json fixed_point_details(const FixedPointReport& r) {
  Json d;
  d["candidate"] = point_json(r.candidate);
  d["image"] = point_json(r.image);
  d["defect"] = r.defect;
  d["membership"] = labels_json(r.membership);
  d["missing"] = labels_json(r.missing);
  d["pass"] = r.pass;
  return d;
}

void fixed_point_witnesses(const FixedPointReport& r, Json& out) {
  if (!r.pass) {
    Json w = witness("fixed_point", points_json({r.candidate, r.image}), r.defect);
    w["missing"] = labels_json(r.missing);
    out.push_back(std::move(w));
  }
}

}  // namespace gcyc::report
