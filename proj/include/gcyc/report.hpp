#pragma once

#include "gcyc/contraction.hpp"
#include "gcyc/control.hpp"
#include "gcyc/cyclic.hpp"
#include "gcyc/gmetric.hpp"
#include "gcyc/solver.hpp"

#include <json.hpp>

namespace gcyc::report {

using Json = nlohmann::ordered_json;

Json point_json(const Point& p);
Json labels_json(const std::vector<int>& labels);

// Each *_details returns the `details` object of a command report; the
// matching *_witnesses appends one entry per failing check.

Json axiom_details(const AxiomReport& r);
void axiom_witnesses(const AxiomReport& r, Json& out);

Json control_details(const ControlReport& r);
void control_witnesses(const ControlReport& r, Json& out);

Json cyclic_details(const CyclicReport& r);
void cyclic_witnesses(const CyclicReport& r, Json& out);

Json certificate_details(const Certificate& c);
void certificate_witnesses(const Certificate& c, Json& out);

Json estimate_details(const ConstantsEstimate& e, ContractionKind kind);

Json trace_details(const IterationTrace& t);
Json trace_report_details(const TraceReport& r);
void trace_report_witnesses(const TraceReport& r, const IterationTrace& t, Json& out);

Json fixed_point_details(const FixedPointReport& r);
void fixed_point_witnesses(const FixedPointReport& r, Json& out);

/// Optional number: null when absent.
Json maybe(const std::optional<double>& v);

}  // namespace gcyc::report
