#pragma once

#include <json.hpp>

#include "celltopo/matching.hpp"
#include "celltopo/synthesis.hpp"

namespace celltopo {

// JSON wire formats. Diagram schema:
//   {"class_id": c, "points": [{"birth": b, "death": d, "center": [x, y],
//                               "k_vec": [...], "density_vec": [...]}]}
nlohmann::json diagram_to_json(const EnrichedPersistenceDiagram& diagram);
EnrichedPersistenceDiagram diagram_from_json(const nlohmann::json& j);

nlohmann::json kfunction_to_json(const KFunctionVector& k);
nlohmann::json report_to_json(const MetricReport& report);
nlohmann::json feature_to_json(int class_id, const DiagramFeature& feature);
nlohmann::json params_to_json(const AnalysisParams& params);

/// Trace CSV with header "step,total,l_cc,k_term,accepted".
void write_trace_csv(const SynthesisTrace& trace, const std::string& path);

}  // namespace celltopo
