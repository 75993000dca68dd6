#include "celltopo/serialize.hpp"

#include <fstream>

#include "celltopo/layout_io.hpp"

namespace celltopo {

using nlohmann::json;

json diagram_to_json(const EnrichedPersistenceDiagram& diagram) {
    json points = json::array();
    for (std::size_t i = 0; i < diagram.points.size(); ++i) {
        const PersistencePoint& p = diagram.points[i];
        json entry;
        entry["birth"] = p.birth;
        entry["death"] = p.death;
        entry["center"] = {p.cx, p.cy};
        if (i < diagram.enrichments.size()) {
            entry["k_vec"] = diagram.enrichments[i].k_vec;
            entry["density_vec"] = diagram.enrichments[i].density_vec;
        }
        points.push_back(std::move(entry));
    }
    return json{{"class_id", diagram.class_id}, {"points", std::move(points)}};
}

EnrichedPersistenceDiagram diagram_from_json(const json& j) {
    if (!j.is_object() || !j.contains("class_id") || !j.contains("points")) {
        throw FormatError("diagram JSON must carry 'class_id' and 'points'");
    }
    EnrichedPersistenceDiagram d;
    d.class_id = j["class_id"].get<int>();
    for (const auto& e : j["points"]) {
        PersistencePoint p;
        p.birth = e.at("birth").get<double>();
        p.death = e.at("death").get<double>();
        p.cx = e.at("center").at(0).get<double>();
        p.cy = e.at("center").at(1).get<double>();
        d.points.push_back(p);
        HoleEnrichment enr;
        if (e.contains("k_vec")) enr.k_vec = e["k_vec"].get<std::vector<double>>();
        if (e.contains("density_vec")) {
            enr.density_vec = e["density_vec"].get<std::vector<double>>();
        }
        d.enrichments.push_back(std::move(enr));
    }
    return d;
}

json kfunction_to_json(const KFunctionVector& k) {
    json j;
    j["values"] = k.values;
    j["target_class"] = k.target_class;
    if (k.source_class) j["source_class"] = *k.source_class;
    if (k.location) j["location"] = {(*k.location)[0], (*k.location)[1]};
    j["degenerate"] = k.degenerate;
    return j;
}

json report_to_json(const MetricReport& report) {
    json per_class = json::array();
    for (std::size_t c = 0; c < report.per_class.size(); ++c) {
        const ClassMetrics& m = report.per_class[c];
        per_class.push_back(json{{"class", report.class_names[c]},
                                 {"pd_emd", m.pd_emd},
                                 {"pd_ccmd", m.pd_ccmd},
                                 {"k_mae", m.k_mae},
                                 {"k_rmse", m.k_rmse}});
    }
    json j;
    j["per_class"] = std::move(per_class);
    j["mean"] = {{"pd_emd", report.mean.pd_emd},
                 {"pd_ccmd", report.mean.pd_ccmd},
                 {"k_mae", report.mean.k_mae},
                 {"k_rmse", report.mean.k_rmse}};
    j["k_normalization"] = report.k_normalization;
    j["emd_convention"] = report.emd_convention;
    return j;
}

json feature_to_json(int class_id, const DiagramFeature& feature) {
    return json{{"class_id", class_id}, {"log_histogram", feature.log_histogram}};
}

json params_to_json(const AnalysisParams& params) {
    json j;
    j["radii"] = params.radii.radii;
    j["sigmas"] = params.sigmas.sigmas;
    j["h"] = params.h;
    j["persistence_floor"] =
        params.persistence_floor < 0.0 ? 2.0 * params.h : params.persistence_floor;
    j["buckets"] = params.buckets;
    return j;
}

void write_trace_csv(const SynthesisTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "step,total,l_cc,k_term,accepted\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const SynthesisStep& s = trace.steps[i];
        out << i << ',' << format_double(s.total) << ',' << format_double(s.l_cc) << ','
            << format_double(s.k_term) << ',' << (s.accepted ? 1 : 0) << '\n';
    }
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace celltopo
