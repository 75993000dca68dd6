#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "celltopo/defaults.hpp"
#include "celltopo/layout_io.hpp"
#include "celltopo/matching.hpp"
#include "celltopo/serialize.hpp"
#include "celltopo/svg.hpp"
#include "celltopo/synthesis.hpp"

namespace {

using namespace celltopo;
using nlohmann::json;

// Exit codes: 0 success, 2 I/O (missing/unreadable/unparsable files),
// 3 validation, 4 internal.
constexpr int kExitIo = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInternal = 4;

struct CommonFlags {
    std::string format;  // "", "csv", "json"
    std::vector<double> radii;
    std::vector<double> sigmas;
    double grid_h = 0.0;
    std::vector<double> buckets;
    bool union_diagram = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
    cmd->add_option("--format", flags->format, "Layout file format (csv or json)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--radii", flags->radii, "K-function radii (overrides defaults)")
        ->delimiter(',');
    cmd->add_option("--sigmas", flags->sigmas, "Density bandwidths (overrides defaults)")
        ->delimiter(',');
    cmd->add_option("--grid-h", flags->grid_h, "Distance-transform grid spacing");
    cmd->add_option("--buckets", flags->buckets, "Persistence histogram boundaries")
        ->delimiter(',');
}

LayoutFormat detect_format(const std::string& path, const std::string& flag) {
    if (!flag.empty()) return parse_format(flag);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return LayoutFormat::json;
    return LayoutFormat::csv;
}

AnalysisParams resolved_params(const DefaultsSpec& defaults, const Rect& domain,
                               const CommonFlags& flags) {
    AnalysisParams p = defaults.resolve(domain);
    if (!flags.radii.empty()) p.radii = RadiusGrid(flags.radii);
    if (!flags.sigmas.empty()) p.sigmas = BandwidthSet(flags.sigmas);
    if (flags.grid_h > 0.0) {
        p.h = flags.grid_h;
        p.persistence_floor = 2.0 * p.h;
    }
    if (!flags.buckets.empty()) p.buckets = flags.buckets;
    return p;
}

void write_json_output(const json& doc, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write to '" + path + "' failed");
}

json analysis_body(const CellLayout& layout, const AnalysisParams& params,
                   bool with_union_diagram) {
    json doc;
    json cross = json::array();
    for (int s = 0; s < layout.class_count(); ++s) {
        for (int t = 0; t < layout.class_count(); ++t) {
            cross.push_back(kfunction_to_json(cross_k(layout, s, t, params.radii)));
        }
    }
    doc["cross_k"] = std::move(cross);

    const auto diagrams = per_class_diagrams(layout, params.h, params.radii, params.sigmas,
                                             params.persistence_floor);
    json dgms = json::array();
    json features = json::array();
    for (const auto& d : diagrams) {
        dgms.push_back(diagram_to_json(d));
        features.push_back(feature_to_json(d.class_id, vectorize_diagram(d, params.buckets)));
    }
    if (with_union_diagram && layout.size() > 0) {
        const auto u = union_diagram(layout, params.h, params.radii, params.sigmas,
                                     params.persistence_floor);
        dgms.push_back(diagram_to_json(u));
        features.push_back(feature_to_json(u.class_id, vectorize_diagram(u, params.buckets)));
    }
    doc["diagrams"] = std::move(dgms);
    doc["features"] = std::move(features);
    return doc;
}

json layout_summary(const CellLayout& layout) {
    const Rect& d = layout.domain();
    json j;
    j["points"] = layout.size();
    j["classes"] = layout.class_names();
    j["class_counts"] = layout.class_counts();
    j["domain"] = {d.x_min, d.y_min, d.x_max, d.y_max};
    return j;
}

int cmd_analyze(const std::string& input, const std::string& output,
                const CommonFlags& flags, const DefaultsSpec& defaults) {
    const CellLayout layout = load_layout(input, detect_format(input, flags.format));
    const AnalysisParams params = resolved_params(defaults, layout.domain(), flags);
    json doc;
    doc["defaults"] = json::parse(defaults.to_json_text());
    doc["params"] = params_to_json(params);
    doc["layout"] = layout_summary(layout);
    doc.update(analysis_body(layout, params, flags.union_diagram));
    write_json_output(doc, output);
    return 0;
}

int cmd_compare(const std::string& gen_path, const std::string& ref_path,
                const std::string& output, const CommonFlags& flags,
                const DefaultsSpec& defaults) {
    const CellLayout gen = load_layout(gen_path, detect_format(gen_path, flags.format));
    const CellLayout ref = load_layout(ref_path, detect_format(ref_path, flags.format));
    const AnalysisParams params = resolved_params(defaults, ref.domain(), flags);
    const MetricReport report = metric_report(gen, ref, params);
    std::cout << metric_table(report);
    json doc;
    doc["defaults"] = json::parse(defaults.to_json_text());
    doc["params"] = params_to_json(params);
    doc["report"] = report_to_json(report);
    if (!output.empty()) write_json_output(doc, output);
    return 0;
}

int cmd_synthesize(const std::string& ref_path, const std::string& out_path,
                   const std::string& trace_path, const std::string& init_path,
                   const CommonFlags& flags, DefaultsSpec defaults,
                   const std::string& config_path, std::optional<std::uint64_t> seed,
                   std::optional<int> steps, std::optional<double> lambda_cc,
                   std::optional<double> lambda_k, std::optional<double> min_separation) {
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw IoError("cannot open '" + config_path + "' for reading");
        std::ostringstream buf;
        buf << in.rdbuf();
        defaults = DefaultsSpec::from_json_text(buf.str(), defaults);
    }
    const CellLayout ref = load_layout(ref_path, detect_format(ref_path, flags.format));
    SynthesisConfig config = SynthesisConfig::from_defaults(defaults, ref.domain());
    if (!flags.radii.empty()) config.radii = RadiusGrid(flags.radii);
    if (!flags.sigmas.empty()) config.sigmas = BandwidthSet(flags.sigmas);
    if (flags.grid_h > 0.0) config.h = flags.grid_h;
    if (seed) config.seed = *seed;
    if (steps) config.steps = *steps;
    if (lambda_cc) config.lambda_cc = *lambda_cc;
    if (lambda_k) config.lambda_k = *lambda_k;
    if (min_separation) config.min_separation = *min_separation;

    const SynthesisResult result = synthesize(ref, config);
    const LayoutFormat out_fmt = detect_format(out_path, flags.format);
    save_layout(result.layout, out_path, out_fmt);
    if (!trace_path.empty()) write_trace_csv(result.trace, trace_path);
    if (!init_path.empty()) {
        save_layout(result.initial_layout, init_path, detect_format(init_path, flags.format));
    }

    AnalysisParams params = defaults.resolve(ref.domain());
    params.radii = config.radii;
    params.sigmas = config.sigmas;
    const MetricReport report = metric_report(result.layout, ref, params);
    std::cout << "objective: initial " << result.initial.total << " -> best "
              << result.best.total << " (" << result.layout.size() << '/' << ref.size()
              << " points after overlap removal)\n";
    std::cout << metric_table(report);
    return 0;
}

int cmd_vectorize(const std::string& input, const std::string& output,
                  const CommonFlags& flags, const DefaultsSpec& defaults) {
    const CellLayout layout = load_layout(input, detect_format(input, flags.format));
    const AnalysisParams params = resolved_params(defaults, layout.domain(), flags);
    const auto diagrams = per_class_diagrams(layout, params.h, params.radii, params.sigmas,
                                             params.persistence_floor);
    json features = json::array();
    for (const auto& d : diagrams) {
        features.push_back(feature_to_json(d.class_id, vectorize_diagram(d, params.buckets)));
    }
    if (flags.union_diagram && layout.size() > 0) {
        const auto u = union_diagram(layout, params.h, params.radii, params.sigmas,
                                     params.persistence_floor);
        features.push_back(feature_to_json(u.class_id, vectorize_diagram(u, params.buckets)));
    }
    json doc;
    doc["defaults"] = json::parse(defaults.to_json_text());
    doc["params"] = params_to_json(params);
    doc["features"] = std::move(features);
    write_json_output(doc, output);
    return 0;
}

int cmd_render(const std::string& input, const std::string& diagram_path,
               const std::string& output, const CommonFlags& flags) {
    const CellLayout layout = load_layout(input, detect_format(input, flags.format));
    std::optional<EnrichedPersistenceDiagram> diagram;
    if (!diagram_path.empty()) {
        std::ifstream in(diagram_path);
        if (!in) throw IoError("cannot open '" + diagram_path + "' for reading");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw FormatError(diagram_path + ": " + e.what());
        }
        diagram = diagram_from_json(j);
    }
    write_svg(render_svg(layout, diagram), output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-class cell layout descriptors, comparison metrics and synthesis"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string input, reference, output, trace_path, init_path, diagram_path, config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> steps;
    std::optional<double> lambda_cc, lambda_k, min_separation;

    CLI::App* analyze = app.add_subcommand("analyze", "Descriptors of one layout as JSON");
    analyze->add_option("--input,-i", input, "Layout file")->required();
    analyze->add_option("--output,-o", output, "Report path (default stdout)");
    analyze->add_flag("--union-diagram", flags.union_diagram,
                      "Also compute the all-classes diagram");
    add_common_flags(analyze, &flags);

    CLI::App* compare = app.add_subcommand("compare", "Metric report between two layouts");
    compare->add_option("--generated,-g", input, "Generated/candidate layout")->required();
    compare->add_option("--reference,-r", reference, "Reference layout")->required();
    compare->add_option("--output,-o", output, "JSON report path");
    add_common_flags(compare, &flags);

    CLI::App* synth = app.add_subcommand("synthesize", "Synthesize a layout from a reference");
    synth->add_option("--reference,-r", reference, "Reference layout")->required();
    synth->add_option("--output,-o", output, "Synthesized layout path")->required();
    synth->add_option("--trace", trace_path, "Per-step trace CSV path");
    synth->add_option("--emit-init", init_path, "Also write the initial mesh layout here");
    synth->add_option("--config", config_path, "JSON config overriding defaults");
    synth->add_option("--seed", seed, "RNG seed");
    synth->add_option("--steps", steps, "Annealing steps");
    synth->add_option("--lambda-cc", lambda_cc, "Configuration-loss weight");
    synth->add_option("--lambda-k", lambda_k, "Cross-K term weight");
    synth->add_option("--min-separation", min_separation, "Overlap-removal distance");
    add_common_flags(synth, &flags);

    CLI::App* vectorize = app.add_subcommand("vectorize", "Diagram log-histogram features");
    vectorize->add_option("--input,-i", input, "Layout file")->required();
    vectorize->add_option("--output,-o", output, "Feature JSON path (default stdout)");
    vectorize->add_flag("--union-diagram", flags.union_diagram,
                        "Also vectorize the all-classes diagram");
    add_common_flags(vectorize, &flags);

    CLI::App* render = app.add_subcommand("render", "SVG visualization of a layout");
    render->add_option("--input,-i", input, "Layout file")->required();
    render->add_option("--diagram", diagram_path, "Diagram JSON to overlay");
    render->add_option("--output,-o", output, "SVG path")->required();
    add_common_flags(render, &flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        const DefaultsSpec defaults = DefaultsSpec::load();
        if (analyze->parsed()) return cmd_analyze(input, output, flags, defaults);
        if (compare->parsed()) return cmd_compare(input, reference, output, flags, defaults);
        if (synth->parsed()) {
            return cmd_synthesize(reference, output, trace_path, init_path, flags, defaults,
                                  config_path, seed, steps, lambda_cc, lambda_k, min_separation);
        }
        if (vectorize->parsed()) return cmd_vectorize(input, output, flags, defaults);
        if (render->parsed()) return cmd_render(input, diagram_path, output, flags);
        return kExitInternal;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
