#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "celltopo/defaults.hpp"
#include "celltopo/layout_io.hpp"
#include "celltopo/matching.hpp"
#include "celltopo/serialize.hpp"
#include "celltopo/svg.hpp"
#include "celltopo/synthesis.hpp"

namespace py = pybind11;
using namespace celltopo;

namespace {

CellLayout make_layout(const std::vector<std::tuple<double, double, int>>& points,
                       const std::array<double, 4>& domain,
                       const std::vector<std::string>& class_names) {
    std::vector<CellPoint> pts;
    pts.reserve(points.size());
    for (const auto& [x, y, c] : points) pts.push_back(CellPoint{x, y, c});
    return CellLayout(std::move(pts), Rect{domain[0], domain[1], domain[2], domain[3]},
                      class_names);
}

std::vector<std::tuple<double, double, int>> layout_points(const CellLayout& layout) {
    std::vector<std::tuple<double, double, int>> out;
    out.reserve(layout.size());
    for (const CellPoint& p : layout.points()) out.emplace_back(p.x, p.y, p.class_id);
    return out;
}

}  // namespace

PYBIND11_MODULE(_celltopo, m) {
    m.doc() = "Multi-class cell layout descriptors, matching losses and synthesis";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);

    py::class_<CellLayout>(m, "CellLayout")
        .def(py::init(&make_layout), py::arg("points"), py::arg("domain"),
             py::arg("class_names"))
        .def_property_readonly("points", &layout_points)
        .def_property_readonly("domain",
                               [](const CellLayout& l) {
                                   const Rect& d = l.domain();
                                   return std::array<double, 4>{d.x_min, d.y_min, d.x_max,
                                                                d.y_max};
                               })
        .def_property_readonly("class_names",
                               [](const CellLayout& l) { return l.class_names(); })
        .def_property_readonly("class_counts",
                               [](const CellLayout& l) { return l.class_counts(); })
        .def("__len__", &CellLayout::size);

    m.def(
        "load_layout",
        [](const std::string& path, const std::string& format) {
            return load_layout(path, parse_format(format));
        },
        py::arg("path"), py::arg("format"));
    m.def(
        "save_layout",
        [](const CellLayout& layout, const std::string& path, const std::string& format) {
            save_layout(layout, path, parse_format(format));
        },
        py::arg("layout"), py::arg("path"), py::arg("format"));
    m.def("normalize_to_unit", &normalize_to_unit, py::arg("layout"));

    py::class_<KFunctionVector>(m, "KFunctionVector")
        .def_readonly("values", &KFunctionVector::values)
        .def_readonly("target_class", &KFunctionVector::target_class)
        .def_readonly("degenerate", &KFunctionVector::degenerate);
    py::class_<DensityVector>(m, "DensityVector")
        .def_readonly("values", &DensityVector::values)
        .def_readonly("target_class", &DensityVector::target_class);

    m.def(
        "cross_k",
        [](const CellLayout& l, int s, int t, const std::vector<double>& radii) {
            return cross_k(l, s, t, RadiusGrid(radii));
        },
        py::arg("layout"), py::arg("source"), py::arg("target"), py::arg("radii"));
    m.def(
        "location_k",
        [](const CellLayout& l, double x, double y, int t, const std::vector<double>& radii) {
            return location_k(l, x, y, t, RadiusGrid(radii));
        },
        py::arg("layout"), py::arg("x"), py::arg("y"), py::arg("target"), py::arg("radii"));
    m.def(
        "multiscale_density",
        [](const CellLayout& l, double x, double y, int t, const std::vector<double>& sigmas) {
            return multiscale_density(l, x, y, t, BandwidthSet(sigmas));
        },
        py::arg("layout"), py::arg("x"), py::arg("y"), py::arg("target"), py::arg("sigmas"));
    m.def(
        "k_distance",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return k_distance(std::span<const double>(a), std::span<const double>(b));
        },
        py::arg("a"), py::arg("b"));

    py::class_<DistanceField>(m, "DistanceField")
        .def_readonly("rows", &DistanceField::rows)
        .def_readonly("cols", &DistanceField::cols)
        .def_readonly("dx", &DistanceField::dx)
        .def_readonly("dy", &DistanceField::dy)
        .def_readonly("h", &DistanceField::h)
        .def_readonly("values", &DistanceField::values)
        .def("at", &DistanceField::at, py::arg("i"), py::arg("j"));
    m.def("distance_transform", &distance_transform, py::arg("layout"), py::arg("class_filter"),
          py::arg("h"));

    py::class_<PersistencePoint>(m, "PersistencePoint")
        .def_readonly("birth", &PersistencePoint::birth)
        .def_readonly("death", &PersistencePoint::death)
        .def_readonly("cx", &PersistencePoint::cx)
        .def_readonly("cy", &PersistencePoint::cy)
        .def_property_readonly("persistence", &PersistencePoint::persistence);
    m.def("persistence_h1", &persistence_h1, py::arg("field"),
          py::arg("persistence_floor") = -1.0);

    py::class_<HoleEnrichment>(m, "HoleEnrichment")
        .def_readonly("k_vec", &HoleEnrichment::k_vec)
        .def_readonly("density_vec", &HoleEnrichment::density_vec);
    py::class_<EnrichedPersistenceDiagram>(m, "EnrichedPersistenceDiagram")
        .def_readonly("class_id", &EnrichedPersistenceDiagram::class_id)
        .def_readonly("points", &EnrichedPersistenceDiagram::points)
        .def_readonly("enrichments", &EnrichedPersistenceDiagram::enrichments)
        .def("__len__", &EnrichedPersistenceDiagram::size)
        .def("to_json", [](const EnrichedPersistenceDiagram& d) {
            return diagram_to_json(d).dump();
        });
    m.def(
        "per_class_diagrams",
        [](const CellLayout& l, double h, const std::vector<double>& radii,
           const std::vector<double>& sigmas, double floor) {
            return per_class_diagrams(l, h, RadiusGrid(radii), BandwidthSet(sigmas), floor);
        },
        py::arg("layout"), py::arg("h"), py::arg("radii"), py::arg("sigmas"),
        py::arg("persistence_floor") = -1.0);
    m.def(
        "vectorize_diagram",
        [](const EnrichedPersistenceDiagram& d, const std::vector<double>& buckets) {
            return vectorize_diagram(d, buckets).log_histogram;
        },
        py::arg("diagram"), py::arg("buckets"));

    py::class_<HoleMatching::Pair>(m, "MatchPair")
        .def_readonly("gen", &HoleMatching::Pair::gen)
        .def_readonly("ref", &HoleMatching::Pair::ref);
    py::class_<HoleMatching>(m, "HoleMatching")
        .def_readonly("pairs", &HoleMatching::pairs)
        .def_readonly("cost", &HoleMatching::cost);
    m.def("optimal_match", &optimal_match, py::arg("gen"), py::arg("ref"));
    m.def("cell_configuration_loss", &cell_configuration_loss, py::arg("gen"), py::arg("ref"));
    m.def("pd_emd", &pd_emd, py::arg("gen"), py::arg("ref"));
    m.def("pd_ccmd", &pd_ccmd, py::arg("gen"), py::arg("ref"), py::arg("gen_class_count"),
          py::arg("ref_class_count"));

    py::class_<ClassMetrics>(m, "ClassMetrics")
        .def_readonly("pd_emd", &ClassMetrics::pd_emd)
        .def_readonly("pd_ccmd", &ClassMetrics::pd_ccmd)
        .def_readonly("k_mae", &ClassMetrics::k_mae)
        .def_readonly("k_rmse", &ClassMetrics::k_rmse);
    py::class_<MetricReport>(m, "MetricReport")
        .def_readonly("class_names", &MetricReport::class_names)
        .def_readonly("per_class", &MetricReport::per_class)
        .def_readonly("mean", &MetricReport::mean)
        .def_readonly("k_normalization", &MetricReport::k_normalization)
        .def("to_json", [](const MetricReport& r) { return report_to_json(r).dump(); })
        .def("table", &metric_table);

    py::class_<AnalysisParams>(m, "AnalysisParams")
        .def_property_readonly("radii", [](const AnalysisParams& p) { return p.radii.radii; })
        .def_property_readonly("sigmas", [](const AnalysisParams& p) { return p.sigmas.sigmas; })
        .def_readonly("h", &AnalysisParams::h)
        .def_readonly("persistence_floor", &AnalysisParams::persistence_floor)
        .def_readonly("buckets", &AnalysisParams::buckets);
    py::class_<DefaultsSpec>(m, "DefaultsSpec")
        .def(py::init<>())
        .def_readwrite("steps", &DefaultsSpec::steps)
        .def_readwrite("seed", &DefaultsSpec::seed)
        .def_readwrite("lambda_cc", &DefaultsSpec::lambda_cc)
        .def_readwrite("lambda_k", &DefaultsSpec::lambda_k)
        .def("resolve",
             [](const DefaultsSpec& d, const std::array<double, 4>& domain) {
                 return d.resolve(Rect{domain[0], domain[1], domain[2], domain[3]});
             })
        .def("to_json", &DefaultsSpec::to_json_text);
    m.def(
        "metric_report",
        [](const CellLayout& gen, const CellLayout& ref, const AnalysisParams& params) {
            return metric_report(gen, ref, params);
        },
        py::arg("gen"), py::arg("ref"), py::arg("params"));

    py::class_<SynthesisConfig>(m, "SynthesisConfig")
        .def_static(
            "from_defaults",
            [](const DefaultsSpec& d, const std::array<double, 4>& domain) {
                return SynthesisConfig::from_defaults(
                    d, Rect{domain[0], domain[1], domain[2], domain[3]});
            },
            py::arg("defaults"), py::arg("domain"))
        .def_readwrite("steps", &SynthesisConfig::steps)
        .def_readwrite("seed", &SynthesisConfig::seed)
        .def_readwrite("lambda_k", &SynthesisConfig::lambda_k)
        .def_readwrite("lambda_cc", &SynthesisConfig::lambda_cc)
        .def_readwrite("min_separation", &SynthesisConfig::min_separation)
        .def_readwrite("init_jitter_sigma", &SynthesisConfig::init_jitter_sigma);
    py::class_<Objective>(m, "Objective")
        .def_readonly("total", &Objective::total)
        .def_readonly("l_cc", &Objective::l_cc)
        .def_readonly("k_term", &Objective::k_term);
    py::class_<SynthesisStep>(m, "SynthesisStep")
        .def_readonly("total", &SynthesisStep::total)
        .def_readonly("l_cc", &SynthesisStep::l_cc)
        .def_readonly("k_term", &SynthesisStep::k_term)
        .def_readonly("accepted", &SynthesisStep::accepted);
    py::class_<SynthesisTrace>(m, "SynthesisTrace")
        .def_readonly("initial", &SynthesisTrace::initial)
        .def_readonly("steps", &SynthesisTrace::steps);
    py::class_<SynthesisResult>(m, "SynthesisResult")
        .def_readonly("layout", &SynthesisResult::layout)
        .def_readonly("raw_layout", &SynthesisResult::raw_layout)
        .def_readonly("initial_layout", &SynthesisResult::initial_layout)
        .def_readonly("trace", &SynthesisResult::trace)
        .def_readonly("initial", &SynthesisResult::initial)
        .def_readonly("best", &SynthesisResult::best);
    m.def("init_layout", &init_layout, py::arg("reference"), py::arg("jitter_sigma"),
          py::arg("seed"));
    m.def("objective", &objective, py::arg("candidate"), py::arg("reference"),
          py::arg("config"));
    m.def("synthesize", &synthesize, py::arg("reference"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("remove_overlaps", &remove_overlaps, py::arg("layout"), py::arg("min_separation"));

    m.def(
        "render_svg",
        [](const CellLayout& l) { return render_svg(l); },
        py::arg("layout"));

    m.attr("ALL_CLASSES") = kAllClasses;
    m.attr("DUMMY") = kDummy;
}
