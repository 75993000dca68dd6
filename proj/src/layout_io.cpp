#include "celltopo/layout_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace celltopo {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double_field(const std::string& s, std::size_t record, const char* field) {
    const std::string t = trim(s);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw FormatError("record " + std::to_string(record) + ": cannot parse " + field +
                          " value '" + s + "'");
    }
    return v;
}

Rect padded_bbox(const std::vector<CellPoint>& pts, double margin_fraction) {
    if (pts.empty()) {
        // Nothing to infer a domain from; pick a unit square.
        return Rect{0.0, 0.0, 1.0, 1.0};
    }
    Rect r{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const CellPoint& p : pts) {
        r.x_min = std::min(r.x_min, p.x);
        r.y_min = std::min(r.y_min, p.y);
        r.x_max = std::max(r.x_max, p.x);
        r.y_max = std::max(r.y_max, p.y);
    }
    double pad = r.diagonal() * margin_fraction;
    if (pad <= 0.0) pad = 1.0;  // all points coincide
    return Rect{r.x_min - pad, r.y_min - pad, r.x_max + pad, r.y_max + pad};
}

struct CsvContents {
    std::vector<double> xs, ys;
    std::vector<std::string> class_labels;
    std::optional<Rect> domain;
    std::optional<std::vector<std::string>> classes;
};

CsvContents read_csv(std::istream& in) {
    CsvContents out;
    std::string line;
    bool header_seen = false;
    std::size_t record = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const std::string body = trim(t.substr(1));
            if (body.rfind("domain:", 0) == 0) {
                std::istringstream ds(body.substr(7));
                Rect r;
                if (!(ds >> r.x_min >> r.y_min >> r.x_max >> r.y_max)) {
                    throw FormatError("line " + std::to_string(line_no) +
                                      ": malformed '# domain:' metadata");
                }
                out.domain = r;
            } else if (body.rfind("classes:", 0) == 0) {
                std::vector<std::string> names;
                for (const std::string& n : split(trim(body.substr(8)), ',')) {
                    names.push_back(trim(n));
                }
                out.classes = names;
            }
            continue;
        }
        if (!header_seen) {
            if (t != "x,y,class") {
                throw FormatError("line " + std::to_string(line_no) +
                                  ": expected header 'x,y,class', got '" + t + "'");
            }
            header_seen = true;
            continue;
        }
        ++record;
        const std::vector<std::string> fields = split(t, ',');
        if (fields.size() != 3) {
            throw FormatError("record " + std::to_string(record) + ": expected 3 fields, got " +
                              std::to_string(fields.size()));
        }
        out.xs.push_back(parse_double_field(fields[0], record, "x"));
        out.ys.push_back(parse_double_field(fields[1], record, "y"));
        const std::string label = trim(fields[2]);
        if (label.empty()) {
            throw FormatError("record " + std::to_string(record) + ": empty class field");
        }
        out.class_labels.push_back(label);
    }
    if (!header_seen) throw FormatError("missing 'x,y,class' header");
    return out;
}

CellLayout assemble(std::vector<double> xs, std::vector<double> ys,
                    std::vector<std::string> labels, std::optional<Rect> file_domain,
                    std::optional<std::vector<std::string>> file_classes,
                    const LoadOptions& options) {
    std::vector<std::string> class_names;
    if (options.class_map) {
        class_names = *options.class_map;
    } else if (file_classes) {
        class_names = *file_classes;
    }
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < class_names.size(); ++i) {
        index[class_names[i]] = static_cast<int>(i);
    }
    const bool fixed_table = options.class_map.has_value() || file_classes.has_value();

    std::vector<CellPoint> pts(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto it = index.find(labels[i]);
        int cid;
        if (it != index.end()) {
            cid = it->second;
        } else if (fixed_table) {
            throw ValidationError("record " + std::to_string(i + 1) + ": unknown class '" +
                                  labels[i] + "'");
        } else {
            cid = static_cast<int>(class_names.size());
            class_names.push_back(labels[i]);
            index[labels[i]] = cid;
        }
        pts[i] = CellPoint{xs[i], ys[i], cid};
    }

    Rect domain;
    if (options.domain) {
        domain = *options.domain;
    } else if (file_domain) {
        domain = *file_domain;
    } else {
        domain = padded_bbox(pts, options.margin_fraction);
    }
    return CellLayout(std::move(pts), domain, std::move(class_names));
}

CellLayout load_csv(std::istream& in, const LoadOptions& options) {
    CsvContents c = read_csv(in);
    return assemble(std::move(c.xs), std::move(c.ys), std::move(c.class_labels), c.domain,
                    c.classes, options);
}

CellLayout load_json(std::istream& in, const LoadOptions& options) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("JSON parse failure: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("points") || !doc.contains("classes")) {
        throw FormatError("layout JSON must be an object with 'classes' and 'points'");
    }
    std::optional<Rect> file_domain;
    if (doc.contains("domain")) {
        const auto& d = doc["domain"];
        if (!d.is_array() || d.size() != 4) {
            throw FormatError("'domain' must be [x0, y0, x1, y1]");
        }
        file_domain = Rect{d[0].get<double>(), d[1].get<double>(), d[2].get<double>(),
                           d[3].get<double>()};
    }
    std::vector<std::string> classes = doc["classes"].get<std::vector<std::string>>();
    std::vector<double> xs, ys;
    std::vector<std::string> labels;
    std::size_t record = 0;
    for (const auto& p : doc["points"]) {
        ++record;
        if (!p.is_array() || p.size() != 3) {
            throw FormatError("record " + std::to_string(record) +
                              ": point must be [x, y, class_id]");
        }
        const int cid = p[2].get<int>();
        if (cid < 0 || cid >= static_cast<int>(classes.size())) {
            throw FormatError("record " + std::to_string(record) + ": class_id " +
                              std::to_string(cid) + " out of range");
        }
        xs.push_back(p[0].get<double>());
        ys.push_back(p[1].get<double>());
        labels.push_back(classes[cid]);
    }
    return assemble(std::move(xs), std::move(ys), std::move(labels), file_domain, classes,
                    options);
}

}  // namespace

LayoutFormat parse_format(const std::string& name) {
    if (name == "csv") return LayoutFormat::csv;
    if (name == "json") return LayoutFormat::json;
    throw ValidationError("unknown layout format '" + name + "' (expected csv or json)");
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

CellLayout load_layout(const std::string& path, LayoutFormat format,
                       const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    try {
        return format == LayoutFormat::csv ? load_csv(in, options) : load_json(in, options);
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void save_layout(const CellLayout& layout, const std::string& path, LayoutFormat format) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    const Rect& d = layout.domain();
    if (format == LayoutFormat::csv) {
        out << "# domain: " << format_double(d.x_min) << ' ' << format_double(d.y_min) << ' '
            << format_double(d.x_max) << ' ' << format_double(d.y_max) << '\n';
        out << "# classes: ";
        for (std::size_t i = 0; i < layout.class_names().size(); ++i) {
            if (i) out << ',';
            out << layout.class_names()[i];
        }
        out << '\n';
        out << "x,y,class\n";
        for (const CellPoint& p : layout.points()) {
            out << format_double(p.x) << ',' << format_double(p.y) << ','
                << layout.class_names()[static_cast<std::size_t>(p.class_id)] << '\n';
        }
    } else {
        json doc;
        doc["domain"] = {d.x_min, d.y_min, d.x_max, d.y_max};
        doc["classes"] = layout.class_names();
        json pts = json::array();
        for (const CellPoint& p : layout.points()) {
            pts.push_back({p.x, p.y, p.class_id});
        }
        doc["points"] = std::move(pts);
        out << doc.dump(2) << '\n';
    }
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace celltopo
