#include "celltopo/defaults.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace celltopo {

using nlohmann::json;

AnalysisParams DefaultsSpec::resolve(const Rect& domain) const {
    const double side = domain.shorter_side();
    AnalysisParams p;
    std::vector<double> radii(static_cast<std::size_t>(radius_count));
    for (int i = 0; i < radius_count; ++i) {
        const double f =
            radius_count == 1
                ? radius_min_frac
                : radius_min_frac + (radius_max_frac - radius_min_frac) *
                                        static_cast<double>(i) /
                                        static_cast<double>(radius_count - 1);
        radii[static_cast<std::size_t>(i)] = f * side;
    }
    p.radii = RadiusGrid(std::move(radii));
    std::vector<double> sigmas;
    for (double f : sigma_fracs) sigmas.push_back(f * side);
    p.sigmas = BandwidthSet(std::move(sigmas));
    p.h = h_frac * side;
    p.persistence_floor = 2.0 * p.h;
    for (double f : bucket_fracs) p.buckets.push_back(f * side);
    return p;
}

std::string DefaultsSpec::to_json_text() const {
    json j;
    j["version"] = version;
    j["radius_min_frac"] = radius_min_frac;
    j["radius_max_frac"] = radius_max_frac;
    j["radius_count"] = radius_count;
    j["sigma_fracs"] = sigma_fracs;
    j["h_frac"] = h_frac;
    j["h_synth_frac"] = h_synth_frac;
    j["bucket_fracs"] = bucket_fracs;
    j["min_separation_frac"] = min_separation_frac;
    j["steps"] = steps;
    j["t0"] = t0;
    j["decay"] = decay;
    j["move_scale"] = move_scale;
    j["init_jitter_sigma"] = init_jitter_sigma;
    j["lambda_cc"] = lambda_cc;
    j["lambda_k"] = lambda_k;
    j["teleport_prob"] = teleport_prob;
    j["seed"] = seed;
    return j.dump(2);
}

DefaultsSpec DefaultsSpec::from_json_text(const std::string& text) {
    return from_json_text(text, DefaultsSpec{});
}

DefaultsSpec DefaultsSpec::from_json_text(const std::string& text, DefaultsSpec base) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("defaults JSON parse failure: ") + e.what());
    }
    DefaultsSpec d = std::move(base);
    auto get = [&j](const char* key, auto& field) {
        if (j.contains(key)) field = j[key].template get<std::decay_t<decltype(field)>>();
    };
    get("version", d.version);
    get("radius_min_frac", d.radius_min_frac);
    get("radius_max_frac", d.radius_max_frac);
    get("radius_count", d.radius_count);
    get("sigma_fracs", d.sigma_fracs);
    get("h_frac", d.h_frac);
    get("h_synth_frac", d.h_synth_frac);
    get("bucket_fracs", d.bucket_fracs);
    get("min_separation_frac", d.min_separation_frac);
    get("steps", d.steps);
    get("t0", d.t0);
    get("decay", d.decay);
    get("move_scale", d.move_scale);
    get("init_jitter_sigma", d.init_jitter_sigma);
    get("lambda_cc", d.lambda_cc);
    get("lambda_k", d.lambda_k);
    get("teleport_prob", d.teleport_prob);
    get("seed", d.seed);
    return d;
}

DefaultsSpec DefaultsSpec::load() {
    const char* path = std::getenv("CELLTOPO_DEFAULTS");
    if (path == nullptr || *path == '\0') return DefaultsSpec{};
    std::ifstream in(path);
    if (!in) throw IoError(std::string("cannot open defaults file '") + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

}  // namespace celltopo
