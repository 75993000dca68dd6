#pragma once

#include <cstdint>
#include <string>

#include "celltopo/params.hpp"

namespace celltopo {

/// All tunable defaults in one versioned place, echoed into every report.
/// Length-like quantities are fractions of the shorter domain side and are
/// resolved against a concrete domain with resolve().
struct DefaultsSpec {
    std::string version = "celltopo-defaults-1";

    // descriptor grids
    double radius_min_frac = 0.05;
    double radius_max_frac = 0.40;
    int radius_count = 8;
    std::vector<double> sigma_fracs = {0.015, 0.03, 0.06, 0.12};
    double h_frac = 1.0 / 512.0;
    double h_synth_frac = 1.0 / 128.0;
    std::vector<double> bucket_fracs = {0.0, 0.0125, 0.025, 0.05, 0.10, 0.20};

    // synthesis
    double min_separation_frac = 0.01;
    int steps = 20000;
    double t0 = 0.02;
    double decay = 0.99955;
    double move_scale = 0.06;
    double init_jitter_sigma = 0.02;
    double lambda_cc = 1.0;
    double lambda_k = 1.0;
    double teleport_prob = 0.1;
    std::uint64_t seed = 1;

    AnalysisParams resolve(const Rect& domain) const;

    /// Built-in defaults, or the JSON file named by $CELLTOPO_DEFAULTS when
    /// that variable is set (missing keys fall back to the built-ins).
    static DefaultsSpec load();
    /// Applies the keys present in `text` on top of `base` (or the built-ins).
    static DefaultsSpec from_json_text(const std::string& text);
    static DefaultsSpec from_json_text(const std::string& text, DefaultsSpec base);
    std::string to_json_text() const;
};

}  // namespace celltopo
