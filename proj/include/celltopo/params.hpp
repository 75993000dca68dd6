#pragma once

#include "celltopo/layout.hpp"

namespace celltopo {

/// Resolved descriptor parameters for one domain: everything the analysis
/// pipeline needs besides the layout itself.
struct AnalysisParams {
    RadiusGrid radii;
    BandwidthSet sigmas;
    double h = 0.0;                  // grid spacing for the distance transform
    double persistence_floor = -1.0;  // < 0: default 2h
    std::vector<double> buckets;      // persistence histogram boundaries
};

}  // namespace celltopo
