#include "celltopo/spatial_stats.hpp"

#include <algorithm>
#include <cmath>

namespace celltopo {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_class(const CellLayout& layout, int class_id, const char* role) {
    if (class_id < 0 || class_id >= layout.class_count()) {
        throw ValidationError(std::string(role) + " class " + std::to_string(class_id) +
                              " out of range");
    }
}

// Cumulative pair counts: counts[i] = #pairs with dist^2 < radii[i]^2.
// The squared comparison is the library-wide indicator convention.
std::vector<double> accumulate_counts(const std::vector<double>& r2,
                                      std::vector<std::size_t>& hist) {
    std::vector<double> counts(r2.size());
    std::size_t running = 0;
    for (std::size_t i = 0; i < r2.size(); ++i) {
        running += hist[i];
        counts[i] = static_cast<double>(running);
    }
    return counts;
}

std::vector<double> squared_radii(const RadiusGrid& radii) {
    std::vector<double> r2(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) r2[i] = radii.radii[i] * radii.radii[i];
    return r2;
}

// Index of the first radius with d2 < r2[i], or r2.size() if none.
std::size_t first_radius_over(const std::vector<double>& r2, double d2) {
    return static_cast<std::size_t>(
        std::upper_bound(r2.begin(), r2.end(), d2) - r2.begin());
}

}  // namespace

KFunctionVector cross_k(const CellLayout& layout, int source, int target,
                        const RadiusGrid& radii) {
    check_class(layout, source, "source");
    check_class(layout, target, "target");
    KFunctionVector out;
    out.values.assign(radii.size(), 0.0);
    out.target_class = target;
    out.source_class = source;

    const std::size_t ns = layout.class_size(source);
    const std::size_t nt = layout.class_size(target);
    const bool same = (source == target);
    const double denom = same ? static_cast<double>(ns) * (static_cast<double>(ns) - 1.0)
                              : static_cast<double>(ns) * static_cast<double>(nt);
    if (denom <= 0.0) {
        out.degenerate = true;
        return out;
    }

    const std::vector<double> r2 = squared_radii(radii);
    const std::vector<CellPoint> src = layout.class_points(source);
    const std::vector<CellPoint> tgt = layout.class_points(target);
    std::vector<std::size_t> hist(r2.size() + 1, 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
        for (std::size_t j = 0; j < tgt.size(); ++j) {
            if (same && i == j) continue;
            const double dx = src[i].x - tgt[j].x;
            const double dy = src[i].y - tgt[j].y;
            ++hist[first_radius_over(r2, dx * dx + dy * dy)];
        }
    }
    const double a = layout.domain().area() / denom;
    out.values = accumulate_counts(r2, hist);
    for (double& v : out.values) v *= a;
    return out;
}

KFunctionVector location_k(const CellLayout& layout, double x, double y, int target,
                           const RadiusGrid& radii) {
    check_class(layout, target, "target");
    if (!layout.domain().contains(x, y)) {
        throw ValidationError("location (" + std::to_string(x) + ", " + std::to_string(y) +
                              ") outside the domain");
    }
    KFunctionVector out;
    out.values.assign(radii.size(), 0.0);
    out.target_class = target;
    out.location = {{x, y}};

    const std::size_t nt = layout.class_size(target);
    if (nt == 0) {
        out.degenerate = true;
        return out;
    }
    const std::vector<double> r2 = squared_radii(radii);
    std::vector<std::size_t> hist(r2.size() + 1, 0);
    for (const CellPoint& p : layout.points()) {
        if (p.class_id != target) continue;
        const double dx = x - p.x;
        const double dy = y - p.y;
        ++hist[first_radius_over(r2, dx * dx + dy * dy)];
    }
    const double a = layout.domain().area() / static_cast<double>(nt);
    out.values = accumulate_counts(r2, hist);
    for (double& v : out.values) v *= a;
    return out;
}

DensityVector multiscale_density(const CellLayout& layout, double x, double y, int target,
                                 const BandwidthSet& sigmas) {
    if (target != kAllClasses) check_class(layout, target, "target");
    if (!layout.domain().contains(x, y)) {
        throw ValidationError("location (" + std::to_string(x) + ", " + std::to_string(y) +
                              ") outside the domain");
    }
    DensityVector out;
    out.values.assign(sigmas.size(), 0.0);
    out.location = {{x, y}};
    out.target_class = target;
    for (const CellPoint& p : layout.points()) {
        if (target != kAllClasses && p.class_id != target) continue;
        const double dx = x - p.x;
        const double dy = y - p.y;
        const double d2 = dx * dx + dy * dy;
        for (std::size_t j = 0; j < sigmas.size(); ++j) {
            const double s2 = sigmas.sigmas[j] * sigmas.sigmas[j];
            out.values[j] += std::exp(-d2 / (2.0 * s2)) / (kTwoPi * s2);
        }
    }
    return out;
}

double k_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("k_distance: length mismatch (" + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()) + ")");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double k_distance(const KFunctionVector& a, const KFunctionVector& b) {
    return k_distance(std::span<const double>(a.values), std::span<const double>(b.values));
}

}  // namespace celltopo
