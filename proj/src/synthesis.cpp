#include "celltopo/synthesis.hpp"

#include <algorithm>
#include <cmath>

#include "celltopo/rng.hpp"

namespace celltopo {

namespace {

// Per-class diagram cache for the annealing loop. A class's filtration
// depends only on that class's own points, so after a single-point move
// only the moved class's EDT + persistence must be recomputed; enrichments,
// matchings and cross-K terms depend on the whole layout and are always
// evaluated fresh. Results are bit-identical to full recomputation.
class ObjectiveEvaluator {
public:
    ObjectiveEvaluator(const CellLayout& reference, const SynthesisConfig& config)
        : config_(config),
          classes_(reference.class_count()),
          floor_(2.0 * config.h_synth) {
        ref_dgms_ = per_class_diagrams(reference, config_.h_synth, config_.radii,
                                       config_.sigmas, floor_);
        ref_k_.resize(static_cast<std::size_t>(classes_) * static_cast<std::size_t>(classes_));
        for (int s = 0; s < classes_; ++s) {
            for (int t = 0; t < classes_; ++t) {
                ref_k_[static_cast<std::size_t>(s * classes_ + t)] =
                    cross_k(reference, s, t, config_.radii).values;
            }
        }
        cand_points_.resize(static_cast<std::size_t>(classes_));
        proposal_points_.resize(static_cast<std::size_t>(classes_));
    }

    /// Evaluate a candidate. changed_class == kAllClasses recomputes every
    /// per-class diagram; otherwise only that class's diagram is refreshed
    /// (into a proposal slot; call commit() to keep it).
    Objective evaluate(const CellLayout& candidate, int changed_class) {
        proposal_class_ = changed_class;
        for (int c = 0; c < classes_; ++c) {
            if (changed_class != kAllClasses && c != changed_class) continue;
            std::vector<PersistencePoint> pts;
            if (candidate.class_size(c) > 0) {
                pts = persistence_h1(distance_transform(candidate, c, config_.h_synth), floor_);
            }
            if (changed_class == kAllClasses) {
                cand_points_[static_cast<std::size_t>(c)] = std::move(pts);
            } else {
                proposal_points_[static_cast<std::size_t>(c)] = std::move(pts);
            }
        }

        Objective obj;
        for (int c = 0; c < classes_; ++c) {
            const auto& pts = (c == proposal_class_) ? proposal_points_[static_cast<std::size_t>(c)]
                                                     : cand_points_[static_cast<std::size_t>(c)];
            const EnrichedPersistenceDiagram dgm =
                enrich_diagram(pts, c, candidate, config_.radii, config_.sigmas);
            obj.l_cc += cell_configuration_loss(dgm, ref_dgms_[static_cast<std::size_t>(c)]);
        }
        double k_raw = 0.0;
        for (int s = 0; s < classes_; ++s) {
            for (int t = 0; t < classes_; ++t) {
                const KFunctionVector kv = cross_k(candidate, s, t, config_.radii);
                const double d = k_distance(
                    std::span<const double>(kv.values),
                    std::span<const double>(ref_k_[static_cast<std::size_t>(s * classes_ + t)]));
                k_raw += d * d;
            }
        }
        obj.k_term = k_raw / (static_cast<double>(classes_) * static_cast<double>(classes_) *
                              static_cast<double>(config_.radii.size()));
        obj.total = config_.lambda_cc * obj.l_cc + config_.lambda_k * obj.k_term;
        return obj;
    }

    void commit() {
        if (proposal_class_ != kAllClasses) {
            cand_points_[static_cast<std::size_t>(proposal_class_)] =
                std::move(proposal_points_[static_cast<std::size_t>(proposal_class_)]);
        }
        proposal_class_ = kAllClasses;
    }

private:
    const SynthesisConfig& config_;
    int classes_;
    double floor_;
    std::vector<EnrichedPersistenceDiagram> ref_dgms_;
    std::vector<std::vector<double>> ref_k_;
    std::vector<std::vector<PersistencePoint>> cand_points_;
    std::vector<std::vector<PersistencePoint>> proposal_points_;
    int proposal_class_ = kAllClasses;
};

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

void SynthesisConfig::validate() const {
    if (radii.size() == 0) throw ValidationError("synthesis config: radii not set");
    if (sigmas.size() == 0) throw ValidationError("synthesis config: sigmas not set");
    if (!(h > 0.0) || !(h_synth > 0.0)) throw ValidationError("synthesis config: h must be positive");
    if (steps < 1) throw ValidationError("synthesis config: steps must be >= 1");
    if (!(t0 > 0.0)) throw ValidationError("synthesis config: T0 must be positive");
    if (!(decay > 0.0) || !(decay < 1.0)) {
        throw ValidationError("synthesis config: decay must lie in (0, 1)");
    }
    if (lambda_k < 0.0 || lambda_cc < 0.0 || (lambda_k == 0.0 && lambda_cc == 0.0)) {
        throw ValidationError("synthesis config: weights must be >= 0 and not both 0");
    }
    if (min_separation < 0.0) throw ValidationError("synthesis config: min_separation < 0");
    if (!(move_scale > 0.0)) throw ValidationError("synthesis config: move_scale must be positive");
    if (teleport_prob < 0.0 || teleport_prob > 1.0) {
        throw ValidationError("synthesis config: teleport_prob must lie in [0, 1]");
    }
}

SynthesisConfig SynthesisConfig::from_defaults(const DefaultsSpec& d, const Rect& domain) {
    const AnalysisParams params = d.resolve(domain);
    SynthesisConfig c;
    c.radii = params.radii;
    c.sigmas = params.sigmas;
    c.h = params.h;
    c.h_synth = d.h_synth_frac * domain.shorter_side();
    c.init_jitter_sigma = d.init_jitter_sigma;
    c.steps = d.steps;
    c.t0 = d.t0;
    c.decay = d.decay;
    c.move_scale = d.move_scale;
    c.lambda_k = d.lambda_k;
    c.lambda_cc = d.lambda_cc;
    c.seed = d.seed;
    c.min_separation = d.min_separation_frac * domain.shorter_side();
    c.teleport_prob = d.teleport_prob;
    return c;
}

CellLayout init_layout(const CellLayout& reference, double jitter_sigma, std::uint64_t seed) {
    if (reference.size() == 0) {
        throw ValidationError("init_layout: reference layout has no points");
    }
    const UnitTransform t = unit_transform(reference.domain());
    Rng rng(seed);
    std::vector<CellPoint> pts;
    pts.reserve(reference.size());
    for (int c = 0; c < reference.class_count(); ++c) {
        const std::size_t n = reference.class_size(c);
        if (n == 0) continue;
        const std::size_t mesh = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(n)) - 1e-12));
        const double cell = 2.0 / static_cast<double>(mesh);
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = k / mesh, j = k % mesh;
            double ux = -1.0 + (static_cast<double>(j) + 0.5) * cell;
            double uy = -1.0 + (static_cast<double>(i) + 0.5) * cell;
            ux = clamp(ux + rng.next_normal() * jitter_sigma, -1.0, 1.0);
            uy = clamp(uy + rng.next_normal() * jitter_sigma, -1.0, 1.0);
            const auto [x, y] = t.from_unit(ux, uy);
            pts.push_back(CellPoint{x, y, c});
        }
    }
    return CellLayout(std::move(pts), reference.domain(), reference.class_names());
}

Objective objective(const CellLayout& candidate, const CellLayout& reference,
                    const SynthesisConfig& config) {
    if (!candidate.same_class_set(reference)) {
        throw ValidationError("objective: layouts have different class sets");
    }
    config.validate();
    ObjectiveEvaluator eval(reference, config);
    return eval.evaluate(candidate, kAllClasses);
}

SynthesisResult synthesize(const CellLayout& reference, const SynthesisConfig& config) {
    config.validate();
    const CellLayout initial = init_layout(reference, config.init_jitter_sigma, config.seed);
    const Rect& domain = reference.domain();

    ObjectiveEvaluator eval(reference, config);
    std::vector<CellPoint> cur = initial.points();
    auto layout_of = [&](const std::vector<CellPoint>& pts) {
        return CellLayout(pts, domain, reference.class_names());
    };

    Objective cur_obj = eval.evaluate(initial, kAllClasses);
    Objective best_obj = cur_obj;
    std::vector<CellPoint> best = cur;

    SynthesisTrace trace;
    trace.initial = cur_obj;
    trace.steps.reserve(static_cast<std::size_t>(config.steps));

    // Separate stream from init_layout's so changing the jitter draw count
    // cannot shift the annealing proposals.
    Rng rng(config.seed * 0x9e3779b97f4a7c15ULL + 1);
    double temperature = config.t0;

    for (int step = 0; step < config.steps; ++step) {
        const std::size_t idx = rng.next_index(cur.size());
        const CellPoint saved = cur[idx];
        if (rng.next_double() < config.teleport_prob) {
            cur[idx].x = domain.x_min + rng.next_double() * domain.width();
            cur[idx].y = domain.y_min + rng.next_double() * domain.height();
        } else {
            const double dx = rng.next_normal() * config.move_scale * 0.5 * domain.width();
            const double dy = rng.next_normal() * config.move_scale * 0.5 * domain.height();
            cur[idx].x = clamp(saved.x + dx, domain.x_min, domain.x_max);
            cur[idx].y = clamp(saved.y + dy, domain.y_min, domain.y_max);
        }

        const Objective cand_obj = eval.evaluate(layout_of(cur), saved.class_id);
        const double delta = cand_obj.total - cur_obj.total;
        bool accept = delta < 0.0;
        if (!accept) {
            accept = rng.next_double() < std::exp(-delta / temperature);
        }
        if (accept) {
            eval.commit();
            cur_obj = cand_obj;
            if (cur_obj.total < best_obj.total) {
                best_obj = cur_obj;
                best = cur;
            }
        } else {
            cur[idx] = saved;
        }
        trace.steps.push_back(SynthesisStep{cur_obj.total, cur_obj.l_cc, cur_obj.k_term, accept});
        temperature *= config.decay;
    }

    CellLayout raw = layout_of(best);
    CellLayout post = remove_overlaps(raw, config.min_separation);
    const Objective initial_obj = trace.initial;
    return SynthesisResult{std::move(post), std::move(raw), initial,
                           std::move(trace), initial_obj, best_obj};
}

CellLayout remove_overlaps(const CellLayout& layout, double min_separation) {
    if (min_separation < 0.0) throw ValidationError("min_separation must be >= 0");
    const double sep2 = min_separation * min_separation;
    std::vector<CellPoint> retained;
    retained.reserve(layout.size());
    for (const CellPoint& p : layout.points()) {
        bool keep = true;
        for (const CellPoint& q : retained) {
            const double dx = p.x - q.x, dy = p.y - q.y;
            if (dx * dx + dy * dy < sep2) {
                keep = false;
                break;
            }
        }
        if (keep) retained.push_back(p);
    }
    return CellLayout(std::move(retained), layout.domain(), layout.class_names());
}

}  // namespace celltopo
