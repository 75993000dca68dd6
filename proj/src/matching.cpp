#include "celltopo/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace celltopo {

namespace detail {

std::vector<int> solve_assignment(const std::vector<double>& cost, std::size_t n) {
    // Shortest augmenting path with potentials (e-maxx formulation),
    // 1-based internally with a virtual 0 row/column.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = static_cast<int>(i);
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur =
                    cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[static_cast<std::size_t>(i0)] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = static_cast<int>(j);
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[static_cast<std::size_t>(p[j])] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (std::size_t j = 1; j <= n; ++j) {
        if (p[j] > 0) row_to_col[static_cast<std::size_t>(p[j] - 1)] = static_cast<int>(j) - 1;
    }
    return row_to_col;
}

}  // namespace detail

namespace {

double vec_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void check_arity(const EnrichedPersistenceDiagram& gen, const EnrichedPersistenceDiagram& ref) {
    if (gen.size() == 0 || ref.size() == 0) return;
    if (gen.enrichments[0].k_vec.size() != ref.enrichments[0].k_vec.size() ||
        gen.enrichments[0].density_vec.size() != ref.enrichments[0].density_vec.size()) {
        throw ValidationError("enrichment arity mismatch between diagrams");
    }
}

double diagonal_cost(const PersistencePoint& p) {
    // L2 distance from (b, d) to its projection ((b+d)/2, (b+d)/2).
    return p.persistence() / std::sqrt(2.0);
}

double plane_distance(const PersistencePoint& a, const PersistencePoint& b) {
    return std::hypot(a.birth - b.birth, a.death - b.death);
}

}  // namespace

HoleMatching optimal_match(const EnrichedPersistenceDiagram& gen,
                           const EnrichedPersistenceDiagram& ref) {
    check_arity(gen, ref);
    const std::size_t n = gen.size(), m = ref.size();
    const std::size_t size = std::max(n, m);
    HoleMatching out;
    if (size == 0) return out;

    std::vector<double> cost(size * size, 0.0);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            double c;
            if (i < n && j < m) {
                c = k_distance(std::span<const double>(gen.enrichments[i].k_vec),
                               std::span<const double>(ref.enrichments[j].k_vec));
            } else if (i < n) {
                c = vec_norm(gen.enrichments[i].k_vec);
            } else if (j < m) {
                c = vec_norm(ref.enrichments[j].k_vec);
            } else {
                c = 0.0;
            }
            cost[i * size + j] = c;
        }
    }
    const std::vector<int> row_to_col = detail::solve_assignment(cost, size);
    out.pairs.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = static_cast<std::size_t>(row_to_col[i]);
        out.pairs[i].gen = i < n ? static_cast<int>(i) : kDummy;
        out.pairs[i].ref = j < m ? static_cast<int>(j) : kDummy;
        out.cost += cost[i * size + j];
    }
    return out;
}

double cell_configuration_loss(const EnrichedPersistenceDiagram& gen,
                               const EnrichedPersistenceDiagram& ref) {
    const HoleMatching match = optimal_match(gen, ref);
    double loss = 0.0;
    for (const HoleMatching::Pair& pr : match.pairs) {
        if (pr.gen != kDummy && pr.ref != kDummy) {
            loss += k_distance(
                std::span<const double>(gen.enrichments[static_cast<std::size_t>(pr.gen)].density_vec),
                std::span<const double>(ref.enrichments[static_cast<std::size_t>(pr.ref)].density_vec));
        } else if (pr.gen != kDummy) {
            loss += vec_norm(gen.enrichments[static_cast<std::size_t>(pr.gen)].density_vec);
        } else if (pr.ref != kDummy) {
            loss += vec_norm(ref.enrichments[static_cast<std::size_t>(pr.ref)].density_vec);
        }
    }
    return loss;
}

double pd_emd(const EnrichedPersistenceDiagram& gen, const EnrichedPersistenceDiagram& ref) {
    const std::size_t n = gen.size(), m = ref.size();
    const std::size_t size = n + m;
    if (size == 0) return 0.0;
    // Each diagram point may match a real partner or its diagonal
    // projection; the m+n dummy slots make the matrix square.
    std::vector<double> cost(size * size, 0.0);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            double c = 0.0;
            if (i < n && j < m) {
                c = plane_distance(gen.points[i], ref.points[j]);
            } else if (i < n) {
                c = diagonal_cost(gen.points[i]);
            } else if (j < m) {
                c = diagonal_cost(ref.points[j]);
            }
            cost[i * size + j] = c;
        }
    }
    const std::vector<int> row_to_col = detail::solve_assignment(cost, size);
    double total = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        total += cost[i * size + static_cast<std::size_t>(row_to_col[i])];
    }
    return total;
}

double pd_ccmd(const EnrichedPersistenceDiagram& gen, const EnrichedPersistenceDiagram& ref,
               std::size_t gen_class_count, std::size_t ref_class_count) {
    // Persistence distances are unreliable for very small classes and are
    // defined to be zero there.
    if (gen_class_count < 5 || ref_class_count < 5) return 0.0;
    const HoleMatching match = optimal_match(gen, ref);
    if (match.pairs.empty()) return 0.0;
    double total = 0.0;
    for (const HoleMatching::Pair& pr : match.pairs) {
        const double pg =
            pr.gen != kDummy ? gen.points[static_cast<std::size_t>(pr.gen)].persistence() : 0.0;
        const double prf =
            pr.ref != kDummy ? ref.points[static_cast<std::size_t>(pr.ref)].persistence() : 0.0;
        total += std::abs(pg - prf);
    }
    return total / static_cast<double>(match.pairs.size());
}

CrossKError cross_k_error(const CellLayout& gen, const CellLayout& ref,
                          const RadiusGrid& radii) {
    if (!gen.same_class_set(ref)) {
        throw ValidationError("cross_k_error: layouts have different class sets");
    }
    const int classes = ref.class_count();
    CrossKError out;
    out.normalization = ref.size() > 0
                            ? static_cast<double>(ref.size()) / static_cast<double>(classes)
                            : 1.0;
    for (int s = 0; s < classes; ++s) {
        std::vector<double> vg, vr;
        for (int t = 0; t < classes; ++t) {
            const KFunctionVector kg = cross_k(gen, s, t, radii);
            const KFunctionVector kr = cross_k(ref, s, t, radii);
            vg.insert(vg.end(), kg.values.begin(), kg.values.end());
            vr.insert(vr.end(), kr.values.begin(), kr.values.end());
        }
        double abs_sum = 0.0, sq_sum = 0.0;
        for (std::size_t i = 0; i < vg.size(); ++i) {
            const double d = vg[i] - vr[i];
            abs_sum += std::abs(d);
            sq_sum += d * d;
        }
        const double len = static_cast<double>(vg.size());
        out.mae.push_back(abs_sum / len / out.normalization);
        out.rmse.push_back(std::sqrt(sq_sum / len) / out.normalization);
    }
    return out;
}

MetricReport metric_report(const CellLayout& gen, const CellLayout& ref,
                           const AnalysisParams& params) {
    if (!gen.same_class_set(ref)) {
        throw ValidationError("metric_report: layouts have different class sets");
    }
    const auto gen_dgms =
        per_class_diagrams(gen, params.h, params.radii, params.sigmas, params.persistence_floor);
    const auto ref_dgms =
        per_class_diagrams(ref, params.h, params.radii, params.sigmas, params.persistence_floor);
    const CrossKError kerr = cross_k_error(gen, ref, params.radii);

    MetricReport report;
    report.class_names = ref.class_names();
    report.k_normalization = kerr.normalization;
    const int classes = ref.class_count();
    for (int c = 0; c < classes; ++c) {
        const std::size_t ci = static_cast<std::size_t>(c);
        ClassMetrics m;
        m.pd_emd = pd_emd(gen_dgms[ci], ref_dgms[ci]);
        m.pd_ccmd = pd_ccmd(gen_dgms[ci], ref_dgms[ci], gen.class_size(c), ref.class_size(c));
        m.k_mae = kerr.mae[ci];
        m.k_rmse = kerr.rmse[ci];
        report.per_class.push_back(m);
        report.mean.pd_emd += m.pd_emd;
        report.mean.pd_ccmd += m.pd_ccmd;
        report.mean.k_mae += m.k_mae;
        report.mean.k_rmse += m.k_rmse;
    }
    if (classes > 0) {
        const double n = static_cast<double>(classes);
        report.mean.pd_emd /= n;
        report.mean.pd_ccmd /= n;
        report.mean.k_mae /= n;
        report.mean.k_rmse /= n;
    }
    return report;
}

std::string metric_table(const MetricReport& report) {
    std::ostringstream os;
    const std::size_t classes = report.class_names.size();
    std::vector<std::string> headers = {"metric"};
    for (const std::string& n : report.class_names) headers.push_back(n);
    headers.push_back("mean");

    auto fmt = [](double v) {
        std::ostringstream s;
        s.precision(4);
        s << std::fixed << v;
        return s.str();
    };
    std::vector<std::vector<std::string>> rows;
    const char* names[4] = {"pd_emd", "pd_ccmd", "k_mae", "k_rmse"};
    for (int metric = 0; metric < 4; ++metric) {
        std::vector<std::string> row = {names[static_cast<std::size_t>(metric)]};
        auto pick = [metric](const ClassMetrics& m) {
            switch (metric) {
                case 0: return m.pd_emd;
                case 1: return m.pd_ccmd;
                case 2: return m.k_mae;
                default: return m.k_rmse;
            }
        };
        for (std::size_t c = 0; c < classes; ++c) row.push_back(fmt(pick(report.per_class[c])));
        row.push_back(fmt(pick(report.mean)));
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> widths(headers.size());
    for (std::size_t c = 0; c < headers.size(); ++c) {
        widths[c] = headers[c].size();
        for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
    }
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << row[c];
            if (c + 1 < row.size()) {
                os << std::string(widths[c] - row[c].size() + 2, ' ');
            }
        }
        os << '\n';
    };
    emit(headers);
    for (const auto& row : rows) emit(row);
    return os.str();
}

}  // namespace celltopo
