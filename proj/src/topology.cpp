#include "celltopo/topology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace celltopo {

namespace {

// ---------------------------------------------------------------------------
// Exact Euclidean distance transform
//
// Per grid row the squared distance to the nearest cell is the lower
// envelope of one parabola per cell: g_p(x) = (x - p.x)^2 + (p.y - y_row)^2.
// The envelope is computed Felzenszwalb-Huttenlocher style over the cells
// sorted by x (abscissae are arbitrary reals, not grid positions, so this
// stays exact for off-grid cells).
// ---------------------------------------------------------------------------

struct Parabola {
    double px;
    double off;  // (p.y - y_row)^2
};

double intersect(const Parabola& a, const Parabola& b) {
    // x-coordinate where parabola b overtakes parabola a (b.px > a.px).
    return ((b.off + b.px * b.px) - (a.off + a.px * a.px)) / (2.0 * (b.px - a.px));
}

double eval(const Parabola& p, double x) {
    const double d = x - p.px;
    return d * d + p.off;
}

std::size_t grid_nodes(double extent, double h) {
    const double n = std::ceil(extent / h - 1e-9);
    return static_cast<std::size_t>(std::max(1.0, n)) + 1;
}

// ---------------------------------------------------------------------------
// H1 persistence of the sublevel lower-star filtration
//
// Computed through the planar dual: processing thresholds downward, each
// top-dimensional cell (square) is a region of the growing complement and
// each primal edge a passage between two such regions (or to the outside).
// A union-find merge of a younger region into an older one is the birth of
// the sublevel 1-cycle at the passage value; the younger region's creation
// value is the cycle's death. Ties are resolved by a global vertex rank
// (value ascending, row-major index descending), which also makes the
// killing cell's plateau tie-break lexicographic in (row, column).
// ---------------------------------------------------------------------------

// Stable byte-radix sort of vertex indices by field value (all values are
// non-negative, so the IEEE bit pattern is order-preserving).
void sort_vertices_by_value(const std::vector<double>& values, std::vector<std::uint32_t>& order,
                            std::vector<std::uint32_t>& scratch) {
    const std::size_t n = values.size();
    order.resize(n);
    scratch.resize(n);
    // Start from descending index so equal values rank larger indices first.
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(n - 1 - i);
    std::uint32_t* src = order.data();
    std::uint32_t* dst = scratch.data();
    std::size_t counts[256];
    for (int pass = 0; pass < 8; ++pass) {
        const int shift = pass * 8;
        std::fill(std::begin(counts), std::end(counts), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t bits = std::bit_cast<std::uint64_t>(values[src[i]]);
            ++counts[(bits >> shift) & 0xff];
        }
        std::size_t total = 0;
        for (std::size_t b = 0; b < 256; ++b) {
            const std::size_t c = counts[b];
            counts[b] = total;
            total += c;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t bits = std::bit_cast<std::uint64_t>(values[src[i]]);
            dst[counts[(bits >> shift) & 0xff]++] = src[i];
        }
        std::swap(src, dst);
    }
    if (src != order.data()) order.assign(src, src + n);
}

// The outside of the grid is slot n_squares: a dual node that exists from
// the start and is older than everything, so regions opening to it never
// survive a merge.
struct DualForest {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> crank;        // creation rank of root
    std::vector<std::uint32_t> cseq;         // creation sequence of root
    std::vector<std::uint32_t> cvertex;      // creation (max-rank) vertex of root
    std::uint32_t outer = 0;

    void init(std::size_t n_squares) {
        outer = static_cast<std::uint32_t>(n_squares);
        parent.assign(n_squares + 1, 0);
        crank.assign(n_squares + 1, 0);
        cseq.assign(n_squares + 1, 0);
        cvertex.assign(n_squares + 1, 0);
        parent[outer] = outer;
        crank[outer] = std::numeric_limits<std::uint32_t>::max();
        cseq[outer] = 0;
    }

    std::uint32_t find(std::uint32_t s) {
        std::uint32_t root = s;
        while (parent[root] != root) root = parent[root];
        while (parent[s] != root) {
            const std::uint32_t up = parent[s];
            parent[s] = root;
            s = up;
        }
        return root;
    }

    // True if component rooted at a was created before (is older than) b.
    bool older(std::uint32_t a, std::uint32_t b) const {
        if (crank[a] != crank[b]) return crank[a] > crank[b];
        return cseq[a] < cseq[b];
    }
};

}  // namespace

DistanceField distance_transform(const CellLayout& layout, int class_filter, double h) {
    const Rect& d = layout.domain();
    if (!(h > 0.0)) throw ValidationError("grid spacing h must be positive");
    if (h > 0.05 * d.shorter_side() + 1e-12) {
        throw ValidationError("grid spacing h must not exceed 5% of the shorter domain side");
    }

    std::vector<CellPoint> cells;
    cells.reserve(layout.size());
    for (const CellPoint& p : layout.points()) {
        if (class_filter == kAllClasses || p.class_id == class_filter) cells.push_back(p);
    }
    if (cells.empty()) {
        throw DegenerateInputError("distance transform of an empty point set");
    }
    std::sort(cells.begin(), cells.end(), [](const CellPoint& a, const CellPoint& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });

    DistanceField f;
    f.rows = grid_nodes(d.height(), h);
    f.cols = grid_nodes(d.width(), h);
    f.x0 = d.x_min;
    f.y0 = d.y_min;
    f.dx = d.width() / static_cast<double>(f.cols - 1);
    f.dy = d.height() / static_cast<double>(f.rows - 1);
    f.h = h;
    f.values.resize(f.rows * f.cols);

    std::vector<Parabola> par;
    par.reserve(cells.size());
    std::vector<int> env(cells.size());
    std::vector<double> breaks(cells.size() + 1);

    for (std::size_t i = 0; i < f.rows; ++i) {
        const double y = f.node_y(i);
        // One parabola per distinct x; duplicates keep the closest-in-y cell.
        par.clear();
        for (const CellPoint& c : cells) {
            const double off = (c.y - y) * (c.y - y);
            if (!par.empty() && par.back().px == c.x) {
                if (off < par.back().off) par.back().off = off;
            } else {
                par.push_back(Parabola{c.x, off});
            }
        }
        int k = 0;
        env[0] = 0;
        breaks[0] = -std::numeric_limits<double>::infinity();
        breaks[1] = std::numeric_limits<double>::infinity();
        for (std::size_t q = 1; q < par.size(); ++q) {
            double s = intersect(par[static_cast<std::size_t>(env[k])], par[q]);
            while (s <= breaks[k]) {
                --k;
                s = intersect(par[static_cast<std::size_t>(env[k])], par[q]);
            }
            ++k;
            env[k] = static_cast<int>(q);
            breaks[k] = s;
            breaks[k + 1] = std::numeric_limits<double>::infinity();
        }

        double* row = f.values.data() + i * f.cols;
        int seg = 0;
        for (std::size_t j = 0; j < f.cols; ++j) {
            const double x = f.node_x(j);
            while (breaks[seg + 1] < x) ++seg;
            // Also probe the neighboring envelope segments: a break position
            // is itself a rounded quantity, and the winner at a node within
            // one ulp of a break may sit on either side.
            double best = eval(par[static_cast<std::size_t>(env[seg])], x);
            if (seg > 0) best = std::min(best, eval(par[static_cast<std::size_t>(env[seg - 1])], x));
            if (seg < k) best = std::min(best, eval(par[static_cast<std::size_t>(env[seg + 1])], x));
            row[j] = std::sqrt(best);
        }
    }
    return f;
}

std::vector<PersistencePoint> persistence_h1(const DistanceField& field,
                                             double persistence_floor) {
    if (persistence_floor < 0.0) persistence_floor = 2.0 * field.h;
    std::vector<PersistencePoint> out;
    const std::size_t rows = field.rows, cols = field.cols;
    if (rows < 2 || cols < 2) return out;

    std::vector<std::uint32_t> order, scratch;
    sort_vertices_by_value(field.values, order, scratch);
    std::vector<std::uint32_t>& rank = scratch;  // reuse
    rank.resize(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<std::uint32_t>(r);

    const std::size_t sq_rows = rows - 1, sq_cols = cols - 1;
    const std::size_t n_squares = sq_rows * sq_cols;
    const std::size_t n_hedges = rows * sq_cols;    // horizontal: (i,j)-(i,j+1)
    const std::size_t n_vedges = sq_rows * cols;    // vertical:   (i,j)-(i+1,j)
    const std::size_t n_cells = n_squares + n_hedges + n_vedges;

    // Cell records: rank = max vertex rank; vertex = the max-rank vertex.
    std::vector<std::uint32_t> cell_rank(n_cells), cell_vertex(n_cells);
    auto vmax = [&rank](std::uint32_t a, std::uint32_t b) { return rank[a] > rank[b] ? a : b; };

    for (std::size_t i = 0; i < sq_rows; ++i) {
        for (std::size_t j = 0; j < sq_cols; ++j) {
            const std::uint32_t v00 = static_cast<std::uint32_t>(i * cols + j);
            const std::uint32_t v = vmax(vmax(v00, v00 + 1),
                                         vmax(v00 + static_cast<std::uint32_t>(cols),
                                              v00 + static_cast<std::uint32_t>(cols) + 1));
            const std::size_t s = i * sq_cols + j;
            cell_rank[s] = rank[v];
            cell_vertex[s] = v;
        }
    }
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < sq_cols; ++j) {
            const std::uint32_t v0 = static_cast<std::uint32_t>(i * cols + j);
            const std::uint32_t v = vmax(v0, v0 + 1);
            const std::size_t e = n_squares + i * sq_cols + j;
            cell_rank[e] = rank[v];
            cell_vertex[e] = v;
        }
    }
    for (std::size_t i = 0; i < sq_rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const std::uint32_t v0 = static_cast<std::uint32_t>(i * cols + j);
            const std::uint32_t v = vmax(v0, v0 + static_cast<std::uint32_t>(cols));
            const std::size_t e = n_squares + n_hedges + i * cols + j;
            cell_rank[e] = rank[v];
            cell_vertex[e] = v;
        }
    }

    // Counting sort by rank, descending; within a rank the square (the
    // region) must be created before the edges (passages) that touch it,
    // which the square-first input order guarantees.
    const std::size_t n_ranks = rows * cols;
    std::vector<std::uint32_t> bucket_start(n_ranks + 1, 0);
    for (std::size_t c = 0; c < n_cells; ++c) ++bucket_start[n_ranks - 1 - cell_rank[c]];
    std::uint32_t acc = 0;
    for (std::size_t b = 0; b <= n_ranks; ++b) {
        const std::uint32_t cnt = bucket_start[b];
        bucket_start[b] = acc;
        acc += cnt;
    }
    std::vector<std::uint32_t> sorted(n_cells);
    for (std::size_t c = 0; c < n_cells; ++c) {
        sorted[bucket_start[n_ranks - 1 - cell_rank[c]]++] = static_cast<std::uint32_t>(c);
    }

    DualForest forest;
    forest.init(n_squares);
    std::uint32_t seq = 0;

    const std::uint32_t outer = forest.outer;
    auto edge_neighbors = [&](std::size_t e, std::uint32_t& a, std::uint32_t& b) {
        if (e < n_hedges) {  // horizontal edge at (i, j)
            const std::size_t i = e / sq_cols, j = e % sq_cols;
            a = (i > 0) ? static_cast<std::uint32_t>((i - 1) * sq_cols + j) : outer;
            b = (i < sq_rows) ? static_cast<std::uint32_t>(i * sq_cols + j) : outer;
        } else {  // vertical edge at (i, j)
            const std::size_t r = e - n_hedges;
            const std::size_t i = r / cols, j = r % cols;
            a = (j > 0) ? static_cast<std::uint32_t>(i * sq_cols + (j - 1)) : outer;
            b = (j < sq_cols) ? static_cast<std::uint32_t>(i * sq_cols + j) : outer;
        }
    };

    for (std::uint32_t c : sorted) {
        if (c < n_squares) {
            forest.parent[c] = c;
            forest.crank[c] = cell_rank[c];
            forest.cseq[c] = seq++;
            forest.cvertex[c] = cell_vertex[c];
            continue;
        }
        ++seq;
        std::uint32_t a, b;
        edge_neighbors(c - n_squares, a, b);
        const std::uint32_t ra = forest.find(a);
        const std::uint32_t rb = forest.find(b);
        if (ra == rb) continue;
        const bool a_older = forest.older(ra, rb);
        const std::uint32_t young = a_older ? rb : ra;
        const std::uint32_t old_root = a_older ? ra : rb;

        const double birth = field.values[cell_vertex[c]];
        const double death = field.values[forest.cvertex[young]];
        if (death - birth > persistence_floor) {
            const std::uint32_t v = forest.cvertex[young];
            out.push_back(PersistencePoint{birth, death, field.node_x(v % cols),
                                           field.node_y(v / cols)});
        }
        forest.parent[young] = old_root;
    }

    std::sort(out.begin(), out.end(), [](const PersistencePoint& a, const PersistencePoint& b) {
        const double pa = a.persistence(), pb = b.persistence();
        if (pa != pb) return pa > pb;
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.cy != b.cy) return a.cy < b.cy;
        return a.cx < b.cx;
    });
    return out;
}

EnrichedPersistenceDiagram enrich_diagram(std::vector<PersistencePoint> points, int class_id,
                                          const CellLayout& layout, const RadiusGrid& radii,
                                          const BandwidthSet& sigmas) {
    std::sort(points.begin(), points.end(),
              [](const PersistencePoint& a, const PersistencePoint& b) {
                  const double pa = a.persistence(), pb = b.persistence();
                  if (pa != pb) return pa > pb;
                  if (a.birth != b.birth) return a.birth < b.birth;
                  if (a.cy != b.cy) return a.cy < b.cy;
                  return a.cx < b.cx;
              });
    EnrichedPersistenceDiagram dgm;
    dgm.class_id = class_id;
    dgm.points = std::move(points);
    dgm.enrichments.reserve(dgm.points.size());
    for (const PersistencePoint& p : dgm.points) {
        HoleEnrichment e;
        e.k_vec.reserve(static_cast<std::size_t>(layout.class_count()) * radii.size());
        for (int t = 0; t < layout.class_count(); ++t) {
            const KFunctionVector k = location_k(layout, p.cx, p.cy, t, radii);
            e.k_vec.insert(e.k_vec.end(), k.values.begin(), k.values.end());
        }
        e.density_vec = multiscale_density(layout, p.cx, p.cy, kAllClasses, sigmas).values;
        dgm.enrichments.push_back(std::move(e));
    }
    return dgm;
}

std::vector<EnrichedPersistenceDiagram> per_class_diagrams(const CellLayout& layout, double h,
                                                           const RadiusGrid& radii,
                                                           const BandwidthSet& sigmas,
                                                           double persistence_floor) {
    std::vector<EnrichedPersistenceDiagram> out;
    out.reserve(static_cast<std::size_t>(layout.class_count()));
    for (int c = 0; c < layout.class_count(); ++c) {
        if (layout.class_size(c) == 0) {
            EnrichedPersistenceDiagram empty;
            empty.class_id = c;
            out.push_back(std::move(empty));
            continue;
        }
        const DistanceField f = distance_transform(layout, c, h);
        out.push_back(enrich_diagram(persistence_h1(f, persistence_floor), c, layout, radii,
                                     sigmas));
    }
    return out;
}

EnrichedPersistenceDiagram union_diagram(const CellLayout& layout, double h,
                                         const RadiusGrid& radii, const BandwidthSet& sigmas,
                                         double persistence_floor) {
    if (layout.size() == 0) {
        EnrichedPersistenceDiagram empty;
        empty.class_id = kAllClasses;
        return empty;
    }
    const DistanceField f = distance_transform(layout, kAllClasses, h);
    return enrich_diagram(persistence_h1(f, persistence_floor), kAllClasses, layout, radii,
                          sigmas);
}

DiagramFeature vectorize_diagram(const EnrichedPersistenceDiagram& diagram,
                                 const std::vector<double>& bucket_bounds) {
    if (bucket_bounds.empty() || bucket_bounds.front() != 0.0) {
        throw ValidationError("bucket boundaries must start at 0");
    }
    for (std::size_t i = 1; i < bucket_bounds.size(); ++i) {
        if (!(bucket_bounds[i] > bucket_bounds[i - 1])) {
            throw ValidationError("bucket boundaries must be strictly increasing");
        }
    }
    std::vector<std::size_t> counts(bucket_bounds.size(), 0);
    for (const PersistencePoint& p : diagram.points) {
        const std::size_t idx = static_cast<std::size_t>(
            std::upper_bound(bucket_bounds.begin(), bucket_bounds.end(), p.persistence()) -
            bucket_bounds.begin());
        ++counts[idx - 1];
    }
    DiagramFeature f;
    f.log_histogram.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        f.log_histogram[i] = std::log1p(static_cast<double>(counts[i]));
    }
    return f;
}

}  // namespace celltopo
