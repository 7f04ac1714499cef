#include "flatvis/generate.hpp"

#include "flatvis/errors.hpp"
#include "flatvis/geometry.hpp"
#include "flatvis/transform_ortho.hpp"
#include "flatvis/transform_vr.hpp"
#include "flatvis/validate.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace flatvis {

namespace {

// mt19937_64 output is pinned by the standard; modulo keeps us off the
// implementation-defined distributions so files reproduce everywhere.
std::uint64_t rand_below(std::mt19937_64 &rng, std::uint64_t k) { return rng() % k; }

long h_as_long(const BigInt &h) {
    if (h < 1 || h > 1000000) throw std::invalid_argument("unreasonable height");
    return static_cast<long>(h.get_si());
}

std::vector<GridPoint> random_points(std::mt19937_64 &rng, std::size_t n, long h) {
    const long xspan = std::max<long>(4, static_cast<long>(2 * n));
    if (static_cast<unsigned long long>(xspan) * h < n)
        throw std::invalid_argument("cannot place n distinct points in the grid");
    std::set<std::pair<long, long>> used;
    std::vector<GridPoint> pts;
    while (pts.size() < n) {
        long x = static_cast<long>(rand_below(rng, xspan)) + 1;
        long y = static_cast<long>(rand_below(rng, h)) + 1;
        if (used.insert({x, y}).second) pts.push_back(GridPoint{x, y});
    }
    return pts;
}

// Exact incremental planarity: may edge (u,v) join the drawing?
bool edge_fits(const std::vector<GridPoint> &pos,
               const std::vector<std::pair<VertexId, VertexId>> &edges, VertexId u, VertexId v) {
    Segment cand{make_point(pos[u].x, pos[u].y), make_point(pos[v].x, pos[v].y)};
    for (std::size_t w = 0; w < pos.size(); ++w) {
        if (w == u || w == v) continue;
        if (point_on_segment(make_point(pos[w].x, pos[w].y), cand)) return false;
    }
    for (auto &[a, b] : edges) {
        Segment s{make_point(pos[a].x, pos[a].y), make_point(pos[b].x, pos[b].y)};
        IntersectionKind k = segments_intersect(cand, s);
        if (k == IntersectionKind::None) continue;
        if (k == IntersectionKind::EndpointShared && (a == u || a == v || b == u || b == v))
            continue;
        return false;
    }
    return true;
}

std::vector<std::pair<VertexId, VertexId>> shuffled_pairs(std::mt19937_64 &rng, std::size_t n,
                                                          bool ordered_by_y,
                                                          const std::vector<GridPoint> &pos) {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) {
            if (ordered_by_y) {
                if (pos[u].y == pos[v].y) continue; // upward edges need distinct rows
                if (pos[u].y < pos[v].y) pairs.emplace_back(u, v);
                else pairs.emplace_back(v, u);
            } else {
                pairs.emplace_back(u, v);
            }
        }
    for (std::size_t i = pairs.size(); i > 1; --i)
        std::swap(pairs[i - 1], pairs[rand_below(rng, i)]);
    return pairs;
}

StraightLineDrawing gen_straightline_impl(const GenConfig &cfg, bool upward) {
    if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
    const long h = h_as_long(cfg.h);
    std::mt19937_64 rng(cfg.seed);

    const std::size_t want_m =
        cfg.target_m ? cfg.target_m
                     : (cfg.n >= 3 ? std::min<std::size_t>(2 * cfg.n, 3 * cfg.n - 6) : cfg.n - 1 + (cfg.n == 1 ? 1 : 0));

    for (int attempt = 0; attempt < 64; ++attempt) {
        StraightLineDrawing sl;
        sl.graph.n = cfg.n;
        sl.graph.directed = upward;
        sl.pos = random_points(rng, cfg.n, h);
        for (auto &[u, v] : shuffled_pairs(rng, cfg.n, upward, sl.pos)) {
            if (sl.graph.m() >= want_m) break;
            if (edge_fits(sl.pos, sl.graph.edges, u, v)) sl.graph.edges.emplace_back(u, v);
        }
        if (cfg.require_connected && !sl.graph.connected()) {
            // top up with any fitting edge that merges components
            for (auto &[u, v] : shuffled_pairs(rng, cfg.n, upward, sl.pos)) {
                if (sl.graph.connected()) break;
                bool present = false;
                for (auto &[a, b] : sl.graph.edges)
                    if ((a == u && b == v) || (a == v && b == u)) present = true;
                if (!present && edge_fits(sl.pos, sl.graph.edges, u, v))
                    sl.graph.edges.emplace_back(u, v);
            }
            if (!sl.graph.connected()) continue; // reshuffle the layout
        }
        return sl;
    }
    throw XformError("generator could not produce a connected instance", true);
}

} // namespace

StraightLineDrawing gen_random_straightline(const GenConfig &cfg) {
    return gen_straightline_impl(cfg, false);
}

StraightLineDrawing gen_random_upward(const GenConfig &cfg) {
    if (h_as_long(cfg.h) < 2 && cfg.n > 1)
        throw std::invalid_argument("upward drawings need at least two rows");
    return gen_straightline_impl(cfg, true);
}

PolylineDrawing gen_random_polyline(const GenConfig &cfg) {
    StraightLineDrawing sl = gen_random_straightline(cfg);
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);

    PolylineDrawing pl;
    pl.graph = sl.graph;
    pl.pos = sl.pos;
    pl.bends.assign(sl.graph.m(), {});

    // Rebuild each edge with one bend when the detour stays planar. Bends
    // keep the edge y-monotone so the drawing can enter the full pipeline.
    for (std::size_t e = 0; e < pl.graph.m(); ++e) {
        if (rand_below(rng, 3) != 0) continue;
        auto [u, v] = pl.graph.edges[e];
        const GridPoint &a = pl.pos[u], &b = pl.pos[v];
        GridPoint mid{(a.x + b.x) / 2 + BigInt(static_cast<long>(rand_below(rng, 5)) - 2),
                      (a.y + b.y) / 2};
        BigInt ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
        mid.y += BigInt(static_cast<long>(rand_below(rng, 3)) - 1);
        mid.y = std::max(ylo, std::min(yhi, mid.y));
        if (mid == a || mid == b) continue;

        PolylineDrawing candidate = pl;
        candidate.bends[e] = {mid};
        bool points_clash = false;
        for (auto &p : pl.pos)
            if (p == mid) points_clash = true;
        if (points_clash) continue;
        if (check_planar_serial(Drawing(candidate)).ok) pl = std::move(candidate);
    }
    return pl;
}

FlatOrthogonalDrawing gen_random_flat_ortho(const GenConfig &cfg) {
    PolylineDrawing pl;
    StraightLineDrawing sl = gen_random_straightline(cfg);
    pl.graph = sl.graph;
    pl.pos = sl.pos;
    pl.bends.assign(sl.graph.m(), {});
    return poly_to_ortho(pl);
}

FlatVisibilityRep gen_random_flat_vr(const GenConfig &cfg) {
    return ortho_to_vr(gen_random_flat_ortho(cfg));
}

FlatVisibilityRep gen_exponential_family(std::size_t n, const BigInt &h, bool certify) {
    if (n < 5) throw std::invalid_argument("exponential family needs n >= 5");
    if (h < 4) throw std::invalid_argument("exponential family needs h >= 4");

    // Two full-width pivot boxes on the extreme rows joined by a vertical
    // edge in column 0; a chain of single-column boxes alternating between
    // rows 2 and h-1. Chain vertex i (processing order) hangs from the
    // opposite pivot, and the previous chain vertex is the tangency
    // obstacle one row off that pivot, which forces x(i) = 1+(h-2)x(i-1).
    FlatVisibilityRep vr;
    vr.graph.n = n;
    vr.box.resize(n);
    const BigInt wmax = BigInt(n) - 2;
    vr.box[0] = Box{1, 0, wmax, 1};     // bottom pivot
    vr.box[1] = Box{h, 0, wmax, h};     // top pivot
    vr.graph.edges.emplace_back(0, 1);
    vr.seg.push_back(VSeg{0, 1, h});
    for (std::size_t k = 2; k < n; ++k) {
        bool low = (k % 2) == 0; // row 2 hangs from the top pivot
        BigInt row = low ? BigInt(2) : h - 1;
        BigInt col = BigInt(k) - 1;
        vr.box[k] = Box{row, col, col, row};
        if (low) {
            vr.graph.edges.emplace_back(1, k);
            vr.seg.push_back(VSeg{col, h, row});
        } else {
            vr.graph.edges.emplace_back(0, k);
            vr.seg.push_back(VSeg{col, 1, row});
        }
    }

    if (certify) {
        PlacementResult trace;
        (void)vr_to_straightline(vr, &trace, false);
        for (std::size_t i = 3; i <= n; ++i) {
            const auto &entry = trace.order[i - 1];
            if (entry.x != wprime_closed_form(i, h))
                throw XformError("internal: exponential family certification failed", true);
        }
    }
    return vr;
}

} // namespace flatvis
