#include "flatvis/transform_vr.hpp"

#include "flatvis/validate.hpp"

#include <algorithm>
#include <map>

namespace flatvis {

WidthBoundTable width_bound_table(std::size_t n, const BigInt &h) {
    if (n < 2) throw std::invalid_argument("width_bound_table: n must be >= 2");
    if (h < 3) throw std::invalid_argument("width_bound_table: recurrence needs h >= 3");
    WidthBoundTable t;
    t.h = h;
    t.W.assign(n + 1, 0);
    t.Wp.assign(n + 1, 0);
    for (std::size_t i = 3; i <= n; ++i) {
        t.Wp[i] = 1 + (h - 2) * t.Wp[i - 1];
        t.W[i] = 1 + (h - 1) * t.Wp[i - 1];
    }
    return t;
}

BigInt wprime_closed_form(std::size_t i, const BigInt &h) {
    BigInt sum = 0, pow = 1;
    if (i < 3) return 0;
    for (std::size_t k = 0; k + 3 <= i; ++k) {
        sum += pow;
        pow *= (h - 2);
    }
    return sum;
}

StraightLineDrawing vr_to_straightline(const FlatVisibilityRep &vr, PlacementResult *trace_out,
                                       bool normalize_x) {
    if (!vr.all_flat()) throw XformError("flat VR required");

    LayeredInstance inst;
    inst.items.reserve(vr.graph.n);
    for (std::size_t v = 0; v < vr.graph.n; ++v)
        inst.items.push_back({Rational(vr.box[v].xl), vr.box[v].y});
    inst.edges = vr.graph.edges;

    PlacementResult res = place_layered(inst);

    StraightLineDrawing out;
    out.graph = vr.graph;
    out.pos.resize(vr.graph.n);
    BigInt minx = res.x.empty() ? BigInt(0) : res.x[0];
    for (auto &x : res.x) minx = std::min(minx, x);
    BigInt shift = normalize_x ? BigInt(1 - minx) : BigInt(0);
    for (std::size_t v = 0; v < vr.graph.n; ++v)
        out.pos[v] = GridPoint{res.x[v] + shift, vr.box[v].y};
    if (trace_out) *trace_out = std::move(res);
    return out;
}

namespace {

// One edge of the orthogonal input, reduced to its chain of layer items:
// vertex - (bends and row crossings) - vertex, with the input direction of
// every gap so straight runs can be recovered after placement.
struct Chain {
    std::vector<std::size_t> items;
    std::vector<char> gap_dir; // 'v' or 'h' per consecutive pair
};

std::vector<GridPoint> merge_collinear(const std::vector<GridPoint> &pts) {
    std::vector<GridPoint> out;
    for (auto &p : pts) {
        while (out.size() >= 2) {
            const GridPoint &a = out[out.size() - 2], &b = out.back();
            bool v1 = a.x == b.x, v2 = b.x == p.x;
            bool h1 = a.y == b.y, h2 = b.y == p.y;
            if ((v1 && v2) || (h1 && h2)) out.pop_back();
            else break;
        }
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    }
    return out;
}

// Keeps only points where the path genuinely turns (any slope).
std::vector<GridPoint> drop_straight_points(const std::vector<GridPoint> &pts) {
    std::vector<GridPoint> slim;
    for (auto &p : pts) {
        while (slim.size() >= 2) {
            const GridPoint &a = slim[slim.size() - 2], &b = slim.back();
            Point pa = make_point(a.x, a.y), pb = make_point(b.x, b.y), pc = make_point(p.x, p.y);
            if (orientation(pa, pb, pc) == 0 &&
                ((pa.x <= pb.x && pb.x <= pc.x) || (pa.x >= pb.x && pb.x >= pc.x)) &&
                ((pa.y <= pb.y && pb.y <= pc.y) || (pa.y >= pb.y && pb.y >= pc.y)))
                slim.pop_back();
            else break;
        }
        slim.push_back(p);
    }
    return slim;
}

} // namespace

namespace {

// Primary od->pl strategy: keep every route where it is, collapse each box
// onto one of its attachment columns, and pivot only the end segments of
// the routes onto the vertex points. Bends land exactly on the input's
// bends and every column already existed, so width and bend count can only
// shrink; the pivoted segments sweep box space plus the triangles between
// sibling stubs, which is usually empty but is verified exactly.
std::optional<PolylineDrawing> column_faithful_polyline(const FlatOrthogonalDrawing &od) {
    const Graph &g = od.graph;
    std::vector<std::optional<BigInt>> gamma(g.n);
    std::vector<std::vector<GridPoint>> routes(g.m());
    for (std::size_t e = 0; e < g.m(); ++e) {
        routes[e] = merge_collinear(od.route[e]);
        if (routes[e].size() == 1) routes[e].push_back(routes[e][0]);
        auto [u, v] = g.edges[e];
        auto claim = [&](VertexId w, const GridPoint &att) {
            if (!gamma[w] || att.x < *gamma[w]) gamma[w] = att.x;
        };
        claim(u, routes[e].front());
        claim(v, routes[e].back());
    }

    PolylineDrawing pl;
    pl.graph = g;
    pl.pos.resize(g.n);
    for (std::size_t v = 0; v < g.n; ++v)
        pl.pos[v] = GridPoint{gamma[v] ? *gamma[v] : od.box[v].xl, od.box[v].y};
    pl.bends.resize(g.m());
    for (std::size_t e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        std::vector<GridPoint> pts = routes[e];
        pts.front() = pl.pos[u];
        pts.back() = pl.pos[v];
        pts = merge_collinear(pts);
        if (pts.size() < 2 || pts.front() == pts.back()) return std::nullopt;
        pl.bends[e].assign(pts.begin() + 1, pts.end() - 1);
    }
    if (!check_planar_serial(Drawing(pl)).ok) return std::nullopt;
    return pl;
}

void normalize_x_polyline(PolylineDrawing &pl) {
    auto pts = defining_points(Drawing(pl));
    if (pts.empty()) return;
    BigInt minx = pts[0].x;
    for (auto &p : pts) minx = std::min(minx, p.x);
    BigInt shift = 1 - minx;
    for (auto &p : pl.pos) p.x += shift;
    for (auto &bl : pl.bends)
        for (auto &p : bl) p.x += shift;
}

} // namespace

namespace {

// Second od->pl strategy: subdivide only at bends and let the placement
// engine draw every straight run of the route as one segment. Bend count
// cannot grow; the tangent bounds may cost width, so the caller checks it.
std::optional<PolylineDrawing> run_engine_polyline(const FlatOrthogonalDrawing &od,
                                                   const BigInt &max_width) {
    const Graph &g = od.graph;
    LayeredInstance inst;
    for (std::size_t v = 0; v < g.n; ++v)
        inst.items.push_back({Rational(od.box[v].xl), od.box[v].y});
    std::vector<std::vector<std::size_t>> chain(g.m());
    for (std::size_t e = 0; e < g.m(); ++e) {
        auto pts = merge_collinear(od.route[e]);
        chain[e].push_back(g.edges[e].first);
        for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
            inst.items.push_back({Rational(pts[k].x), pts[k].y});
            chain[e].push_back(inst.items.size() - 1);
        }
        chain[e].push_back(g.edges[e].second);
        for (std::size_t k = 0; k + 1 < chain[e].size(); ++k)
            inst.edges.emplace_back(chain[e][k], chain[e][k + 1]);
    }
    PlacementResult res;
    try {
        res = place_layered(inst);
    } catch (const XformError &) {
        return std::nullopt;
    }

    PolylineDrawing pl;
    pl.graph = g;
    pl.pos.resize(g.n);
    for (std::size_t v = 0; v < g.n; ++v)
        pl.pos[v] = GridPoint{res.x[v], od.box[v].y};
    pl.bends.resize(g.m());
    for (std::size_t e = 0; e < g.m(); ++e) {
        std::vector<GridPoint> pts;
        for (std::size_t it : chain[e]) pts.push_back(GridPoint{res.x[it], inst.items[it].row});
        pts = drop_straight_points(pts); // a bend may straighten out
        pl.bends[e].assign(pts.begin() + 1, pts.end() - 1);
    }
    if (metrics(Drawing(pl)).width > max_width) return std::nullopt;
    return pl;
}

} // namespace

PolylineDrawing ortho_to_polyline(const FlatOrthogonalDrawing &od, bool normalize_x) {
    for (auto &b : od.box)
        if (!b.flat()) throw XformError("flat orthogonal drawing required");

    if (auto cf = column_faithful_polyline(od)) {
        if (normalize_x) normalize_x_polyline(*cf);
        return *cf;
    }
    if (auto re = run_engine_polyline(od, metrics(Drawing(od)).width)) {
        if (normalize_x) normalize_x_polyline(*re);
        return *re;
    }

    const Graph &g = od.graph;
    LayeredInstance inst;
    for (std::size_t v = 0; v < g.n; ++v)
        inst.items.push_back({Rational(od.box[v].xl), od.box[v].y});

    std::vector<Chain> chains(g.m());
    std::vector<bool> is_bend_item; // per item, vertices are never bends
    is_bend_item.assign(g.n, false);

    for (std::size_t e = 0; e < g.m(); ++e) {
        auto [u, w] = g.edges[e];
        Chain ch;
        ch.items.push_back(u);
        std::vector<GridPoint> pts = merge_collinear(od.route[e]);
        if (pts.size() == 1) pts.push_back(pts[0]); // degenerate touch

        // Interior walk: every point except the two attachments becomes a
        // bend item; vertical gaps gain a crossing item per interior row.
        auto push_item = [&](const GridPoint &p, bool bend) {
            inst.items.push_back({Rational(p.x), p.y});
            is_bend_item.push_back(bend);
            return inst.items.size() - 1;
        };
        GridPoint prev = pts.front();
        auto emit_gap = [&](const GridPoint &from, const GridPoint &to, std::size_t to_item) {
            char dir = from.x == to.x && from.y != to.y ? 'v' : 'h';
            if (dir == 'v') {
                BigInt step = from.y < to.y ? 1 : -1;
                for (BigInt r = from.y + step; r != to.y; r += step) {
                    std::size_t c = push_item(GridPoint{from.x, r}, false);
                    ch.items.push_back(c);
                    ch.gap_dir.push_back('v');
                }
            }
            ch.items.push_back(to_item);
            ch.gap_dir.push_back(dir);
        };
        for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
            std::size_t it = push_item(pts[k], true);
            emit_gap(prev, pts[k], it);
            prev = pts[k];
        }
        emit_gap(prev, pts.back(), w);
        chains[e] = std::move(ch);
    }

    for (auto &ch : chains)
        for (std::size_t k = 0; k + 1 < ch.items.size(); ++k)
            inst.edges.emplace_back(ch.items[k], ch.items[k + 1]);

    PlacementResult res = place_layered(inst);
    auto item_pt = [&](std::size_t it) { return GridPoint{res.x[it], inst.items[it].row}; };

    // Straight runs of the input: maximal same-direction stretches of each
    // chain. Interior items of a vertical run are the inserted crossings.
    struct Run {
        std::size_t edge, lo, hi; // chain index range [lo, hi]
    };
    std::vector<Run> runs;
    for (std::size_t e = 0; e < g.m(); ++e) {
        auto &ch = chains[e];
        std::size_t start = 0;
        for (std::size_t k = 1; k < ch.gap_dir.size() + 1; ++k) {
            bool boundary = k == ch.gap_dir.size() || ch.gap_dir[k] != ch.gap_dir[k - 1] ||
                            is_bend_item[ch.items[k]];
            if (boundary) {
                if (k - start >= 2) runs.push_back({e, start, k});
                start = k;
            }
        }
    }

    // keep[e][k]: chain item k survives into the output polyline.
    std::vector<std::vector<bool>> keep(g.m());
    for (std::size_t e = 0; e < g.m(); ++e) keep[e].assign(chains[e].items.size(), true);

    auto assemble = [&]() {
        PolylineDrawing pl;
        pl.graph = g;
        pl.pos.resize(g.n);
        for (std::size_t v = 0; v < g.n; ++v) pl.pos[v] = item_pt(v);
        pl.bends.resize(g.m());
        for (std::size_t e = 0; e < g.m(); ++e) {
            std::vector<GridPoint> pts;
            auto &ch = chains[e];
            for (std::size_t k = 0; k < ch.items.size(); ++k)
                if (keep[e][k]) pts.push_back(item_pt(ch.items[k]));
            // only genuine turns stay as bends
            std::vector<GridPoint> slim = drop_straight_points(pts);
            pl.bends[e].assign(slim.begin() + 1, slim.end() - 1);
        }
        return pl;
    };

    // Try dropping all run interiors at once (bend-free runs), then retreat
    // to per-run straightening wherever that crosses something.
    for (auto &r : runs)
        for (std::size_t k = r.lo + 1; k < r.hi; ++k) keep[r.edge][k] = false;
    PolylineDrawing candidate = assemble();
    if (!check_planar_serial(Drawing(candidate)).ok) {
        for (auto &r : runs)
            for (std::size_t k = r.lo + 1; k < r.hi; ++k) keep[r.edge][k] = true;
        for (auto &r : runs) {
            for (std::size_t k = r.lo + 1; k < r.hi; ++k) keep[r.edge][k] = false;
            if (!check_planar_serial(Drawing(assemble())).ok)
                for (std::size_t k = r.lo + 1; k < r.hi; ++k) keep[r.edge][k] = true;
        }
        candidate = assemble();
    }

    if (normalize_x) normalize_x_polyline(candidate);
    return candidate;
}

} // namespace flatvis
