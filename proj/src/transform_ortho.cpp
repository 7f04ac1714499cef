#include "flatvis/transform_ortho.hpp"

#include "flatvis/geometry.hpp"
#include "flatvis/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace flatvis {

namespace {

// Transformation-internal drawing: rational coordinates so channel-routing
// tracks can sit between rows mid-algorithm.
struct WBox {
    Rational y, xl, xr;
};
struct Work {
    std::vector<WBox> box;
    std::vector<std::vector<Point>> route; // per (pseudo-)edge
};

std::vector<Point> merge_collinear_w(const std::vector<Point> &pts) {
    std::vector<Point> out;
    for (auto &p : pts) {
        while (out.size() >= 2) {
            const Point &a = out[out.size() - 2], &b = out.back();
            bool v1 = a.x == b.x, v2 = b.x == p.x;
            bool h1 = a.y == b.y, h2 = b.y == p.y;
            if ((v1 && v2) || (h1 && h2)) out.pop_back();
            else break;
        }
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    }
    return out;
}

struct WZigZag {
    std::size_t edge;
    std::size_t i; // route[i..i+3] is the V-H-V subpath
};

std::optional<WZigZag> find_zigzag_w(const Work &w) {
    for (std::size_t e = 0; e < w.route.size(); ++e) {
        const auto &r = w.route[e];
        for (std::size_t i = 0; i + 3 < r.size(); ++i) {
            bool v1 = r[i].x == r[i + 1].x && r[i].y != r[i + 1].y;
            bool h = r[i + 1].y == r[i + 2].y && r[i + 1].x != r[i + 2].x;
            bool v2 = r[i + 2].x == r[i + 3].x && r[i + 2].y != r[i + 3].y;
            if (!(v1 && h && v2)) continue;
            int d1 = sgn(r[i + 1].y - r[i].y), d2 = sgn(r[i + 3].y - r[i + 2].y);
            if (d1 == -d2) continue; // U-turn: not y-monotone, not a zig-zag
            return WZigZag{e, i};
        }
    }
    return std::nullopt;
}

void remove_zigzag_w(Work &w, const WZigZag &z) {
    auto &route = w.route[z.edge];
    const Point pin = route[z.i];          // start of incoming vertical
    const Point pa = route[z.i + 1];       // V->H bend
    const Point pb = route[z.i + 2];       // H->V bend
    const Rational rho = pa.y;
    const Rational &xa = pa.x, &xb = pb.x;
    if (xa == xb) throw XformError("degenerate zig-zag middle segment", true);

    const Rational x_lo = std::min(xa, xb), x_hi = std::max(xa, xb);
    const Rational delta = x_hi - x_lo;
    const int side_in = sgn(pin.y - rho);
    const int side_lo = (xa < xb) ? side_in : -side_in;

    auto shifts = [&](const Point &p) {
        int s = sgn(p.y - rho);
        if (s == side_lo) return p.x >= x_lo;
        if (s != 0) return p.x > x_hi;
        return p.x > x_hi; // on the cut row itself
    };
    auto apply = [&](Point &p) {
        if (shifts(p)) p.x += delta;
    };

    for (auto &b : w.box) {
        Point l{b.xl, b.y}, r{b.xr, b.y};
        apply(l);
        apply(r);
        b.xl = l.x;
        b.xr = r.x;
    }
    for (std::size_t e = 0; e < w.route.size(); ++e) {
        auto &r = w.route[e];
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (e == z.edge && (k == z.i + 1 || k == z.i + 2)) continue; // dropped below
            apply(r[k]);
        }
    }
    route.erase(route.begin() + static_cast<long>(z.i) + 1,
                route.begin() + static_cast<long>(z.i) + 3);
    route = merge_collinear_w(route);
}

Work to_work(const FlatOrthogonalDrawing &od) {
    Work w;
    for (auto &b : od.box) w.box.push_back({Rational(b.y), Rational(b.xl), Rational(b.xr)});
    for (auto &r : od.route) {
        std::vector<Point> pts;
        for (auto &p : r) pts.push_back(make_point(p.x, p.y));
        w.route.push_back(merge_collinear_w(pts));
    }
    return w;
}

FlatOrthogonalDrawing from_work(const Work &w, const Graph &g) {
    FlatOrthogonalDrawing od;
    od.graph = g;
    for (auto &b : w.box) {
        if (!is_integral(b.xl) || !is_integral(b.xr) || !is_integral(b.y))
            throw XformError("internal: non-integral coordinate left in drawing", true);
        BigInt y = rat_floor(b.y);
        od.box.push_back(Box{y, rat_floor(b.xl), rat_floor(b.xr), y});
    }
    for (auto &r : w.route) {
        std::vector<GridPoint> pts;
        for (auto &p : r) {
            if (!is_integral(p.x) || !is_integral(p.y))
                throw XformError("internal: non-integral route point left in drawing", true);
            pts.push_back(GridPoint{rat_floor(p.x), rat_floor(p.y)});
        }
        if (pts.size() == 1) pts.push_back(pts[0]);
        od.route.push_back(std::move(pts));
    }
    return od;
}

void expand_boxes_w(Work &w, const Graph &g) {
    for (std::size_t e = 0; e < w.route.size(); ++e) {
        auto &r = w.route[e];
        if (r.size() >= 3 && r[0].y == r[1].y && r[0].x != r[1].x) {
            WBox &b = w.box[g.edges[e].first];
            b.xl = std::min(b.xl, r[1].x);
            b.xr = std::max(b.xr, r[1].x);
            r.erase(r.begin());
        }
        if (r.size() >= 3 && r[r.size() - 1].y == r[r.size() - 2].y &&
            r[r.size() - 1].x != r[r.size() - 2].x) {
            WBox &b = w.box[g.edges[e].second];
            b.xl = std::min(b.xl, r[r.size() - 2].x);
            b.xr = std::max(b.xr, r[r.size() - 2].x);
            r.pop_back();
        }
    }
}

void normalize_x_ortho(FlatOrthogonalDrawing &od) {
    auto pts = defining_points(Drawing(od));
    if (pts.empty()) return;
    BigInt minx = pts[0].x;
    for (auto &p : pts) minx = std::min(minx, p.x);
    BigInt shift = 1 - minx;
    for (auto &b : od.box) { b.xl += shift; b.xr += shift; }
    for (auto &r : od.route)
        for (auto &p : r) p.x += shift;
}

void require_flat(const FlatOrthogonalDrawing &od) {
    for (auto &b : od.box)
        if (!b.flat()) throw XformError("flat orthogonal drawing required");
}

} // namespace

FlatOrthogonalDrawing expand_boxes(const FlatOrthogonalDrawing &od) {
    require_flat(od);
    if (!check_y_monotone(Drawing(od))) throw XformError("y-monotone orthogonal drawing required");
    Work w = to_work(od);
    expand_boxes_w(w, od.graph);
    return from_work(w, od.graph);
}

std::optional<ZigZag> find_zigzag(const FlatOrthogonalDrawing &od) {
    Work w = to_work(od);
    auto z = find_zigzag_w(w);
    if (!z) return std::nullopt;
    return ZigZag{z->edge, z->i + 1};
}

FlatOrthogonalDrawing remove_zigzag(const FlatOrthogonalDrawing &od, const ZigZag &z) {
    Work w = to_work(od);
    if (z.first_bend == 0 || z.edge >= w.route.size() ||
        z.first_bend + 2 >= w.route[z.edge].size())
        throw XformError("not a zig-zag");
    WZigZag wz{z.edge, z.first_bend - 1};
    const auto &r = w.route[z.edge];
    std::size_t i = wz.i;
    bool v1 = r[i].x == r[i + 1].x && r[i].y != r[i + 1].y;
    bool h = r[i + 1].y == r[i + 2].y && r[i + 1].x != r[i + 2].x;
    bool v2 = r[i + 2].x == r[i + 3].x && r[i + 2].y != r[i + 3].y;
    if (!(v1 && h && v2) || sgn(r[i + 1].y - r[i].y) != sgn(r[i + 3].y - r[i + 2].y))
        throw XformError("not a zig-zag");
    remove_zigzag_w(w, wz);
    return from_work(w, od.graph);
}

FlatVisibilityRep ortho_to_vr(const FlatOrthogonalDrawing &od, bool normalize_x) {
    require_flat(od);
    if (!check_y_monotone(Drawing(od))) throw XformError("y-monotone orthogonal drawing required");

    Work w = to_work(od);
    expand_boxes_w(w, od.graph);
    while (auto z = find_zigzag_w(w)) remove_zigzag_w(w, *z);

    FlatOrthogonalDrawing flat = from_work(w, od.graph);
    if (normalize_x) normalize_x_ortho(flat);

    FlatVisibilityRep vr;
    vr.graph = od.graph;
    vr.box = flat.box;
    for (std::size_t e = 0; e < flat.route.size(); ++e) {
        const auto &r = flat.route[e];
        if (r.size() > 2) throw XformError("internal: bends left after zig-zag removal", true);
        const GridPoint &a = r.front(), &b = r.back();
        if (a.x == b.x && a.y != b.y) vr.seg.push_back(VSeg{a.x, a.y, b.y});
        else vr.seg.push_back(HSeg{a.y, a.x, b.x});
    }
    return vr;
}

FlatOrthogonalDrawing poly_to_ortho(const PolylineDrawing &pl, bool normalize_x) {
    const Graph &g = pl.graph;

    // 1. h-layer graph: pseudo-vertices at bends and at every row an edge
    // segment crosses; afterwards every piece is horizontal or spans one gap.
    struct LItem {
        Rational lx; // x in the source drawing: the left-to-right key
        BigInt row;
        std::size_t up = 0, down = 0;
        bool pseudo = false;
    };
    std::vector<LItem> items;
    for (std::size_t v = 0; v < g.n; ++v)
        items.push_back({Rational(pl.pos[v].x), pl.pos[v].y, 0, 0, false});

    std::vector<std::vector<std::size_t>> chain(g.m());
    for (std::size_t e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        std::vector<Point> pts{make_point(pl.pos[u].x, pl.pos[u].y)};
        for (auto &b : pl.bends[e]) pts.push_back(make_point(b.x, b.y));
        pts.push_back(make_point(pl.pos[v].x, pl.pos[v].y));

        chain[e].push_back(u);
        for (std::size_t k = 1; k < pts.size(); ++k) {
            const Point &p = pts[k - 1], &q = pts[k];
            if (p.y != q.y) {
                BigInt ra = rat_floor(p.y), rb = rat_floor(q.y);
                BigInt step = ra < rb ? 1 : -1;
                for (BigInt r = ra + step; r != rb; r += step) {
                    Rational x = line_row_intersection(p, q, Rational(r));
                    items.push_back({x, r, 0, 0, true});
                    chain[e].push_back(items.size() - 1);
                }
            }
            if (k + 1 < pts.size()) {
                items.push_back({q.x, rat_floor(q.y), 0, 0, true});
                chain[e].push_back(items.size() - 1);
            }
        }
        chain[e].push_back(v);
    }

    struct LEdge {
        std::size_t lo, hi; // lo = smaller row for transit; left item for flat
        bool horizontal;
    };
    std::vector<LEdge> ledges;
    std::vector<std::vector<std::size_t>> chain_ledges(g.m());
    for (std::size_t e = 0; e < g.m(); ++e) {
        for (std::size_t k = 0; k + 1 < chain[e].size(); ++k) {
            std::size_t a = chain[e][k], b = chain[e][k + 1];
            LEdge le;
            le.horizontal = items[a].row == items[b].row;
            if (le.horizontal) {
                le.lo = items[a].lx <= items[b].lx ? a : b;
                le.hi = items[a].lx <= items[b].lx ? b : a;
            } else {
                le.lo = items[a].row < items[b].row ? a : b;
                le.hi = items[a].row < items[b].row ? b : a;
                ++items[le.lo].up;
                ++items[le.hi].down;
            }
            ledges.push_back(le);
            chain_ledges[e].push_back(ledges.size() - 1);
        }
    }

    // 2. boxes: width max{1, deg_up, deg_down}, packed left to right per row.
    std::map<BigInt, std::vector<std::size_t>> rows;
    for (std::size_t i = 0; i < items.size(); ++i) rows[items[i].row].push_back(i);
    std::vector<BigInt> xl(items.size()), xr(items.size());
    for (auto &[row, vs] : rows) {
        std::sort(vs.begin(), vs.end(), [&](std::size_t a, std::size_t b) {
            if (items[a].lx != items[b].lx) return items[a].lx < items[b].lx;
            return a < b;
        });
        BigInt cur = 0;
        for (std::size_t i : vs) {
            BigInt wdt = BigInt(std::max<std::size_t>({1, items[i].up, items[i].down}));
            xl[i] = cur;
            xr[i] = cur + wdt - 1;
            cur += wdt;
        }
    }

    // 3. attachment columns: per item, up- and down-edges in the left-to-right
    // order of their far endpoints.
    std::vector<BigInt> att_lo(ledges.size()), att_hi(ledges.size());
    {
        std::vector<std::vector<std::size_t>> ups(items.size()), downs(items.size());
        for (std::size_t le = 0; le < ledges.size(); ++le) {
            if (ledges[le].horizontal) continue;
            ups[ledges[le].lo].push_back(le);
            downs[ledges[le].hi].push_back(le);
        }
        auto by_far = [&](std::size_t item, bool up) {
            return [&, item, up](std::size_t a, std::size_t b) {
                std::size_t fa = up ? ledges[a].hi : ledges[a].lo;
                std::size_t fb = up ? ledges[b].hi : ledges[b].lo;
                if (items[fa].lx != items[fb].lx) return items[fa].lx < items[fb].lx;
                return fa < fb;
            };
        };
        for (std::size_t i = 0; i < items.size(); ++i) {
            std::sort(ups[i].begin(), ups[i].end(), by_far(i, true));
            std::sort(downs[i].begin(), downs[i].end(), by_far(i, false));
            for (std::size_t k = 0; k < ups[i].size(); ++k) att_lo[ups[i][k]] = xl[i] + BigInt(k);
            for (std::size_t k = 0; k < downs[i].size(); ++k) att_hi[downs[i][k]] = xl[i] + BigInt(k);
        }
    }

    // 4. channel routing per band: one fresh track per leaning edge; the
    // stub/trunk conflicts order the tracks.
    Work w;
    for (std::size_t i = 0; i < items.size(); ++i)
        w.box.push_back({Rational(items[i].row), Rational(xl[i]), Rational(xr[i])});
    w.route.resize(ledges.size());

    std::map<BigInt, std::vector<std::size_t>> bands; // keyed by lower row
    for (std::size_t le = 0; le < ledges.size(); ++le) {
        if (ledges[le].horizontal) {
            Rational y(items[ledges[le].lo].row);
            w.route[le] = {Point{Rational(xr[ledges[le].lo]), y},
                           Point{Rational(xl[ledges[le].hi]), y}};
        } else if (att_lo[le] == att_hi[le]) {
            w.route[le] = {Point{Rational(att_lo[le]), Rational(items[ledges[le].lo].row)},
                           Point{Rational(att_lo[le]), Rational(items[ledges[le].hi].row)}};
        } else {
            bands[items[ledges[le].lo].row].push_back(le);
        }
    }
    for (auto &[row, nets] : bands) {
        const std::size_t K = nets.size();
        std::vector<std::vector<std::size_t>> succ(K);
        std::vector<std::size_t> indeg(K, 0);
        auto span_contains = [&](std::size_t l, const BigInt &x) {
            BigInt lo = std::min(att_lo[nets[l]], att_hi[nets[l]]);
            BigInt hi = std::max(att_lo[nets[l]], att_hi[nets[l]]);
            return x > lo && x < hi;
        };
        auto add = [&](std::size_t a, std::size_t b) {
            succ[a].push_back(b);
            ++indeg[b];
        };
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t l = 0; l < K; ++l) {
                if (k == l) continue;
                if (span_contains(l, att_lo[nets[k]])) add(k, l);
                if (span_contains(l, att_hi[nets[k]])) add(l, k);
                if (att_lo[nets[k]] == att_hi[nets[l]]) add(k, l);
            }
        std::vector<std::size_t> order;
        std::set<std::size_t> ready;
        for (std::size_t k = 0; k < K; ++k)
            if (indeg[k] == 0) ready.insert(k);
        while (!ready.empty()) {
            std::size_t k = *ready.begin();
            ready.erase(ready.begin());
            order.push_back(k);
            for (std::size_t s : succ[k])
                if (--indeg[s] == 0) ready.insert(s);
        }
        if (order.size() != K)
            throw XformError("internal: cyclic channel-routing constraints", true);
        for (std::size_t t = 0; t < K; ++t) {
            std::size_t le = nets[order[t]];
            Rational track = Rational(row) + make_rational(BigInt(t + 1), BigInt(K + 1));
            Rational alo(att_lo[le]), ahi(att_hi[le]);
            w.route[le] = {Point{alo, Rational(items[ledges[le].lo].row)}, Point{alo, track},
                           Point{ahi, track}, Point{ahi, Rational(items[ledges[le].hi].row)}};
        }
    }

    // Routes are stored lo->hi; chains need them in walk direction.
    auto piece_pts = [&](std::size_t e, std::size_t k) {
        std::size_t le = chain_ledges[e][k];
        std::vector<Point> pts = w.route[le];
        std::size_t from = chain[e][k];
        bool reversed = ledges[le].horizontal ? (ledges[le].hi == from) : (ledges[le].hi == from);
        if (reversed) std::reverse(pts.begin(), pts.end());
        return pts;
    };

    // 5. zig-zag removal empties the fractional tracks.
    while (auto z = find_zigzag_w(w)) remove_zigzag_w(w, *z);

    // 6. merge chains back into per-edge routes, erase pseudo boxes.
    FlatOrthogonalDrawing out;
    out.graph = g;
    for (std::size_t v = 0; v < g.n; ++v) {
        if (!is_integral(w.box[v].xl) || !is_integral(w.box[v].xr))
            throw XformError("internal: non-integral box", true);
        BigInt row = rat_floor(w.box[v].y);
        out.box.push_back(Box{row, rat_floor(w.box[v].xl), rat_floor(w.box[v].xr), row});
    }
    for (std::size_t e = 0; e < g.m(); ++e) {
        std::vector<Point> full;
        for (std::size_t k = 0; k < chain_ledges[e].size(); ++k) {
            auto pts = piece_pts(e, k);
            if (!full.empty()) {
                if (full.back() == pts.front()) {
                    pts.erase(pts.begin());
                } else if (full.back().y == pts.front().y) {
                    // the two attachments use different columns of the erased
                    // pseudo box (V-shaped bend): connect along its row
                } else {
                    throw XformError("internal: chain pieces do not join", true);
                }
            }
            full.insert(full.end(), pts.begin(), pts.end());
        }
        full = merge_collinear_w(full);
        std::vector<GridPoint> r;
        for (auto &p : full) {
            if (!is_integral(p.x) || !is_integral(p.y))
                throw XformError("internal: non-integral route point", true);
            r.push_back(GridPoint{rat_floor(p.x), rat_floor(p.y)});
        }
        if (r.size() == 1) r.push_back(r[0]);
        out.route.push_back(std::move(r));
    }
    if (normalize_x) normalize_x_ortho(out);
    return out;
}

namespace {

FlatOrthogonalDrawing compact_ortho(const FlatOrthogonalDrawing &input, bool normalize_x) {
    FlatOrthogonalDrawing od = input;
    const Graph &g = od.graph;
    for (auto &r : od.route) {
        std::vector<Point> pts;
        for (auto &p : r) pts.push_back(make_point(p.x, p.y));
        pts = merge_collinear_w(pts);
        r.clear();
        for (auto &p : pts) r.push_back(GridPoint{rat_floor(p.x), rat_floor(p.y)});
        if (r.size() == 1) r.push_back(r[0]);
    }
    for (;;) {
        std::set<BigInt> protected_cols;
        for (std::size_t v = 0; v < g.n; ++v)
            if (od.box[v].xl == od.box[v].xr) protected_cols.insert(od.box[v].xl);
        for (auto &r : od.route)
            for (std::size_t i = 0; i + 1 < r.size(); ++i)
                if (r[i].x == r[i + 1].x && r[i].y != r[i + 1].y) protected_cols.insert(r[i].x);

        auto pts = defining_points(Drawing(od));
        BigInt minx = pts[0].x, maxx = pts[0].x;
        for (auto &p : pts) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
        }
        std::optional<BigInt> victim;
        for (BigInt c = minx; c <= maxx; ++c)
            if (!protected_cols.count(c)) { victim = c; break; }
        if (!victim) break;
        const BigInt c = *victim;

        for (std::size_t e = 0; e < g.m(); ++e) {
            auto &r = od.route[e];
            // attachments in the deleted column follow their box end
            auto fix_attachment = [&](GridPoint &p, const Box &b) {
                if (p.x != c) return false;
                p.x = (p.x == b.xr && b.xl < b.xr) ? c - 1 : c;
                return true;
            };
            bool front_fixed = fix_attachment(r.front(), od.box[g.edges[e].first]);
            bool back_fixed = r.size() > 1 && fix_attachment(r.back(), od.box[g.edges[e].second]);
            for (std::size_t i = 0; i < r.size(); ++i) {
                if ((i == 0 && front_fixed) || (i + 1 == r.size() && back_fixed)) continue;
                if (r[i].x == c)
                    throw XformError("internal: interior route point in a redundant column", true);
                if (r[i].x > c) r[i].x -= 1;
            }
        }
        for (auto &b : od.box) {
            if (b.xl > c) b.xl -= 1;
            if (b.xr >= c) b.xr -= 1;
            if (b.xr < b.xl) throw XformError("internal: box collapsed during compaction", true);
        }
    }
    if (normalize_x) normalize_x_ortho(od);
    return od;
}

} // namespace

FlatOrthogonalDrawing remove_redundant_columns(const FlatOrthogonalDrawing &od, bool normalize_x) {
    return compact_ortho(od, normalize_x);
}

FlatVisibilityRep remove_redundant_columns(const FlatVisibilityRep &vr, bool normalize_x) {
    FlatOrthogonalDrawing od = compact_ortho(vr_as_ortho(vr), normalize_x);
    FlatVisibilityRep out;
    out.graph = vr.graph;
    out.box = od.box;
    for (std::size_t e = 0; e < od.route.size(); ++e) {
        const GridPoint &a = od.route[e].front(), &b = od.route[e].back();
        if (a.x == b.x && a.y != b.y) out.seg.push_back(VSeg{a.x, a.y, b.y});
        else out.seg.push_back(HSeg{a.y, a.x, b.x});
    }
    return out;
}

} // namespace flatvis
