#include "flatvis/validate.hpp"

#include "flatvis/errors.hpp"
#include "flatvis/json_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flatvis {

namespace {

// Exact intersection set of two segments: nothing, a point, or a subsegment.
struct ISet {
    bool hit = false;
    Point lo, hi; // lo == hi for a single point
};

ISet intersect_set(const Segment &s1, const Segment &s2) {
    ISet out;
    auto lt = [](const Point &p, const Point &q) {
        if (p.x != q.x) return p.x < q.x;
        return p.y < q.y;
    };
    if (s1.degenerate() && s2.degenerate()) {
        if (s1.a == s2.a) { out.hit = true; out.lo = out.hi = s1.a; }
        return out;
    }
    if (s1.degenerate() || s2.degenerate()) {
        const Point &p = s1.degenerate() ? s1.a : s2.a;
        const Segment &s = s1.degenerate() ? s2 : s1;
        if (point_on_segment(p, s)) { out.hit = true; out.lo = out.hi = p; }
        return out;
    }
    Rational d1x = s1.b.x - s1.a.x, d1y = s1.b.y - s1.a.y;
    Rational d2x = s2.b.x - s2.a.x, d2y = s2.b.y - s2.a.y;
    Rational den = d1x * d2y - d1y * d2x;
    if (sgn(den) == 0) {
        // Parallel. Collinear overlap?
        if (orientation(s1.a, s1.b, s2.a) != 0) return out;
        Point a1 = s1.a, b1 = s1.b, a2 = s2.a, b2 = s2.b;
        if (lt(b1, a1)) std::swap(a1, b1);
        if (lt(b2, a2)) std::swap(a2, b2);
        Point lo = lt(a1, a2) ? a2 : a1;
        Point hi = lt(b1, b2) ? b1 : b2;
        if (lt(hi, lo)) return out;
        out.hit = true;
        out.lo = lo;
        out.hi = hi;
        return out;
    }
    Rational ex = s2.a.x - s1.a.x, ey = s2.a.y - s1.a.y;
    Rational t = (ex * d2y - ey * d2x) / den;
    Rational u = (ex * d1y - ey * d1x) / den;
    if (t < 0 || t > 1 || u < 0 || u > 1) return out;
    out.hit = true;
    out.lo = out.hi = Point{s1.a.x + t * d1x, s1.a.y + t * d1y};
    return out;
}

std::string pt_str(const Point &p) {
    return "(" + p.x.get_str() + "," + p.y.get_str() + ")";
}

// Flattened drawing elements for the pairwise scan.
enum class ElKind { VertexPt, BoxEl, EdgePiece };

struct Element {
    ElKind kind;
    std::size_t owner;  // vertex id or edge id
    std::size_t piece;  // chain index for EdgePiece
    Segment seg;        // geometry: point/box stored as (degenerate) segment
    // boxes only:
    Rational ylo, yhi;  // vertical extent (tall boxes)
    bool tall = false;
};

struct Flattened {
    const Graph *g = nullptr;
    std::vector<Element> els;
    std::vector<Point> vertex_pt;          // point styles
    std::vector<std::vector<Point>> chain; // per edge, full path of points
    bool box_style = false;
    // Contact licenses: zero-length edges touching boxes at a point.
    std::vector<std::tuple<VertexId, VertexId, Point>> contacts;
};

Point gp(const GridPoint &p) { return make_point(p.x, p.y); }

Flattened flatten(const Drawing &d) {
    Flattened f;
    f.g = &graph_of(d);
    auto add_chain = [&](std::size_t e, const std::vector<Point> &pts) {
        f.chain.push_back(pts);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            f.els.push_back(Element{ElKind::EdgePiece, e, i, Segment{pts[i], pts[i + 1]}, {}, {}, false});
    };

    if (auto *sl = std::get_if<StraightLineDrawing>(&d)) {
        for (std::size_t v = 0; v < sl->graph.n; ++v) {
            f.vertex_pt.push_back(gp(sl->pos[v]));
            f.els.push_back(Element{ElKind::VertexPt, v, 0, Segment{gp(sl->pos[v]), gp(sl->pos[v])}, {}, {}, false});
        }
        for (std::size_t e = 0; e < sl->graph.m(); ++e)
            add_chain(e, {gp(sl->pos[sl->graph.edges[e].first]), gp(sl->pos[sl->graph.edges[e].second])});
    } else if (auto *pl = std::get_if<PolylineDrawing>(&d)) {
        for (std::size_t v = 0; v < pl->graph.n; ++v) {
            f.vertex_pt.push_back(gp(pl->pos[v]));
            f.els.push_back(Element{ElKind::VertexPt, v, 0, Segment{gp(pl->pos[v]), gp(pl->pos[v])}, {}, {}, false});
        }
        for (std::size_t e = 0; e < pl->graph.m(); ++e) {
            std::vector<Point> pts{gp(pl->pos[pl->graph.edges[e].first])};
            for (auto &b : pl->bends[e]) pts.push_back(gp(b));
            pts.push_back(gp(pl->pos[pl->graph.edges[e].second]));
            add_chain(e, pts);
        }
    } else {
        f.box_style = true;
        const FlatOrthogonalDrawing od =
            std::holds_alternative<FlatOrthogonalDrawing>(d)
                ? std::get<FlatOrthogonalDrawing>(d)
                : vr_as_ortho(std::get<FlatVisibilityRep>(d));
        for (std::size_t v = 0; v < od.graph.n; ++v) {
            const Box &b = od.box[v];
            Element el;
            el.kind = ElKind::BoxEl;
            el.owner = v;
            el.piece = 0;
            el.seg = Segment{make_point(b.xl, b.y), make_point(b.xr, b.y)};
            el.ylo = Rational(b.y);
            el.yhi = Rational(b.ytop);
            el.tall = !b.flat();
            f.els.push_back(el);
        }
        for (std::size_t e = 0; e < od.graph.m(); ++e) {
            std::vector<Point> pts;
            for (auto &p : od.route[e]) pts.push_back(gp(p));
            if (pts.size() == 2 && pts[0] == pts[1]) pts.pop_back(); // degenerate touch
            if (pts.size() == 1) {
                f.chain.push_back({pts[0], pts[0]});
                f.els.push_back(Element{ElKind::EdgePiece, e, 0, Segment{pts[0], pts[0]}, {}, {}, false});
                f.contacts.emplace_back(od.graph.edges[e].first, od.graph.edges[e].second, pts[0]);
            } else {
                add_chain(e, pts);
            }
        }
    }
    return f;
}

bool in_box(const Point &p, const Element &box) {
    return p.x >= box.seg.a.x && p.x <= box.seg.b.x && p.y >= box.ylo && p.y <= box.yhi;
}

// Intersection of a segment with a (possibly tall) box, reported as
// "none", "single point p", or "more".
struct BoxHit {
    int kind = 0; // 0 none, 1 point, 2 more
    Point p;
};

BoxHit box_segment_hit(const Element &box, const Segment &s) {
    BoxHit h;
    if (!box.tall) {
        ISet is = intersect_set(box.seg, s);
        if (!is.hit) return h;
        h.kind = (is.lo == is.hi) ? 1 : 2;
        h.p = is.lo;
        return h;
    }
    // Tall box: clip endpoints + border intersections.
    bool a_in = in_box(s.a, box), b_in = in_box(s.b, box);
    if (a_in && b_in) {
        h.kind = (s.a == s.b) ? 1 : 2;
        h.p = s.a;
        return h;
    }
    Point corners[4] = {Point{box.seg.a.x, box.ylo}, Point{box.seg.b.x, box.ylo},
                        Point{box.seg.b.x, box.yhi}, Point{box.seg.a.x, box.yhi}};
    std::optional<Point> single;
    for (int i = 0; i < 4; ++i) {
        Segment border{corners[i], corners[(i + 1) % 4]};
        ISet is = intersect_set(border, s);
        if (!is.hit) continue;
        if (!(is.lo == is.hi)) { h.kind = 2; return h; }
        if (!single) single = is.lo;
        else if (!(*single == is.lo)) { h.kind = 2; return h; }
    }
    if (a_in || b_in) {
        // one endpoint strictly inside
        const Point &inside = a_in ? s.a : s.b;
        if (!single || !(*single == inside)) {
            bool strictly_inside = inside.x > box.seg.a.x && inside.x < box.seg.b.x &&
                                   inside.y > box.ylo && inside.y < box.yhi;
            if (strictly_inside) { h.kind = 2; return h; }
        }
    }
    if (single) { h.kind = 1; h.p = *single; }
    return h;
}

std::string el_name(const Flattened &f, const Element &e) {
    std::ostringstream os;
    if (e.kind == ElKind::VertexPt) os << "vertex " << e.owner;
    else if (e.kind == ElKind::BoxEl) os << "box " << e.owner;
    else {
        auto [u, v] = f.g->edges[e.owner];
        os << "edge " << e.owner << " (" << u << "-" << v << ")";
    }
    return os.str();
}

// Decide whether a pair of elements intersects illegally; append violations.
void check_pair(const Flattened &f, const Element &A, const Element &B,
                std::vector<Violation> &out) {
    const Graph &g = *f.g;
    auto emit = [&](const char *kind, const std::string &witness) {
        out.push_back(Violation{kind, {el_name(f, A), el_name(f, B)}, witness});
    };

    if (A.kind == ElKind::VertexPt && B.kind == ElKind::VertexPt) {
        if (A.seg.a == B.seg.a) emit("duplicate-vertex-point", pt_str(A.seg.a));
        return;
    }

    if (A.kind == ElKind::VertexPt || B.kind == ElKind::VertexPt) {
        const Element &V = A.kind == ElKind::VertexPt ? A : B;
        const Element &E = A.kind == ElKind::VertexPt ? B : A;
        if (E.kind != ElKind::EdgePiece) return;
        const Point &p = V.seg.a;
        if (!point_on_segment(p, E.seg)) return;
        auto [u, w] = g.edges[E.owner];
        const auto &chain = f.chain[E.owner];
        bool legal = (V.owner == u && E.piece == 0 && p == chain.front()) ||
                     (V.owner == w && E.piece + 2 == chain.size() && p == chain.back());
        if (!legal) emit("vertex-on-edge", pt_str(p));
        return;
    }

    if (A.kind == ElKind::BoxEl && B.kind == ElKind::BoxEl) {
        // Closed rectangles must be disjoint except licensed point contacts.
        Rational xlo = std::max(A.seg.a.x, B.seg.a.x), xhi = std::min(A.seg.b.x, B.seg.b.x);
        Rational ylo = std::max(A.ylo, B.ylo), yhi = std::min(A.yhi, B.yhi);
        if (xlo > xhi || ylo > yhi) return;
        if (xlo == xhi && ylo == yhi) {
            Point p{xlo, ylo};
            for (auto &[cu, cv, cp] : f.contacts) {
                if (cp == p && ((cu == A.owner && cv == B.owner) || (cu == B.owner && cv == A.owner)))
                    return; // touching via a zero-length edge
            }
            emit("box-contact", pt_str(p));
        } else {
            emit("box-overlap", pt_str(Point{xlo, ylo}));
        }
        return;
    }

    if (A.kind == ElKind::BoxEl || B.kind == ElKind::BoxEl) {
        const Element &X = A.kind == ElKind::BoxEl ? A : B;
        const Element &E = A.kind == ElKind::BoxEl ? B : A;
        BoxHit h = box_segment_hit(X, E.seg);
        if (h.kind == 0) return;
        auto [u, w] = g.edges[E.owner];
        const auto &chain = f.chain[E.owner];
        if (h.kind == 1) {
            bool legal = (X.owner == u && E.piece == 0 && h.p == chain.front()) ||
                         (X.owner == w && E.piece + 2 == chain.size() && h.p == chain.back());
            // degenerate touching edge: single piece, both ends attached
            if (chain.size() == 2 && chain[0] == chain[1] && (X.owner == u || X.owner == w) &&
                h.p == chain[0])
                legal = true;
            if (!legal) emit("route-through-box", pt_str(h.p));
        } else {
            emit("route-through-box", pt_str(E.seg.a));
        }
        return;
    }

    // Two edge pieces.
    if (A.owner == B.owner) {
        std::size_t i = A.piece, j = B.piece;
        if (i > j) std::swap(i, j);
        ISet is = intersect_set(A.seg, B.seg);
        if (!is.hit) return;
        if (j == i + 1 && is.lo == is.hi && is.lo == f.chain[A.owner][j]) return;
        emit("self-intersection", pt_str(is.lo));
        return;
    }
    ISet is = intersect_set(A.seg, B.seg);
    if (!is.hit) return;
    if (!(is.lo == is.hi)) {
        emit("overlap", pt_str(is.lo) + "-" + pt_str(is.hi));
        return;
    }
    auto [u1, w1] = g.edges[A.owner];
    auto [u2, w2] = g.edges[B.owner];
    if (!f.box_style) {
        // Point-vertex styles: edges sharing a vertex may meet exactly there.
        for (VertexId v : {u1, w1})
            if ((v == u2 || v == w2) && is.lo == f.vertex_pt[v]) return;
    } else {
        // Box styles: edges sharing a vertex may meet at a point that is the
        // attachment of both on the shared box (up- and down-attachments of a
        // flat box coincide when they use the same column).
        const auto &c1 = f.chain[A.owner], &c2 = f.chain[B.owner];
        for (VertexId v : {u1, w1}) {
            if (v != u2 && v != w2) continue;
            bool att1 = (v == u1 && is.lo == c1.front()) || (v == w1 && is.lo == c1.back());
            bool att2 = (v == u2 && is.lo == c2.front()) || (v == w2 && is.lo == c2.back());
            if (att1 && att2) return;
        }
    }
    emit("crossing", pt_str(is.lo));
}

template <bool Parallel>
ValidationReport run_planarity(const Drawing &d) {
    Flattened f = flatten(d);
    const std::size_t k = f.els.size();
    std::vector<std::vector<Violation>> per_i(k);

#if defined(_OPENMP)
    if constexpr (Parallel) {
        #pragma omp parallel for schedule(dynamic, 8)
        for (long long ii = 0; ii < static_cast<long long>(k); ++ii) {
            auto i = static_cast<std::size_t>(ii);
            for (std::size_t j = i + 1; j < k; ++j)
                check_pair(f, f.els[i], f.els[j], per_i[i]);
        }
    } else
#endif
    {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                check_pair(f, f.els[i], f.els[j], per_i[i]);
    }

    ValidationReport r;
    for (auto &vec : per_i)
        for (auto &v : vec) r.add(std::move(v));
    return r;
}

} // namespace

ValidationReport check_planar(const Drawing &d) { return run_planarity<true>(d); }
ValidationReport check_planar_serial(const Drawing &d) { return run_planarity<false>(d); }

ValidationReport validate_drawing(const Drawing &d) {
    ValidationReport r;
    try {
        check_structure(d);
    } catch (const std::exception &e) {
        r.add(Violation{"structure", {}, e.what()});
        return r; // geometry checks assume structural sanity
    }
    ValidationReport p = check_planar(d);
    for (auto &v : p.violations) r.add(std::move(v));
    return r;
}

bool check_y_monotone(const Drawing &d) {
    auto monotone = [](const std::vector<BigInt> &ys) {
        int dir = 0;
        for (std::size_t i = 1; i < ys.size(); ++i) {
            int s = cmp(ys[i], ys[i - 1]);
            if (s == 0) continue;
            if (dir == 0) dir = s;
            else if (dir != s) return false;
        }
        return true;
    };
    if (std::holds_alternative<StraightLineDrawing>(d) ||
        std::holds_alternative<FlatVisibilityRep>(d))
        return true;
    if (auto *pl = std::get_if<PolylineDrawing>(&d)) {
        for (std::size_t e = 0; e < pl->graph.m(); ++e) {
            std::vector<BigInt> ys{pl->pos[pl->graph.edges[e].first].y};
            for (auto &b : pl->bends[e]) ys.push_back(b.y);
            ys.push_back(pl->pos[pl->graph.edges[e].second].y);
            if (!monotone(ys)) return false;
        }
        return true;
    }
    auto &od = std::get<FlatOrthogonalDrawing>(d);
    for (auto &r : od.route) {
        std::vector<BigInt> ys;
        for (auto &p : r) ys.push_back(p.y);
        if (!monotone(ys)) return false;
    }
    return true;
}

std::size_t plateau_count(const PolylineDrawing &pl) {
    // Horizontal segments of multi-segment edges; accepted but reported.
    std::size_t count = 0;
    for (std::size_t e = 0; e < pl.graph.m(); ++e) {
        std::vector<GridPoint> pts{pl.pos[pl.graph.edges[e].first]};
        for (auto &b : pl.bends[e]) pts.push_back(b);
        pts.push_back(pl.pos[pl.graph.edges[e].second]);
        if (pts.size() < 3) continue;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i].y == pts[i + 1].y) ++count;
    }
    return count;
}

BigInt vertex_row(const Drawing &d, VertexId v) {
    if (auto *sl = std::get_if<StraightLineDrawing>(&d)) return sl->pos[v].y;
    if (auto *pl = std::get_if<PolylineDrawing>(&d)) return pl->pos[v].y;
    if (auto *od = std::get_if<FlatOrthogonalDrawing>(&d)) return od->box[v].y;
    return std::get<FlatVisibilityRep>(d).box[v].y;
}

namespace {
BigInt vertex_left_x(const Drawing &d, VertexId v) {
    if (auto *sl = std::get_if<StraightLineDrawing>(&d)) return sl->pos[v].x;
    if (auto *pl = std::get_if<PolylineDrawing>(&d)) return pl->pos[v].x;
    if (auto *od = std::get_if<FlatOrthogonalDrawing>(&d)) return od->box[v].xl;
    return std::get<FlatVisibilityRep>(d).box[v].xl;
}
} // namespace

std::map<BigInt, std::vector<VertexId>> row_orders(const Drawing &d) {
    std::map<BigInt, std::vector<VertexId>> rows;
    const Graph &g = graph_of(d);
    for (VertexId v = 0; v < g.n; ++v) rows[vertex_row(d, v)].push_back(v);
    for (auto &[row, vs] : rows)
        std::sort(vs.begin(), vs.end(), [&](VertexId a, VertexId b) {
            BigInt xa = vertex_left_x(d, a), xb = vertex_left_x(d, b);
            if (xa != xb) return xa < xb;
            return a < b;
        });
    return rows;
}

bool same_rows_and_orders(const Drawing &d1, const Drawing &d2) {
    if (graph_of(d1).n != graph_of(d2).n)
        throw std::invalid_argument("vertex-set mismatch");
    const std::size_t n = graph_of(d1).n;
    for (VertexId v = 0; v < n; ++v)
        if (vertex_row(d1, v) != vertex_row(d2, v)) return false;
    return row_orders(d1) == row_orders(d2);
}

std::string report_to_json(const ValidationReport &r) {
    nlohmann::ordered_json j;
    j["ok"] = r.ok;
    nlohmann::ordered_json vs = nlohmann::ordered_json::array();
    for (auto &v : r.violations) {
        nlohmann::ordered_json vj;
        vj["kind"] = v.kind;
        vj["elements"] = v.elements;
        vj["witness"] = v.witness;
        vs.push_back(std::move(vj));
    }
    j["violations"] = std::move(vs);
    return j.dump(2) + "\n";
}

} // namespace flatvis
