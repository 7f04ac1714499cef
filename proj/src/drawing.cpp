#include "flatvis/drawing.hpp"

#include <stdexcept>

namespace flatvis {

Style style_of(const Drawing &d) {
    return static_cast<Style>(d.index());
}

const char *style_name(Style s) {
    switch (s) {
    case Style::StraightLine: return "straightline";
    case Style::Polyline: return "polyline";
    case Style::FlatOrtho: return "flatortho";
    case Style::FlatVR: return "flatvr";
    }
    return "?";
}

const Graph &graph_of(const Drawing &d) {
    return std::visit([](const auto &x) -> const Graph & { return x.graph; }, d);
}

namespace {

void box_points(const Box &b, std::vector<GridPoint> &out) {
    out.push_back({b.xl, b.y});
    out.push_back({b.xr, b.y});
    if (!b.flat()) {
        out.push_back({b.xl, b.ytop});
        out.push_back({b.xr, b.ytop});
    }
}

} // namespace

std::vector<GridPoint> defining_points(const Drawing &d) {
    std::vector<GridPoint> pts;
    if (auto *sl = std::get_if<StraightLineDrawing>(&d)) {
        pts = sl->pos;
    } else if (auto *pl = std::get_if<PolylineDrawing>(&d)) {
        pts = pl->pos;
        for (auto &bl : pl->bends)
            for (auto &b : bl) pts.push_back(b);
    } else if (auto *od = std::get_if<FlatOrthogonalDrawing>(&d)) {
        for (auto &b : od->box) box_points(b, pts);
        for (auto &r : od->route)
            for (auto &p : r) pts.push_back(p);
    } else if (auto *vr = std::get_if<FlatVisibilityRep>(&d)) {
        for (auto &b : vr->box) box_points(b, pts);
        for (auto &s : vr->seg) {
            if (auto *h = std::get_if<HSeg>(&s)) {
                pts.push_back({h->x1, h->y});
                pts.push_back({h->x2, h->y});
            } else {
                auto &v = std::get<VSeg>(s);
                pts.push_back({v.x, v.y1});
                pts.push_back({v.x, v.y2});
            }
        }
    }
    return pts;
}

std::size_t bend_count(const Drawing &d) {
    if (std::holds_alternative<StraightLineDrawing>(d) ||
        std::holds_alternative<FlatVisibilityRep>(d))
        return 0;
    if (auto *pl = std::get_if<PolylineDrawing>(&d)) {
        std::size_t b = 0;
        for (auto &bl : pl->bends) b += bl.size();
        return b;
    }
    auto &od = std::get<FlatOrthogonalDrawing>(d);
    std::size_t b = 0;
    for (auto &r : od.route) {
        for (std::size_t i = 1; i + 1 < r.size(); ++i) {
            // interior point where the path turns
            bool in_vert = r[i - 1].x == r[i].x;
            bool out_vert = r[i].x == r[i + 1].x;
            if (in_vert != out_vert) ++b;
        }
    }
    return b;
}

Metrics metrics(const Drawing &d) {
    auto pts = defining_points(d);
    if (pts.empty()) throw std::invalid_argument("empty drawing");
    BigInt minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
    for (auto &p : pts) {
        if (p.x < minx) minx = p.x;
        if (p.x > maxx) maxx = p.x;
        if (p.y < miny) miny = p.y;
        if (p.y > maxy) maxy = p.y;
    }
    return Metrics{maxy - miny + 1, maxx - minx + 1, bend_count(d)};
}

namespace {

template <typename D> D translated(const D &d, const BigInt &dx, const BigInt &dy);

template <> StraightLineDrawing translated(const StraightLineDrawing &d, const BigInt &dx, const BigInt &dy) {
    StraightLineDrawing out = d;
    for (auto &p : out.pos) { p.x += dx; p.y += dy; }
    return out;
}

template <> PolylineDrawing translated(const PolylineDrawing &d, const BigInt &dx, const BigInt &dy) {
    PolylineDrawing out = d;
    for (auto &p : out.pos) { p.x += dx; p.y += dy; }
    for (auto &bl : out.bends)
        for (auto &p : bl) { p.x += dx; p.y += dy; }
    return out;
}

template <> FlatOrthogonalDrawing translated(const FlatOrthogonalDrawing &d, const BigInt &dx, const BigInt &dy) {
    FlatOrthogonalDrawing out = d;
    for (auto &b : out.box) { b.xl += dx; b.xr += dx; b.y += dy; b.ytop += dy; }
    for (auto &r : out.route)
        for (auto &p : r) { p.x += dx; p.y += dy; }
    return out;
}

template <> FlatVisibilityRep translated(const FlatVisibilityRep &d, const BigInt &dx, const BigInt &dy) {
    FlatVisibilityRep out = d;
    for (auto &b : out.box) { b.xl += dx; b.xr += dx; b.y += dy; b.ytop += dy; }
    for (auto &s : out.seg) {
        if (auto *h = std::get_if<HSeg>(&s)) { h->x1 += dx; h->x2 += dx; h->y += dy; }
        else { auto &v = std::get<VSeg>(s); v.x += dx; v.y1 += dy; v.y2 += dy; }
    }
    return out;
}

} // namespace

Drawing normalize(const Drawing &d) {
    auto pts = defining_points(d);
    if (pts.empty()) throw std::invalid_argument("empty drawing");
    BigInt minx = pts[0].x, miny = pts[0].y;
    for (auto &p : pts) {
        if (p.x < minx) minx = p.x;
        if (p.y < miny) miny = p.y;
    }
    BigInt dx = 1 - minx, dy = 1 - miny;
    return std::visit([&](const auto &x) -> Drawing { return translated(x, dx, dy); }, d);
}

FlatOrthogonalDrawing vr_as_ortho(const FlatVisibilityRep &vr) {
    FlatOrthogonalDrawing od;
    od.graph = vr.graph;
    od.box = vr.box;
    od.route.reserve(vr.seg.size());
    for (auto &s : vr.seg) {
        std::vector<GridPoint> r;
        if (auto *h = std::get_if<HSeg>(&s)) {
            r.push_back({h->x1, h->y});
            r.push_back({h->x2, h->y});
        } else {
            auto &v = std::get<VSeg>(s);
            r.push_back({v.x, v.y1});
            r.push_back({v.x, v.y2});
        }
        od.route.push_back(std::move(r));
    }
    return od;
}

} // namespace flatvis
