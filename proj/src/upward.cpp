#include "flatvis/upward.hpp"

#include "flatvis/transform_ortho.hpp"
#include "flatvis/transform_vr.hpp"

namespace flatvis {

bool is_upward(const StraightLineDrawing &sl) {
    if (!sl.graph.directed) return false;
    for (auto &[tail, head] : sl.graph.edges)
        if (!(sl.pos[tail].y < sl.pos[head].y)) return false;
    return true;
}

FlatVisibilityRep upward_to_vertical_vr(const StraightLineDrawing &ud) {
    if (!ud.graph.directed) throw XformError("directed drawing required");
    if (!is_upward(ud)) throw XformError("upward drawing required");

    PolylineDrawing pl;
    pl.graph = ud.graph;
    pl.pos = ud.pos;
    pl.bends.assign(ud.graph.m(), {});

    FlatVisibilityRep vr = ortho_to_vr(poly_to_ortho(pl));

    for (std::size_t e = 0; e < vr.seg.size(); ++e) {
        auto *v = std::get_if<VSeg>(&vr.seg[e]);
        if (!v || !(v->y1 < v->y2))
            throw XformError("internal: upward edge not drawn as an upward vertical", true);
    }
    return vr;
}

StraightLineDrawing vertical_vr_to_upward(const FlatVisibilityRep &vr) {
    if (!vr.graph.directed) throw XformError("directed drawing required");
    for (auto &s : vr.seg)
        if (std::holds_alternative<HSeg>(s))
            throw XformError("visibility representation contains a horizontal edge");

    // Flatten every box onto its bottom row and stretch the edges that
    // attached higher up; the vacated rows were box interior, so nothing
    // else can be hit.
    FlatVisibilityRep flat = vr;
    for (auto &b : flat.box) b.ytop = b.y;
    for (std::size_t e = 0; e < flat.seg.size(); ++e) {
        auto &v = std::get<VSeg>(flat.seg[e]);
        auto [tail, head] = flat.graph.edges[e];
        if (!(v.y1 < v.y2)) throw XformError("edge drawn with head below tail");
        v.y1 = flat.box[tail].y;
        v.y2 = flat.box[head].y;
        if (!(v.y1 < v.y2))
            throw XformError("internal: flattening broke an upward edge", true);
    }

    StraightLineDrawing out = vr_to_straightline(flat);
    if (!is_upward(out)) throw XformError("internal: output is not upward", true);
    return out;
}

} // namespace flatvis
