// The four grid-drawing styles and their shared metrics.
#pragma once

#include "flatvis/geometry.hpp"
#include "flatvis/graph.hpp"

#include <map>
#include <variant>
#include <vector>

namespace flatvis {

struct GridPoint {
    BigInt x;
    BigInt y;
    bool operator==(const GridPoint &o) const { return x == o.x && y == o.y; }
};

struct StraightLineDrawing {
    Graph graph;
    std::vector<GridPoint> pos; // indexed by vertex id
};

struct PolylineDrawing {
    Graph graph;
    std::vector<GridPoint> pos;
    std::vector<std::vector<GridPoint>> bends; // per edge, ordered u -> v
};

// Vertex box occupying rows [y, ytop] and columns [xl, xr]. Flat boxes have
// ytop == y; taller boxes exist only so upward-mode visibility files can
// round-trip (drawings under transformation are always flat).
struct Box {
    BigInt y;
    BigInt xl;
    BigInt xr;
    BigInt ytop;

    bool flat() const { return ytop == y; }
};

struct FlatOrthogonalDrawing {
    Graph graph;
    std::vector<Box> box;
    // Full rectilinear path from a point on u's box to a point on v's box,
    // including both attachment points.
    std::vector<std::vector<GridPoint>> route;
};

struct HSeg {
    BigInt y;
    BigInt x1; // attachment on u
    BigInt x2; // attachment on v
};
struct VSeg {
    BigInt x;
    BigInt y1; // attachment row on u
    BigInt y2; // attachment row on v
};
using EdgeSeg = std::variant<HSeg, VSeg>;

struct FlatVisibilityRep {
    Graph graph;
    std::vector<Box> box;
    std::vector<EdgeSeg> seg; // per edge

    bool all_flat() const {
        for (auto &b : box)
            if (!b.flat()) return false;
        return true;
    }
};

using Drawing = std::variant<StraightLineDrawing, PolylineDrawing,
                             FlatOrthogonalDrawing, FlatVisibilityRep>;

enum class Style { StraightLine, Polyline, FlatOrtho, FlatVR };

Style style_of(const Drawing &d);
const char *style_name(Style s);
const Graph &graph_of(const Drawing &d);

struct Metrics {
    BigInt height;
    BigInt width;
    std::size_t bends = 0;
};

// Every point that pins down the drawing: vertex points, box corners,
// bends, route points, edge-segment endpoints.
std::vector<GridPoint> defining_points(const Drawing &d);

// Throws std::invalid_argument on an empty drawing.
Metrics metrics(const Drawing &d);

std::size_t bend_count(const Drawing &d);

// Translates so the smallest occupied row and column are both 1.
Drawing normalize(const Drawing &d);

// A flat VR read as an orthogonal drawing whose routes are single segments.
FlatOrthogonalDrawing vr_as_ortho(const FlatVisibilityRep &vr);

} // namespace flatvis
