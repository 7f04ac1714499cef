// Poly-line -> flat orthogonal (pseudo-vertices, channel routing),
// flat y-monotone orthogonal -> flat VR (box expansion + zig-zag removal),
// and redundant-column compaction.
#pragma once

#include "flatvis/drawing.hpp"
#include "flatvis/errors.hpp"

namespace flatvis {

// A vertical-horizontal-vertical subpath of a y-monotone rectilinear edge
// whose two verticals continue in the same y-direction.
struct ZigZag {
    std::size_t edge;
    std::size_t first_bend; // route index of the V->H turn
};

// Widens every box over the bends of its horizontally attached edges.
// Throws XformError unless the input is flat and y-monotone.
FlatOrthogonalDrawing expand_boxes(const FlatOrthogonalDrawing &od);

// Leftmost zig-zag of the edge with the smallest id, if any.
std::optional<ZigZag> find_zigzag(const FlatOrthogonalDrawing &od);

// Cut-and-shift removal of one zig-zag: bend count drops by exactly 2,
// every y-coordinate is preserved, width grows by at most the column gap.
FlatOrthogonalDrawing remove_zigzag(const FlatOrthogonalDrawing &od, const ZigZag &z);

// Theorem: flat y-monotone orthogonal -> flat VR, same y-coordinates,
// same row orders, same height.
FlatVisibilityRep ortho_to_vr(const FlatOrthogonalDrawing &od, bool normalize_x = true);

// Theorem: any poly-line drawing -> flat orthogonal drawing, same
// y-coordinates, same row orders, same height; y-monotone if input was.
FlatOrthogonalDrawing poly_to_ortho(const PolylineDrawing &pl, bool normalize_x = true);

// Deletes every column that holds no vertical edge segment and is not the
// only column of some vertex. Width of a connected drawing drops to at
// most max{m, n}.
FlatOrthogonalDrawing remove_redundant_columns(const FlatOrthogonalDrawing &od,
                                               bool normalize_x = true);
FlatVisibilityRep remove_redundant_columns(const FlatVisibilityRep &vr,
                                           bool normalize_x = true);

} // namespace flatvis
