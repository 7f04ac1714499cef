// Flat VR -> straight-line (height-preserving) and flat orthogonal ->
// poly-line (height- and width-preserving), plus the exact worst-case
// width table for the first transformation.
#pragma once

#include "flatvis/drawing.hpp"
#include "flatvis/placement.hpp"

namespace flatvis {

struct WidthBoundTable {
    BigInt h;
    // Index i in [2, n]; W[i] bounds every x in the prefix drawing of the
    // first i vertices, Wp[i] every x away from the extreme rows.
    std::vector<BigInt> W, Wp;
};

// W(2)=W'(2)=0, W'(i)=1+(h-2)W'(i-1), W(i)=1+(h-1)W'(i-1).
// Throws std::invalid_argument for n < 2 or h < 3.
WidthBoundTable width_bound_table(std::size_t n, const BigInt &h);

// Closed form 1 + (h-2) + ... + (h-2)^(i-3) == W'(i) for i >= 3.
BigInt wprime_closed_form(std::size_t i, const BigInt &h);

// Theorem: same y-coordinates, same left-to-right row orders, same height.
// Output x-coordinates are shifted so the leftmost column is 1; the trace
// keeps the raw engine values (leftmost x = 0).
StraightLineDrawing vr_to_straightline(const FlatVisibilityRep &vr,
                                       PlacementResult *trace_out = nullptr,
                                       bool normalize_x = true);

// Flat orthogonal -> poly-line with no more width and no more bends;
// y-monotone if the input was.
PolylineDrawing ortho_to_polyline(const FlatOrthogonalDrawing &od,
                                  bool normalize_x = true);

} // namespace flatvis
