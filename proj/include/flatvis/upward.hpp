// Upward planar drawings <-> visibility representations with all edges
// vertical, head above tail.
#pragma once

#include "flatvis/drawing.hpp"
#include "flatvis/errors.hpp"

namespace flatvis {

// True iff the drawing is directed and every edge's head lies strictly
// above its tail.
bool is_upward(const StraightLineDrawing &sl);

// Upward straight-line drawing -> flat VR whose edges are all vertical
// segments with the head above the tail.
FlatVisibilityRep upward_to_vertical_vr(const StraightLineDrawing &ud);

// Visibility representation (boxes may be tall) with all-vertical edges ->
// upward straight-line drawing. Tall boxes flatten onto their bottom row.
StraightLineDrawing vertical_vr_to_upward(const FlatVisibilityRep &vr);

} // namespace flatvis
