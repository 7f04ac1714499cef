// Instance generation: seeded random drawings in every style plus the
// adversarial family whose straight-line transform has exponential width.
#pragma once

#include "flatvis/drawing.hpp"

#include <cstdint>

namespace flatvis {

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t n = 1;
    BigInt h = 1;              // target height (rows 1..h)
    std::size_t target_m = 0;  // density knob; 0 = pick a default
    bool require_connected = false;
};

// Random distinct grid points within h rows; edges added greedily while the
// exact planarity check passes. Same seed, same instance, byte for byte.
StraightLineDrawing gen_random_straightline(const GenConfig &cfg);

// Straight-line instance with a share of edges redrawn through one bend.
PolylineDrawing gen_random_polyline(const GenConfig &cfg);

// gen_random_straightline piped through poly_to_ortho and ortho_to_vr.
FlatVisibilityRep gen_random_flat_vr(const GenConfig &cfg);

FlatOrthogonalDrawing gen_random_flat_ortho(const GenConfig &cfg);

// Random upward drawing of a DAG (directed, heads strictly above tails).
StraightLineDrawing gen_random_upward(const GenConfig &cfg);

// Height-h flat VR of width O(n) on which vr_to_straightline provably
// places vertex i (processing order, i >= 3) at x = 1+(h-2)+...+(h-2)^(i-3).
// certify re-runs the transformation and checks those coordinates exactly.
FlatVisibilityRep gen_exponential_family(std::size_t n, const BigInt &h, bool certify = true);

} // namespace flatvis
