#pragma once

#include "flatvis/drawing.hpp"

#include <string>

namespace flatvis {

struct SvgOptions {
    long scale = 24;                  // pixels per grid unit
    BigInt compress_threshold = 4096; // widths beyond this use bit-length compression
};

// Deterministic SVG: same drawing and options, same bytes.
std::string render_svg(const Drawing &d, const SvgOptions &opts = {});

} // namespace flatvis
