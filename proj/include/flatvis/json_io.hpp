// Versioned JSON drawing files. All coordinates travel as decimal strings:
// widths of transformed drawings overflow 64 bits quickly.
#pragma once

#include "flatvis/drawing.hpp"
#include "flatvis/errors.hpp"

#include <map>
#include <string>

namespace flatvis {

// Optional free-form metadata (generator seed etc.), kept across save/load.
struct FileMeta {
    std::map<std::string, std::string> entries;
};

// Serializes with "format": 1. Deterministic byte output for equal inputs.
std::string save_drawing(const Drawing &d, const FileMeta &meta = {});

// Parses and structurally validates. Throws ParseError on schema problems,
// ValidationError on invariant breaches (duplicate points, diagonal route
// segments, ragged arrays, empty graph, ...).
Drawing load_drawing(const std::string &bytes, FileMeta *meta_out = nullptr);

// Structural checks shared by load and the validators; throws ValidationError.
void check_structure(const Drawing &d);

Drawing load_drawing_file(const std::string &path, FileMeta *meta_out = nullptr);
void save_drawing_file(const std::string &path, const Drawing &d, const FileMeta &meta = {});

} // namespace flatvis
