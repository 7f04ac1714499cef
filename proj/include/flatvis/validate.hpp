// Exact checkers for the drawing invariants and the order/row predicates
// the transformations promise to preserve.
#pragma once

#include "flatvis/drawing.hpp"

#include <map>
#include <string>
#include <vector>

namespace flatvis {

struct Violation {
    std::string kind;              // "crossing", "overlap", "box-contact", ...
    std::vector<std::string> elements; // human-readable element names
    std::string witness;           // coordinates involved, when meaningful
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(Violation v) {
        ok = false;
        violations.push_back(std::move(v));
    }
};

// All-pairs exact intersection testing over the drawing's elements.
// check_planar uses OpenMP when compiled in; check_planar_serial is the
// single-threaded reference the tests and benchmark compare against.
ValidationReport check_planar(const Drawing &d);
ValidationReport check_planar_serial(const Drawing &d);

// Structural + geometric validation in one report (never throws).
ValidationReport validate_drawing(const Drawing &d);

// True iff every edge path is y-monotone (horizontal plateaus allowed).
bool check_y_monotone(const Drawing &d);

// Counts interior horizontal plateaus of polyline edges (reported, accepted).
std::size_t plateau_count(const PolylineDrawing &pl);

// Occupied row -> vertex ids left-to-right. Keys are decimal row strings
// only where needed; we keep BigInt keys via std::map ordering.
std::map<BigInt, std::vector<VertexId>> row_orders(const Drawing &d);

// Same vertex y-coordinates and identical left-to-right vertex order per row.
// Throws std::invalid_argument on a vertex-set mismatch.
bool same_rows_and_orders(const Drawing &d1, const Drawing &d2);

// The y (row) a vertex occupies (box bottom row for box styles).
BigInt vertex_row(const Drawing &d, VertexId v);

std::string report_to_json(const ValidationReport &r);

} // namespace flatvis
