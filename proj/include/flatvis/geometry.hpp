// Exact planar predicates on points with rational x and integer-or-rational y.
#pragma once

#include "flatvis/numbers.hpp"

#include <optional>

namespace flatvis {

// Rows are integral in every serialized drawing, but transformation
// internals (channel tracks) briefly need rational y, so Point carries
// rationals for both axes and stays exact either way.
struct Point {
    Rational x;
    Rational y;

    bool operator==(const Point &o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point &o) const { return !(*this == o); }
};

inline Point make_point(const BigInt &x, const BigInt &y) {
    return Point{Rational(x), Rational(y)};
}

struct Segment {
    Point a;
    Point b;

    bool degenerate() const { return a == b; }
};

enum class IntersectionKind { None, EndpointShared, Crossing, Overlapping };

// Sign of the cross product (b-a) x (c-a). Exact.
int orientation(const Point &a, const Point &b, const Point &c);

bool point_on_segment(const Point &p, const Segment &s);

// Classifies how two segments meet. "EndpointShared" means the only common
// point is an endpoint of both; any other single common point is a Crossing;
// collinear segments sharing more than a point are Overlapping.
IntersectionKind segments_intersect(const Segment &s1, const Segment &s2);

// x-coordinate where the (infinite) line through p,q meets y = row.
// Throws std::domain_error for a horizontal line.
Rational line_row_intersection(const Point &p, const Point &q, const Rational &row);

} // namespace flatvis
