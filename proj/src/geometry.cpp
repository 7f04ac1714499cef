#include "flatvis/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace flatvis {

int orientation(const Point &a, const Point &b, const Point &c) {
    Rational cr = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sgn(cr);
}

bool point_on_segment(const Point &p, const Segment &s) {
    if (s.degenerate()) return p == s.a;
    if (orientation(s.a, s.b, p) != 0) return false;
    return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
           std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

namespace {

bool is_endpoint_of(const Point &p, const Segment &s) { return p == s.a || p == s.b; }

// Collinear case: how do the two segments overlap along their common line?
IntersectionKind collinear_kind(const Segment &s1, const Segment &s2) {
    // Order points along the line by (x, y).
    auto lt = [](const Point &p, const Point &q) {
        if (p.x != q.x) return p.x < q.x;
        return p.y < q.y;
    };
    Point a1 = s1.a, b1 = s1.b, a2 = s2.a, b2 = s2.b;
    if (lt(b1, a1)) std::swap(a1, b1);
    if (lt(b2, a2)) std::swap(a2, b2);
    const Point &lo = lt(a1, a2) ? a2 : a1; // max of the two lower ends
    const Point &hi = lt(b1, b2) ? b1 : b2; // min of the two upper ends
    if (lt(hi, lo)) return IntersectionKind::None;
    if (lo == hi) {
        if (is_endpoint_of(lo, s1) && is_endpoint_of(lo, s2))
            return IntersectionKind::EndpointShared;
        return IntersectionKind::Crossing; // endpoint touching an interior
    }
    return IntersectionKind::Overlapping;
}

} // namespace

IntersectionKind segments_intersect(const Segment &s1, const Segment &s2) {
    // Degenerate segments behave as points.
    if (s1.degenerate() && s2.degenerate()) {
        if (s1.a != s2.a) return IntersectionKind::None;
        return IntersectionKind::EndpointShared;
    }
    if (s1.degenerate() || s2.degenerate()) {
        const Point &p = s1.degenerate() ? s1.a : s2.a;
        const Segment &s = s1.degenerate() ? s2 : s1;
        if (!point_on_segment(p, s)) return IntersectionKind::None;
        return is_endpoint_of(p, s) ? IntersectionKind::EndpointShared
                                    : IntersectionKind::Crossing;
    }

    int o1 = orientation(s1.a, s1.b, s2.a);
    int o2 = orientation(s1.a, s1.b, s2.b);
    int o3 = orientation(s2.a, s2.b, s1.a);
    int o4 = orientation(s2.a, s2.b, s1.b);

    if (o1 == 0 && o2 == 0) return collinear_kind(s1, s2);

    bool straddle1 = (o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0);
    bool straddle2 = (o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0);
    if (straddle1 && straddle2) return IntersectionKind::Crossing;

    // Touching cases: some endpoint lies on the other segment.
    for (const Point *p : {&s2.a, &s2.b}) {
        if (point_on_segment(*p, s1)) {
            if (is_endpoint_of(*p, s1) && is_endpoint_of(*p, s2))
                return IntersectionKind::EndpointShared;
            return IntersectionKind::Crossing;
        }
    }
    for (const Point *p : {&s1.a, &s1.b}) {
        if (point_on_segment(*p, s2)) {
            if (is_endpoint_of(*p, s1) && is_endpoint_of(*p, s2))
                return IntersectionKind::EndpointShared;
            return IntersectionKind::Crossing;
        }
    }
    return IntersectionKind::None;
}

Rational line_row_intersection(const Point &p, const Point &q, const Rational &row) {
    if (p.y == q.y) throw std::domain_error("degenerate line");
    // x = p.x + (q.x - p.x) * (row - p.y) / (q.y - p.y)
    return p.x + (q.x - p.x) * (row - p.y) / (q.y - p.y);
}

} // namespace flatvis
