// Left-to-right placement engine shared by the VR -> straight-line
// transformation and the flat-orthogonal -> poly-line transformation.
//
// Vertices are processed in x_l order and receive the smallest integer
// x satisfying two bound families:
//   row bound:        right of everything currently on the target row
//   visibility bound: right of the tangent from a placed cross-row
//                     predecessor over any drawing point strictly between
//                     the two rows, extended to the target row
// Every new segment is verified exactly. The x_l order alone does not
// guarantee a clear sight line on all inputs (long edges can sweep a row
// to the right of a vertex that still has pending neighbours), so on a
// verified conflict the engine learns an order constraint and re-runs;
// both bound families are unchanged by reordering, which keeps the
// worst-case width table valid for whatever order succeeds.
#pragma once

#include "flatvis/drawing.hpp"
#include "flatvis/errors.hpp"

#include <optional>
#include <vector>

namespace flatvis {

struct LayeredInstance {
    struct Item {
        Rational sort_x; // left edge in the source drawing; drives the order
        BigInt row;
    };
    std::vector<Item> items;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct BoundRec {
    bool is_row = true;
    std::size_t pred = 0;     // predecessor item (visibility bounds)
    std::size_t obstacle = 0; // tangency obstacle item (visibility bounds)
    Rational base;            // exact X or X_g the bound was derived from
    BigInt value;             // floor(base) + 1
};

struct PlaceEntry {
    std::size_t item;
    BigInt x;
    std::vector<BoundRec> bounds;
    int binding = -1; // index into bounds, -1 when the default 0 applied
};

struct PlacementResult {
    std::vector<BigInt> x;         // per item, pre-normalization
    std::vector<PlaceEntry> order; // processing order with full bound trace
    int restarts = 0;
};

// Partial drawing built left to right; exposes the two bound queries.
class PlacementState {
public:
    explicit PlacementState(const LayeredInstance &inst) : inst_(inst), x_(inst.items.size()) {}

    bool placed(std::size_t i) const { return x_[i].has_value(); }
    const BigInt &x_of(std::size_t i) const { return *x_[i]; }
    Point point_of(std::size_t i) const {
        return Point{Rational(*x_[i]), Rational(inst_.items[i].row)};
    }

    // floor(max x on the row) + 1 over placed points and exact segment
    // crossings; nullopt when the row is untouched.
    std::optional<BigInt> row_bound(const BigInt &row, Rational *base_out = nullptr,
                                    std::size_t *src_out = nullptr) const;

    // floor(X_g) + 1 where X_g is the rightmost tangent from placed item vg
    // through any placed point strictly between the rows, at target_row.
    // nullopt when no such point exists. Throws XformError(internal) if vg
    // is unplaced or sits on target_row.
    std::optional<BigInt> visibility_bound(std::size_t vg, const BigInt &target_row,
                                           Rational *base_out = nullptr,
                                           std::size_t *obstacle_out = nullptr) const;

    void place(std::size_t i, const BigInt &x) { x_[i] = x; }
    void commit_segment(std::size_t a, std::size_t b) { segs_.push_back({a, b}); }

    const std::vector<std::pair<std::size_t, std::size_t>> &segments() const { return segs_; }
    const LayeredInstance &instance() const { return inst_; }

private:
    const LayeredInstance &inst_;
    std::vector<std::optional<BigInt>> x_;
    std::vector<std::pair<std::size_t, std::size_t>> segs_;
};

// Places every item; throws XformError(internal=true) if no learned order
// succeeds within the restart budget.
PlacementResult place_layered(const LayeredInstance &inst, int max_restarts = 64);

} // namespace flatvis
