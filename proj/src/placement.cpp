#include "flatvis/placement.hpp"

#include "flatvis/geometry.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace flatvis {

std::optional<BigInt> PlacementState::row_bound(const BigInt &row, Rational *base_out,
                                                std::size_t *src_out) const {
    std::optional<Rational> best;
    std::size_t src = 0;
    for (std::size_t i = 0; i < inst_.items.size(); ++i) {
        if (!placed(i) || inst_.items[i].row != row) continue;
        Rational x(*x_[i]);
        if (!best || x > *best) { best = x; src = i; }
    }
    Rational rrow(row);
    for (auto &[a, b] : segs_) {
        const BigInt &ra = inst_.items[a].row, &rb = inst_.items[b].row;
        if ((ra < row && rb > row) || (rb < row && ra > row)) {
            Rational x = line_row_intersection(point_of(a), point_of(b), rrow);
            if (!best || x > *best) { best = x; src = a; }
        }
    }
    if (!best) return std::nullopt;
    if (base_out) *base_out = *best;
    if (src_out) *src_out = src;
    return floor_plus_one(*best);
}

std::optional<BigInt> PlacementState::visibility_bound(std::size_t vg, const BigInt &target_row,
                                                       Rational *base_out,
                                                       std::size_t *obstacle_out) const {
    if (!placed(vg)) throw XformError("visibility_bound: predecessor not placed", true);
    const BigInt &rg = inst_.items[vg].row;
    if (rg == target_row) throw XformError("visibility_bound: predecessor on target row", true);
    const BigInt &lo = rg < target_row ? rg : target_row;
    const BigInt &hi = rg < target_row ? target_row : rg;

    std::optional<Rational> best;
    std::size_t arg = 0;
    Point pg = point_of(vg);
    Rational rrow(target_row);
    for (std::size_t i = 0; i < inst_.items.size(); ++i) {
        if (!placed(i)) continue;
        const BigInt &ri = inst_.items[i].row;
        if (!(ri > lo && ri < hi)) continue; // strictly between only
        Rational xg = line_row_intersection(pg, point_of(i), rrow);
        if (!best || xg > *best) { best = xg; arg = i; }
    }
    if (!best) return std::nullopt;
    if (base_out) *base_out = *best;
    if (obstacle_out) *obstacle_out = arg;
    return floor_plus_one(*best);
}

namespace {

// One verified conflict, together with its two candidate order repairs:
// either the blocked vertex moves before the blocking wall's later endpoint,
// or the wall commits entirely before the predecessor whose sight it cut.
struct Conflict {
    std::vector<std::pair<std::size_t, std::size_t>> delay;  // {(i, w)}
    std::vector<std::pair<std::size_t, std::size_t>> commit; // {(a, p), (b, p)} or empty
};

// Kahn's algorithm preferring (sort_x, row, id); mandatory same-row
// left-to-right precedences plus the learned pairs.
std::optional<std::vector<std::size_t>> topo_order(
    const LayeredInstance &inst, const std::vector<std::pair<std::size_t, std::size_t>> &learned) {
    const std::size_t n = inst.items.size();
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    auto add = [&](std::size_t a, std::size_t b) {
        succ[a].push_back(b);
        ++indeg[b];
    };

    // same-row order by sort_x
    std::map<BigInt, std::vector<std::size_t>> rows;
    for (std::size_t i = 0; i < n; ++i) rows[inst.items[i].row].push_back(i);
    for (auto &[row, vs] : rows) {
        auto sorted = vs;
        std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
            if (inst.items[a].sort_x != inst.items[b].sort_x)
                return inst.items[a].sort_x < inst.items[b].sort_x;
            return a < b;
        });
        for (std::size_t k = 0; k + 1 < sorted.size(); ++k) add(sorted[k], sorted[k + 1]);
    }
    for (auto &[a, b] : learned) add(a, b);

    auto prio_lt = [&](std::size_t a, std::size_t b) {
        if (inst.items[a].sort_x != inst.items[b].sort_x)
            return inst.items[a].sort_x < inst.items[b].sort_x;
        if (inst.items[a].row != inst.items[b].row) return inst.items[a].row < inst.items[b].row;
        return a < b;
    };
    auto prio_gt = [&](std::size_t a, std::size_t b) { return prio_lt(b, a); };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(prio_gt)> ready(prio_gt);
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push(i);
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        std::size_t i = ready.top();
        ready.pop();
        order.push_back(i);
        for (std::size_t j : succ[i])
            if (--indeg[j] == 0) ready.push(j);
    }
    if (order.size() != n) return std::nullopt; // constraint cycle
    return order;
}

// Exact verification of the segments committed while placing item i.
std::optional<Conflict> verify_new_segments(const PlacementState &st, std::size_t i,
                                            const std::vector<std::size_t> &preds,
                                            const std::vector<std::size_t> &placed_items) {
    auto later_of = [&](std::size_t a, std::size_t b) {
        for (auto it = placed_items.rbegin(); it != placed_items.rend(); ++it)
            if (*it == a || *it == b) return *it;
        return b;
    };
    auto wall_conflict = [&](std::size_t p, std::size_t a, std::size_t b) {
        Conflict c;
        std::size_t w = later_of(a, b);
        if (i != w) c.delay = {{i, w}};
        if (a != p && b != p) c.commit = {{a, p}, {b, p}};
        return c;
    };

    for (std::size_t p : preds) {
        Segment s_new{st.point_of(p), st.point_of(i)};
        // against committed segments (excluding the ones ending at i)
        for (auto &[a, b] : st.segments()) {
            if (a == i || b == i) continue;
            Segment s_old{st.point_of(a), st.point_of(b)};
            IntersectionKind k = segments_intersect(s_new, s_old);
            if (k == IntersectionKind::None) continue;
            // Sharing exactly the point of p is fine when the old segment is
            // incident to p; anything else is a genuine conflict.
            if (k == IntersectionKind::EndpointShared && (a == p || b == p)) continue;
            return wall_conflict(p, a, b);
        }
        // new segment through an unrelated placed point
        for (std::size_t z : placed_items) {
            if (z == p || z == i) continue;
            if (point_on_segment(st.point_of(z), s_new)) {
                Conflict c;
                c.delay = {{i, z}};
                return c;
            }
        }
    }
    // the new point must not sit on an old segment
    for (auto &[a, b] : st.segments()) {
        if (a == i || b == i) continue;
        Segment s_old{st.point_of(a), st.point_of(b)};
        if (point_on_segment(st.point_of(i), s_old)) {
            Conflict c;
            std::size_t w = later_of(a, b);
            if (i != w) c.delay = {{i, w}};
            return c;
        }
    }
    return std::nullopt;
}

} // namespace

namespace {

// One pass over a fixed order. Returns the result or the first conflict.
struct RunOutcome {
    std::optional<PlacementResult> result;
    std::optional<Conflict> conflict;
};

RunOutcome run_once(const LayeredInstance &inst, const std::vector<std::vector<std::size_t>> &adj,
                    const std::vector<std::size_t> &order) {
    const std::size_t n = inst.items.size();
    PlacementState st(inst);
    PlacementResult res;
    res.x.resize(n);
    std::vector<std::size_t> placed_items;
    RunOutcome out;

    for (std::size_t i : order) {
        PlaceEntry entry;
        entry.item = i;

        Rational base;
        std::size_t src = 0;
        if (auto rb = st.row_bound(inst.items[i].row, &base, &src))
            entry.bounds.push_back(BoundRec{true, 0, src, base, *rb});

        std::vector<std::size_t> preds;
        for (std::size_t p : adj[i])
            if (st.placed(p)) preds.push_back(p);
        std::sort(preds.begin(), preds.end());

        for (std::size_t p : preds) {
            if (inst.items[p].row == inst.items[i].row) continue; // row bound covers
            // p must be the rightmost placed vertex in its row or its sight
            // is compromised; x_l order never trips this, learned orders can.
            for (std::size_t z : placed_items)
                if (z != p && inst.items[z].row == inst.items[p].row && st.x_of(z) > st.x_of(p)) {
                    Conflict c;
                    if (i != z) c.delay = {{i, z}};
                    out.conflict = c;
                    return out;
                }
            Rational vbase;
            std::size_t obst = 0;
            if (auto vb = st.visibility_bound(p, inst.items[i].row, &vbase, &obst))
                entry.bounds.push_back(BoundRec{false, p, obst, vbase, *vb});
        }

        BigInt x = 0;
        for (std::size_t k = 0; k < entry.bounds.size(); ++k)
            if (entry.bounds[k].value > x) {
                x = entry.bounds[k].value;
                entry.binding = static_cast<int>(k);
            }
        st.place(i, x);
        placed_items.push_back(i);
        for (std::size_t p : preds) st.commit_segment(p, i);

        if ((out.conflict = verify_new_segments(st, i, preds, placed_items))) return out;

        entry.x = x;
        res.order.push_back(std::move(entry));
    }
    for (std::size_t i = 0; i < n; ++i) res.x[i] = st.x_of(i);
    out.result = std::move(res);
    return out;
}

} // namespace

PlacementResult place_layered(const LayeredInstance &inst, int max_restarts) {
    const std::size_t n = inst.items.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto &[a, b] : inst.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    // Depth-first search over the per-conflict repair choices. Each decision
    // node carries the two alternatives; flipping exhausted nodes backtracks.
    struct Decision {
        Conflict c;
        int tried = 0; // 0: delay pending, 1: commit pending, 2: exhausted
    };
    std::vector<Decision> decisions;
    int attempts = 0;

    auto current_constraints = [&]() {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (auto &d : decisions) {
            const auto &alt = d.tried == 0 ? d.c.delay : d.c.commit;
            out.insert(out.end(), alt.begin(), alt.end());
        }
        return out;
    };
    auto advance = [&]() { // move to the next untried combination
        while (!decisions.empty()) {
            Decision &d = decisions.back();
            if (d.tried == 0 && !d.c.commit.empty()) {
                d.tried = 1;
                return true;
            }
            decisions.pop_back();
        }
        return false;
    };

    while (attempts++ <= max_restarts) {
        auto maybe_order = topo_order(inst, current_constraints());
        if (!maybe_order) {
            if (!advance())
                throw XformError("placement: no processing order satisfies the conflicts", true);
            continue;
        }
        RunOutcome out = run_once(inst, adj, *maybe_order);
        if (out.result) {
            out.result->restarts = attempts - 1;
            return *out.result;
        }
        Conflict &c = *out.conflict;
        if (c.delay.empty() && c.commit.empty()) {
            if (!advance())
                throw XformError("placement: unrepairable conflict", true);
            continue;
        }
        if (c.delay.empty()) { // only the commit alternative exists
            c.delay = c.commit;
            c.commit.clear();
        }
        decisions.push_back(Decision{std::move(c), 0});
    }
    throw XformError("placement: restart budget exhausted", true);
}

} // namespace flatvis
