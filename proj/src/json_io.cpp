#include "flatvis/json_io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

using nlohmann::json;
using nlohmann::ordered_json;

namespace flatvis {

namespace {

std::string coord(const BigInt &v) { return v.get_str(); }

ordered_json point_json(const GridPoint &p) {
    return ordered_json::array({coord(p.x), coord(p.y)});
}

BigInt coord_of(const json &j, const char *field) {
    if (!j.is_string()) throw ParseError(std::string("coordinate field '") + field + "' must be a decimal string");
    try {
        return parse_bigint(j.get<std::string>());
    } catch (const std::invalid_argument &) {
        throw ParseError(std::string("bad coordinate in field '") + field + "': " + j.get<std::string>());
    }
}

GridPoint point_of(const json &j, const char *field) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(std::string("field '") + field + "' must be a [x,y] pair");
    return GridPoint{coord_of(j[0], field), coord_of(j[1], field)};
}

Graph graph_of_json(const json &j) {
    Graph g;
    if (!j.contains("n") || !j["n"].is_number_unsigned())
        throw ParseError("field 'n' missing or not a non-negative integer");
    g.n = j["n"].get<std::size_t>();
    if (!j.contains("edges") || !j["edges"].is_array())
        throw ParseError("field 'edges' missing or not an array");
    for (auto &e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
            throw ParseError("field 'edges' entries must be [u,v] id pairs");
        g.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    if (j.contains("directed")) {
        if (!j["directed"].is_boolean()) throw ParseError("field 'directed' must be boolean");
        g.directed = j["directed"].get<bool>();
    }
    try {
        g.validate();
    } catch (const std::invalid_argument &e) {
        throw ValidationError(std::string("invalid graph: ") + e.what());
    }
    return g;
}

Box box_of(const json &j) {
    if (!j.is_object()) throw ParseError("field 'box' entries must be objects");
    for (const char *f : {"y", "xl", "xr"})
        if (!j.contains(f)) throw ParseError(std::string("box missing field '") + f + "'");
    Box b;
    b.y = coord_of(j["y"], "box.y");
    b.xl = coord_of(j["xl"], "box.xl");
    b.xr = coord_of(j["xr"], "box.xr");
    b.ytop = j.contains("ytop") ? coord_of(j["ytop"], "box.ytop") : b.y;
    if (b.xl > b.xr) throw ValidationError("box has xl > xr");
    if (b.ytop < b.y) throw ValidationError("box has ytop < y");
    return b;
}

ordered_json box_json(const Box &b) {
    ordered_json j;
    j["y"] = coord(b.y);
    j["xl"] = coord(b.xl);
    j["xr"] = coord(b.xr);
    if (!b.flat()) j["ytop"] = coord(b.ytop);
    return j;
}

std::vector<GridPoint> path_of(const json &j, const char *field) {
    if (!j.is_array()) throw ParseError(std::string("field '") + field + "' entries must be arrays of points");
    std::vector<GridPoint> pts;
    for (auto &p : j) pts.push_back(point_of(p, field));
    return pts;
}

} // namespace

void check_structure(const Drawing &d) {
    const Graph &g = graph_of(d);
    try {
        g.validate();
    } catch (const std::invalid_argument &e) {
        throw ValidationError(std::string("invalid graph: ") + e.what());
    }

    auto require = [](bool ok, const char *msg) {
        if (!ok) throw ValidationError(msg);
    };

    if (auto *sl = std::get_if<StraightLineDrawing>(&d)) {
        require(sl->pos.size() == g.n, "pos size != n");
        std::set<std::pair<std::string, std::string>> seen;
        for (auto &p : sl->pos)
            require(seen.insert({p.x.get_str(), p.y.get_str()}).second, "duplicate vertex points");
    } else if (auto *pl = std::get_if<PolylineDrawing>(&d)) {
        require(pl->pos.size() == g.n, "pos size != n");
        require(pl->bends.size() == g.m(), "bends size != m");
        std::set<std::pair<std::string, std::string>> seen;
        for (auto &p : pl->pos)
            require(seen.insert({p.x.get_str(), p.y.get_str()}).second, "duplicate vertex points");
        for (std::size_t e = 0; e < g.m(); ++e) {
            GridPoint prev = pl->pos[g.edges[e].first];
            for (auto &b : pl->bends[e]) {
                require(!(b == prev), "zero-length segment in polyline");
                prev = b;
            }
            require(!(pl->pos[g.edges[e].second] == prev), "zero-length segment in polyline");
        }
    } else if (auto *od = std::get_if<FlatOrthogonalDrawing>(&d)) {
        require(od->box.size() == g.n, "box size != n");
        require(od->route.size() == g.m(), "route size != m");
        for (auto &b : od->box)
            require(b.flat(), "flat orthogonal drawing requires flat boxes");
        for (std::size_t e = 0; e < g.m(); ++e) {
            auto &r = od->route[e];
            require(r.size() >= 2, "route needs at least its two attachment points");
            for (std::size_t i = 0; i + 1 < r.size(); ++i) {
                bool horizontal = r[i].y == r[i + 1].y;
                bool vertical = r[i].x == r[i + 1].x;
                require(horizontal || vertical, "diagonal route segment");
                if (i + 2 == r.size() && r.size() == 2) continue; // degenerate touch allowed
                require(!(r[i] == r[i + 1]), "zero-length route segment");
            }
            auto on_box = [](const GridPoint &p, const Box &b) {
                return p.y >= b.y && p.y <= b.ytop && p.x >= b.xl && p.x <= b.xr &&
                       (p.y == b.y || p.y == b.ytop || p.x == b.xl || p.x == b.xr);
            };
            require(on_box(r.front(), od->box[g.edges[e].first]), "route start not on u's box");
            require(on_box(r.back(), od->box[g.edges[e].second]), "route end not on v's box");
        }
    } else if (auto *vr = std::get_if<FlatVisibilityRep>(&d)) {
        require(vr->box.size() == g.n, "box size != n");
        require(vr->seg.size() == g.m(), "seg size != m");
        for (std::size_t e = 0; e < g.m(); ++e) {
            const Box &bu = vr->box[g.edges[e].first];
            const Box &bv = vr->box[g.edges[e].second];
            if (auto *h = std::get_if<HSeg>(&vr->seg[e])) {
                require(h->y == bu.y && h->y == bv.y, "horizontal edge must join boxes in one row");
                require(h->x1 == bu.xl || h->x1 == bu.xr, "horizontal edge must attach at a box end");
                require(h->x2 == bv.xl || h->x2 == bv.xr, "horizontal edge must attach at a box end");
            } else {
                auto &v = std::get<VSeg>(vr->seg[e]);
                require(v.x >= bu.xl && v.x <= bu.xr && v.x >= bv.xl && v.x <= bv.xr,
                        "vertical edge column outside a box interval");
                require(v.y1 == bu.y || v.y1 == bu.ytop, "vertical edge must attach at u's box row");
                require(v.y2 == bv.y || v.y2 == bv.ytop, "vertical edge must attach at v's box row");
                require(v.y1 != v.y2, "vertical edge with equal attachment rows");
            }
        }
        // Flatness forces at most one horizontal edge per box side.
        std::map<std::pair<VertexId, bool>, int> sides; // (vertex, is-right-side)
        for (std::size_t e = 0; e < g.m(); ++e) {
            if (std::get_if<HSeg>(&vr->seg[e])) {
                VertexId u = g.edges[e].first, v = g.edges[e].second;
                bool v_is_right = vr->box[u].xr <= vr->box[v].xl;
                if (++sides[{u, v_is_right}] > 1 || ++sides[{v, !v_is_right}] > 1)
                    throw ValidationError("more than one horizontal edge on a box side");
            }
        }
    }
}

std::string save_drawing(const Drawing &d, const FileMeta &meta) {
    ordered_json j;
    j["format"] = 1;
    j["style"] = style_name(style_of(d));
    const Graph &g = graph_of(d);
    j["n"] = g.n;
    ordered_json edges = ordered_json::array();
    for (auto &[u, v] : g.edges) edges.push_back(ordered_json::array({u, v}));
    j["edges"] = std::move(edges);
    if (g.directed) j["directed"] = true;

    if (auto *sl = std::get_if<StraightLineDrawing>(&d)) {
        ordered_json pos = ordered_json::array();
        for (auto &p : sl->pos) pos.push_back(point_json(p));
        j["pos"] = std::move(pos);
    } else if (auto *pl = std::get_if<PolylineDrawing>(&d)) {
        ordered_json pos = ordered_json::array();
        for (auto &p : pl->pos) pos.push_back(point_json(p));
        j["pos"] = std::move(pos);
        ordered_json bends = ordered_json::array();
        for (auto &bl : pl->bends) {
            ordered_json b = ordered_json::array();
            for (auto &p : bl) b.push_back(point_json(p));
            bends.push_back(std::move(b));
        }
        j["bends"] = std::move(bends);
    } else if (auto *od = std::get_if<FlatOrthogonalDrawing>(&d)) {
        ordered_json boxes = ordered_json::array();
        for (auto &b : od->box) boxes.push_back(box_json(b));
        j["box"] = std::move(boxes);
        ordered_json routes = ordered_json::array();
        for (auto &r : od->route) {
            ordered_json rj = ordered_json::array();
            for (auto &p : r) rj.push_back(point_json(p));
            routes.push_back(std::move(rj));
        }
        j["route"] = std::move(routes);
    } else if (auto *vr = std::get_if<FlatVisibilityRep>(&d)) {
        ordered_json boxes = ordered_json::array();
        for (auto &b : vr->box) boxes.push_back(box_json(b));
        j["box"] = std::move(boxes);
        ordered_json segs = ordered_json::array();
        for (auto &s : vr->seg) {
            ordered_json sj;
            if (auto *h = std::get_if<HSeg>(&s)) {
                sj["kind"] = "h";
                sj["y"] = coord(h->y);
                sj["x1"] = coord(h->x1);
                sj["x2"] = coord(h->x2);
            } else {
                auto &v = std::get<VSeg>(s);
                sj["kind"] = "v";
                sj["x"] = coord(v.x);
                sj["y1"] = coord(v.y1);
                sj["y2"] = coord(v.y2);
            }
            segs.push_back(std::move(sj));
        }
        j["seg"] = std::move(segs);
    }

    if (!meta.entries.empty()) {
        ordered_json mj;
        for (auto &[k, v] : meta.entries) mj[k] = v;
        j["meta"] = std::move(mj);
    }
    return j.dump(2) + "\n";
}

Drawing load_drawing(const std::string &bytes, FileMeta *meta_out) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("top level must be an object");
    if (!j.contains("format") || !j["format"].is_number_integer() || j["format"].get<int>() != 1)
        throw ParseError("field 'format' missing or unsupported (expected 1)");
    if (!j.contains("style") || !j["style"].is_string())
        throw ParseError("field 'style' missing");
    std::string style = j["style"].get<std::string>();

    Graph g = graph_of_json(j);

    if (meta_out && j.contains("meta") && j["meta"].is_object()) {
        for (auto &[k, v] : j["meta"].items())
            if (v.is_string()) meta_out->entries[k] = v.get<std::string>();
    }

    Drawing d;
    if (style == "straightline") {
        StraightLineDrawing sl;
        sl.graph = std::move(g);
        if (!j.contains("pos") || !j["pos"].is_array() || j["pos"].size() != sl.graph.n)
            throw ParseError("field 'pos' missing or wrong length");
        for (auto &p : j["pos"]) sl.pos.push_back(point_of(p, "pos"));
        d = std::move(sl);
    } else if (style == "polyline") {
        PolylineDrawing pl;
        pl.graph = std::move(g);
        if (!j.contains("pos") || !j["pos"].is_array() || j["pos"].size() != pl.graph.n)
            throw ParseError("field 'pos' missing or wrong length");
        for (auto &p : j["pos"]) pl.pos.push_back(point_of(p, "pos"));
        if (!j.contains("bends") || !j["bends"].is_array() || j["bends"].size() != pl.graph.m())
            throw ParseError("field 'bends' missing or wrong length");
        for (auto &b : j["bends"]) pl.bends.push_back(path_of(b, "bends"));
        d = std::move(pl);
    } else if (style == "flatortho") {
        FlatOrthogonalDrawing od;
        od.graph = std::move(g);
        if (!j.contains("box") || !j["box"].is_array() || j["box"].size() != od.graph.n)
            throw ParseError("field 'box' missing or wrong length");
        for (auto &b : j["box"]) od.box.push_back(box_of(b));
        if (!j.contains("route") || !j["route"].is_array() || j["route"].size() != od.graph.m())
            throw ParseError("field 'route' missing or wrong length");
        for (auto &r : j["route"]) od.route.push_back(path_of(r, "route"));
        d = std::move(od);
    } else if (style == "flatvr") {
        FlatVisibilityRep vr;
        vr.graph = std::move(g);
        if (!j.contains("box") || !j["box"].is_array() || j["box"].size() != vr.graph.n)
            throw ParseError("field 'box' missing or wrong length");
        for (auto &b : j["box"]) vr.box.push_back(box_of(b));
        if (!j.contains("seg") || !j["seg"].is_array() || j["seg"].size() != vr.graph.m())
            throw ParseError("field 'seg' missing or wrong length");
        for (auto &s : j["seg"]) {
            if (!s.is_object() || !s.contains("kind") || !s["kind"].is_string())
                throw ParseError("field 'seg' entries need a 'kind'");
            std::string kind = s["kind"].get<std::string>();
            if (kind == "h") {
                vr.seg.push_back(HSeg{coord_of(s["y"], "seg.y"), coord_of(s["x1"], "seg.x1"),
                                      coord_of(s["x2"], "seg.x2")});
            } else if (kind == "v") {
                vr.seg.push_back(VSeg{coord_of(s["x"], "seg.x"), coord_of(s["y1"], "seg.y1"),
                                      coord_of(s["y2"], "seg.y2")});
            } else {
                throw ParseError("seg.kind must be 'h' or 'v'");
            }
        }
        d = std::move(vr);
    } else {
        throw ParseError("unknown style: " + style);
    }

    check_structure(d);
    return d;
}

Drawing load_drawing_file(const std::string &path, FileMeta *meta_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_drawing(ss.str(), meta_out);
}

void save_drawing_file(const std::string &path, const Drawing &d, const FileMeta &meta) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << save_drawing(d, meta);
}

} // namespace flatvis
