#include "flatvis/svg.hpp"

#include <algorithm>
#include <sstream>

namespace flatvis {

namespace {

// Pixel mapping for the x axis. Exponential-width drawings get a
// bit-length compression: position = bits(v)*S + next-10-bits fraction,
// monotone (never order-reversing) and integer-exact.
struct XMap {
    bool compress = false;
    BigInt minx;
    long scale = 24;

    long long map(const BigInt &x) const {
        BigInt v = x - minx;
        if (!compress) return v.get_si() * scale;
        if (v == 0) return 0;
        std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
        BigInt frac = bits > 10 ? BigInt(v >> static_cast<unsigned long>(bits - 10)) : v;
        long f = frac.get_si();
        while (f > 0 && f < 512) f <<= 1; // normalize to [512, 1024)
        return (static_cast<long long>(bits) * 1024 + (f - 512)) * scale / 256;
    }
};

std::string num(long long v) { return std::to_string(v); }

} // namespace

std::string render_svg(const Drawing &d, const SvgOptions &opts) {
    auto pts = defining_points(d);
    if (pts.empty()) throw std::invalid_argument("empty drawing");
    BigInt minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
    for (auto &p : pts) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }

    XMap xm;
    xm.minx = minx;
    xm.scale = opts.scale;
    xm.compress = (maxx - minx + 1) > opts.compress_threshold;

    const long s = opts.scale;
    const long long W = xm.map(maxx) + 2 * s;
    long hrows = BigInt(maxy - miny).get_si();
    const long long H = static_cast<long long>(hrows) * s + 2 * s;
    auto X = [&](const BigInt &x) { return xm.map(x) + s; };
    auto Y = [&](const BigInt &y) { return (BigInt(maxy - y)).get_si() * s + s; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\""
       << num(H) << "\" viewBox=\"0 0 " << num(W) << " " << num(H) << "\">\n";

    // row gridlines
    for (BigInt r = miny; r <= maxy; ++r)
        os << "<line x1=\"0\" y1=\"" << num(Y(r)) << "\" x2=\"" << num(W) << "\" y2=\""
           << num(Y(r)) << "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";

    auto edge_path = [&](const std::vector<GridPoint> &chain) {
        std::ostringstream p;
        for (std::size_t i = 0; i < chain.size(); ++i)
            p << (i == 0 ? "M" : " L") << num(X(chain[i].x)) << " " << num(Y(chain[i].y));
        os << "<path d=\"" << p.str() << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"2\"/>\n";
    };
    auto vertex_dot = [&](const GridPoint &p, std::size_t id) {
        os << "<circle cx=\"" << num(X(p.x)) << "\" cy=\"" << num(Y(p.y)) << "\" r=\"" << num(s / 5)
           << "\" fill=\"#1f5fbf\"/>\n";
        os << "<text x=\"" << num(X(p.x) + s / 4) << "\" y=\"" << num(Y(p.y) - s / 4)
           << "\" font-size=\"" << num(s / 2) << "\" fill=\"#1f5fbf\">" << id << "</text>\n";
    };
    // vertex boxes drawn slightly thick so segments read as boxes
    auto vertex_box = [&](const Box &b, std::size_t id) {
        long long x0 = X(b.xl), x1 = X(b.xr);
        long long y1 = Y(b.ytop), y0 = Y(b.y);
        long pad = s / 6;
        os << "<rect x=\"" << num(x0 - pad / 2) << "\" y=\"" << num(y1 - pad) << "\" width=\""
           << num(x1 - x0 + pad) << "\" height=\"" << num(y0 - y1 + 2 * pad)
           << "\" fill=\"#1f5fbf\" fill-opacity=\"0.85\"/>\n";
        os << "<text x=\"" << num(x0) << "\" y=\"" << num(y1 - pad - 2) << "\" font-size=\""
           << num(s / 2) << "\" fill=\"#1f5fbf\">" << id << "</text>\n";
    };

    if (auto *sl = std::get_if<StraightLineDrawing>(&d)) {
        for (auto &[u, v] : sl->graph.edges) edge_path({sl->pos[u], sl->pos[v]});
        for (std::size_t v = 0; v < sl->graph.n; ++v) vertex_dot(sl->pos[v], v);
    } else if (auto *pl = std::get_if<PolylineDrawing>(&d)) {
        for (std::size_t e = 0; e < pl->graph.m(); ++e) {
            std::vector<GridPoint> chain{pl->pos[pl->graph.edges[e].first]};
            for (auto &b : pl->bends[e]) chain.push_back(b);
            chain.push_back(pl->pos[pl->graph.edges[e].second]);
            edge_path(chain);
        }
        for (std::size_t v = 0; v < pl->graph.n; ++v) vertex_dot(pl->pos[v], v);
    } else if (auto *od = std::get_if<FlatOrthogonalDrawing>(&d)) {
        for (auto &r : od->route) edge_path(r);
        for (std::size_t v = 0; v < od->graph.n; ++v) vertex_box(od->box[v], v);
    } else if (auto *vr = std::get_if<FlatVisibilityRep>(&d)) {
        FlatOrthogonalDrawing as_od = vr_as_ortho(*vr);
        for (auto &r : as_od.route) edge_path(r);
        for (std::size_t v = 0; v < vr->graph.n; ++v) vertex_box(vr->box[v], v);
    }

    os << "</svg>\n";
    return os.str();
}

} // namespace flatvis
