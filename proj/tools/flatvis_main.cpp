// flatvis: validate, transform, generate and render planar grid drawings.
#include "flatvis/drawing.hpp"
#include "flatvis/errors.hpp"
#include "flatvis/generate.hpp"
#include "flatvis/json_io.hpp"
#include "flatvis/svg.hpp"
#include "flatvis/transform_ortho.hpp"
#include "flatvis/transform_vr.hpp"
#include "flatvis/upward.hpp"
#include "flatvis/validate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace flatvis;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct StageDef {
    Style in, out;
    std::function<Drawing(const Drawing &, bool normalize)> run;
};

// Straight-line drawings are poly-line drawings, and flat VRs are flat
// orthogonal drawings; the stages take either.
PolylineDrawing as_polyline(const Drawing &d) {
    if (auto *pl = std::get_if<PolylineDrawing>(&d)) return *pl;
    const auto &sl = std::get<StraightLineDrawing>(d);
    PolylineDrawing pl;
    pl.graph = sl.graph;
    pl.pos = sl.pos;
    pl.bends.assign(sl.graph.m(), {});
    return pl;
}

FlatOrthogonalDrawing as_ortho(const Drawing &d) {
    if (auto *od = std::get_if<FlatOrthogonalDrawing>(&d)) return *od;
    return vr_as_ortho(std::get<FlatVisibilityRep>(d));
}

const std::map<std::string, StageDef> &stages() {
    static const std::map<std::string, StageDef> s = {
        {"pl2od", {Style::Polyline, Style::FlatOrtho,
                   [](const Drawing &d, bool nx) {
                       return Drawing(poly_to_ortho(as_polyline(d), nx));
                   }}},
        {"od2vr", {Style::FlatOrtho, Style::FlatVR,
                   [](const Drawing &d, bool nx) { return Drawing(ortho_to_vr(as_ortho(d), nx)); }}},
        {"vr2sl", {Style::FlatVR, Style::StraightLine,
                   [](const Drawing &d, bool nx) {
                       return Drawing(vr_to_straightline(std::get<FlatVisibilityRep>(d), nullptr, nx));
                   }}},
        {"od2pl", {Style::FlatOrtho, Style::Polyline,
                   [](const Drawing &d, bool nx) {
                       return Drawing(ortho_to_polyline(as_ortho(d), nx));
                   }}},
        {"compact", {Style::FlatVR, Style::FlatVR,
                     [](const Drawing &d, bool nx) {
                         if (auto *vr = std::get_if<FlatVisibilityRep>(&d))
                             return Drawing(remove_redundant_columns(*vr, nx));
                         return Drawing(remove_redundant_columns(std::get<FlatOrthogonalDrawing>(d), nx));
                     }}},
        {"upward2vr", {Style::StraightLine, Style::FlatVR,
                       [](const Drawing &d, bool) {
                           return Drawing(upward_to_vertical_vr(std::get<StraightLineDrawing>(d)));
                       }}},
        {"vr2upward", {Style::FlatVR, Style::StraightLine,
                       [](const Drawing &d, bool) {
                           return Drawing(vertical_vr_to_upward(std::get<FlatVisibilityRep>(d)));
                       }}},
    };
    return s;
}

bool stage_accepts(const std::string &name, Style in) {
    auto &def = stages().at(name);
    if (name == "compact" || name == "od2vr" || name == "od2pl")
        return in == Style::FlatVR || in == Style::FlatOrtho;
    if (name == "pl2od") return in == Style::Polyline || in == Style::StraightLine;
    return def.in == in;
}

void verify_stage(const Drawing &in, const Drawing &out, const std::string &name) {
    ValidationReport rep = check_planar(out);
    if (!rep.ok)
        throw XformError("stage " + name + ": output failed exact planarity validation", true);
    if (!same_rows_and_orders(in, out))
        throw XformError("stage " + name + ": row orders not preserved", true);
    if (metrics(in).height != metrics(out).height)
        throw XformError("stage " + name + ": height changed", true);
}

std::string stats_json(const Drawing &d) {
    Metrics m = metrics(d);
    const Graph &g = graph_of(d);
    nlohmann::ordered_json j;
    j["height"] = m.height.get_str();
    j["width"] = m.width.get_str();
    j["bends"] = m.bends;
    j["n"] = g.n;
    j["m"] = g.m();
    nlohmann::ordered_json rows;
    for (auto &[row, vs] : row_orders(d)) rows[row.get_str()] = vs.size();
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string trace_json(const PlacementResult &res) {
    nlohmann::ordered_json j;
    j["restarts"] = res.restarts;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (auto &e : res.order) {
        nlohmann::ordered_json ej;
        ej["vertex"] = e.item;
        ej["x"] = e.x.get_str();
        nlohmann::ordered_json bs = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < e.bounds.size(); ++k) {
            auto &b = e.bounds[k];
            nlohmann::ordered_json bj;
            bj["kind"] = b.is_row ? "row" : "visibility";
            if (!b.is_row) {
                bj["predecessor"] = b.pred;
                bj["obstacle"] = b.obstacle;
            }
            bj["base"] = b.base.get_str();
            bj["bound"] = b.value.get_str();
            bj["binding"] = static_cast<int>(k) == e.binding;
            bs.push_back(std::move(bj));
        }
        ej["bounds"] = std::move(bs);
        entries.push_back(std::move(ej));
    }
    j["vertices"] = std::move(entries);
    return j.dump(2) + "\n";
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << text;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"planar grid drawings: height-preserving transformations between "
                 "straight-line, poly-line, flat orthogonal and flat visibility styles"};
    app.require_subcommand(1);

    // validate
    auto *cmd_val = app.add_subcommand("validate", "check a drawing file, print the report as JSON");
    std::vector<std::string> val_files;
    int jobs = 1;
    cmd_val->add_option("files", val_files, "drawing files")->required()->expected(-1);
    cmd_val->add_option("--jobs", jobs, "parallel validation across files");

    // gen
    auto *cmd_gen = app.add_subcommand("gen", "generate an instance");
    std::string gen_out, gen_style = "straightline", gen_family;
    std::uint64_t gen_seed = 0;
    std::size_t gen_n = 8, gen_m = 0;
    long gen_h = 4;
    bool gen_connected = false;
    cmd_gen->add_option("out", gen_out, "output file")->required();
    cmd_gen->add_option("--style", gen_style,
                        "straightline|polyline|flatortho|flatvr|upward");
    cmd_gen->add_option("--n", gen_n, "vertex count");
    cmd_gen->add_option("--height", gen_h, "target height (rows)");
    cmd_gen->add_option("--seed", gen_seed, "PRNG seed");
    cmd_gen->add_option("--m", gen_m, "target edge count (0 = default density)");
    cmd_gen->add_flag("--connected", gen_connected, "retry until connected");
    cmd_gen->add_option("--family", gen_family, "'exp' builds the adversarial width family");

    // transforms
    struct XformCmd {
        CLI::App *cmd;
        std::string name, in, out;
        bool no_normalize = false, no_verify = false;
        std::string trace_file;
    };
    std::vector<XformCmd> xcmds;
    xcmds.reserve(stages().size()); // CLI11 keeps pointers into the elements
    for (auto &[name, def] : stages()) {
        (void)def;
        auto *c = app.add_subcommand(name, "transform: " + name);
        xcmds.push_back({c, name});
        auto &x = xcmds.back();
        c->add_option("in", x.in, "input drawing")->required();
        c->add_option("out", x.out, "output drawing")->required();
        c->add_flag("--no-normalize", x.no_normalize, "keep raw coordinates");
        c->add_flag("--no-verify", x.no_verify, "skip input validation and output assertions");
        if (name == "vr2sl")
            c->add_option("--trace-bounds", x.trace_file, "dump per-vertex bounds as JSON");
    }

    // pipeline
    auto *cmd_pipe = app.add_subcommand("pipeline", "run a stage list");
    std::string pipe_in, pipe_out, pipe_stages, pipe_dir;
    bool pipe_no_verify = false;
    cmd_pipe->add_option("in", pipe_in)->required();
    cmd_pipe->add_option("out", pipe_out)->required();
    cmd_pipe->add_option("--stages", pipe_stages, "comma-separated, e.g. pl2od,od2vr,vr2sl");
    cmd_pipe->add_option("--emit-intermediates", pipe_dir, "directory for per-stage outputs");
    cmd_pipe->add_flag("--no-verify", pipe_no_verify, "skip per-stage assertions");

    // stats
    auto *cmd_stats = app.add_subcommand("stats", "print height/width/bends as JSON");
    std::string stats_in;
    cmd_stats->add_option("in", stats_in)->required();

    // render-svg
    auto *cmd_svg = app.add_subcommand("render-svg", "render a drawing to SVG");
    std::string svg_in, svg_out;
    long svg_scale = 24;
    long long svg_threshold = 4096;
    cmd_svg->add_option("in", svg_in)->required();
    cmd_svg->add_option("out", svg_out)->required();
    cmd_svg->add_option("--scale", svg_scale, "pixels per grid unit");
    cmd_svg->add_option("--compress-threshold", svg_threshold,
                        "compress columns beyond this width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_val->parsed()) {
            std::vector<std::string> reports(val_files.size());
            std::vector<char> bad(val_files.size(), 0);
#ifdef _OPENMP
            omp_set_num_threads(std::max(1, jobs));
            #pragma omp parallel for schedule(dynamic) if (jobs > 1)
#endif
            for (long long i = 0; i < static_cast<long long>(val_files.size()); ++i) {
                try {
                    Drawing d = load_drawing_file(val_files[i]);
                    ValidationReport r = validate_drawing(d);
                    reports[i] = report_to_json(r);
                    bad[i] = r.ok ? 0 : 1;
                } catch (const std::exception &e) {
                    ValidationReport r;
                    r.add(Violation{"parse", {val_files[i]}, e.what()});
                    reports[i] = report_to_json(r);
                    bad[i] = 1;
                }
            }
            for (std::size_t i = 0; i < reports.size(); ++i) {
                if (val_files.size() > 1) std::cout << val_files[i] << ":\n";
                std::cout << reports[i];
            }
            return std::any_of(bad.begin(), bad.end(), [](char c) { return c; })
                       ? kExitValidation
                       : kExitOk;
        }

        if (cmd_gen->parsed()) {
            GenConfig cfg;
            cfg.seed = gen_seed;
            cfg.n = gen_n;
            cfg.h = gen_h;
            cfg.target_m = gen_m;
            cfg.require_connected = gen_connected;
            Drawing d;
            if (gen_family == "exp") d = gen_exponential_family(gen_n, BigInt(gen_h));
            else if (gen_family.empty()) {
                if (gen_style == "straightline") d = gen_random_straightline(cfg);
                else if (gen_style == "polyline") d = gen_random_polyline(cfg);
                else if (gen_style == "flatortho") d = gen_random_flat_ortho(cfg);
                else if (gen_style == "flatvr") d = gen_random_flat_vr(cfg);
                else if (gen_style == "upward") d = gen_random_upward(cfg);
                else throw CLI::ValidationError("--style", "unknown style " + gen_style);
            } else {
                throw CLI::ValidationError("--family", "unknown family " + gen_family);
            }
            FileMeta meta;
            meta.entries["generator"] = gen_family == "exp" ? "exp-family" : gen_style;
            meta.entries["seed"] = std::to_string(gen_seed);
            save_drawing_file(gen_out, d, meta);
            return kExitOk;
        }

        for (auto &x : xcmds) {
            if (!x.cmd->parsed()) continue;
            Drawing in = load_drawing_file(x.in);
            if (!stage_accepts(x.name, style_of(in)))
                throw ValidationError("stage " + x.name + " cannot take a " +
                                      style_name(style_of(in)) + " drawing");
            if (!x.no_verify) {
                ValidationReport r = validate_drawing(in);
                if (!r.ok) {
                    std::cerr << report_to_json(r);
                    throw ValidationError("input drawing is not valid");
                }
            }
            Drawing out;
            if (x.name == "vr2sl" && !x.trace_file.empty()) {
                PlacementResult trace;
                out = Drawing(vr_to_straightline(std::get<FlatVisibilityRep>(in), &trace,
                                                 !x.no_normalize));
                write_text(x.trace_file, trace_json(trace));
            } else {
                out = stages().at(x.name).run(in, !x.no_normalize);
            }
            if (!x.no_verify && x.name != "vr2upward")
                verify_stage(in, out, x.name);
            save_drawing_file(x.out, out);
            return kExitOk;
        }

        if (cmd_pipe->parsed()) {
            Drawing d = load_drawing_file(pipe_in);
            std::vector<std::string> names;
            std::stringstream ss(pipe_stages);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) names.push_back(tok);
            // type-check the whole pipeline up front
            Style cur = style_of(d);
            for (auto &nm : names) {
                if (!stages().count(nm)) throw CLI::ValidationError("--stages", "unknown stage " + nm);
                if (!stage_accepts(nm, cur))
                    throw CLI::ValidationError("--stages", "stage " + nm + " cannot follow a " +
                                                               std::string(style_name(cur)) +
                                                               " drawing");
                cur = nm == "compact" ? cur : stages().at(nm).out;
            }
            int idx = 0;
            for (auto &nm : names) {
                Drawing next = stages().at(nm).run(d, true);
                if (!pipe_no_verify && nm != "vr2upward") verify_stage(d, next, nm);
                d = std::move(next);
                if (!pipe_dir.empty()) {
                    std::filesystem::create_directories(pipe_dir);
                    save_drawing_file(pipe_dir + "/stage" + std::to_string(++idx) + "-" + nm +
                                          ".json",
                                      d);
                }
            }
            save_drawing_file(pipe_out, d);
            return kExitOk;
        }

        if (cmd_stats->parsed()) {
            Drawing d = load_drawing_file(stats_in);
            ValidationReport r = validate_drawing(d);
            if (!r.ok) {
                std::cerr << report_to_json(r);
                throw ValidationError("invalid drawing");
            }
            std::cout << stats_json(d);
            return kExitOk;
        }

        if (cmd_svg->parsed()) {
            Drawing d = load_drawing_file(svg_in);
            ValidationReport r = validate_drawing(d);
            if (!r.ok) {
                std::cerr << report_to_json(r);
                throw ValidationError("invalid drawing");
            }
            SvgOptions o;
            o.scale = svg_scale;
            o.compress_threshold = BigInt(static_cast<long>(svg_threshold));
            write_text(svg_out, render_svg(d, o));
            return kExitOk;
        }
    } catch (const CLI::ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const XformError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.internal ? kExitInternal : kExitValidation;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
