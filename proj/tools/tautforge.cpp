// tautforge: taut ideal triangulations from the command line.
//
// exit codes: 0 success, 1 invalid input, 2 property violation
// (a failed internal certificate; indicates a bug), 3 construction
// failure (degenerate layering).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "tautforge/carried.hpp"
#include "tautforge/discgeo.hpp"
#include "tautforge/layering.hpp"
#include "tautforge/ptorus.hpp"
#include "tautforge/surface.hpp"
#include "tautforge/taut.hpp"
#include "tautforge/tri3.hpp"

using nlohmann::json;
using namespace tautforge;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error(0, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

// honored as a cap; all computations here run on one thread
void read_thread_cap() {
    const char* env = std::getenv("TAUTFORGE_THREADS");
    if (!env) return;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || v < 0) throw validation_error("TAUTFORGE_THREADS must be a non-negative integer");
}

Coorientation nth_taut(const IdealTriangulation& tri, int k) {
    auto structures = enumerate_taut(tri);
    if (k < 0 || k >= static_cast<int>(structures.size()))
        throw validation_error("--coor index out of range: " + std::to_string(k) + " of " +
                               std::to_string(structures.size()) + " taut structures");
    return structures[static_cast<size_t>(k)];
}

json coor_to_json(const IdealTriangulation& tri, const Coorientation& coor) {
    json rows = json::array();
    auto flags = coor.raw_flags(tri);
    for (int t = 0; t < tri.tet_count(); ++t) {
        json row = json::array();
        for (int f = 0; f < 4; ++f) row.push_back(flags[static_cast<size_t>(t)][static_cast<size_t>(f)] ? "+" : "-");
        rows.push_back(row);
    }
    return rows;
}

std::string coor_line(const IdealTriangulation& tri, const Coorientation& coor) {
    auto flags = coor.raw_flags(tri);
    std::string s;
    for (int t = 0; t < tri.tet_count(); ++t) {
        if (t) s += "  ";
        s += "tet" + std::to_string(t) + ":";
        for (int f = 0; f < 4; ++f) s += flags[static_cast<size_t>(t)][static_cast<size_t>(f)] ? '+' : '-';
    }
    return s;
}

int cmd_validate(const std::string& file, bool as_json) {
    ParsedFile pf = parse_triangulation(read_file(file));
    ValidationReport r = validate(pf.tri);
    if (as_json) {
        json j;
        j["tets"] = pf.tri.tet_count();
        // mirror of the text format's fields
        json table = json::array();
        for (int t = 0; t < pf.tri.tet_count(); ++t) {
            json row = json::array();
            for (int f = 0; f < 4; ++f) {
                const Gluing& g = pf.tri.gluing(t, f);
                row.push_back({{"tet", g.to.tet}, {"perm", g.perm.str()}});
            }
            table.push_back(row);
        }
        j["gluings"] = table;
        if (pf.coor_out) {
            json rows = json::array();
            for (int t = 0; t < pf.tri.tet_count(); ++t) {
                json row = json::array();
                for (int f = 0; f < 4; ++f)
                    row.push_back((*pf.coor_out)[static_cast<size_t>(t)][static_cast<size_t>(f)] ? "+" : "-");
                rows.push_back(row);
            }
            j["coor"] = rows;
        }
        j["orientable"] = r.orientable;
        j["connected"] = r.connected;
        j["edge_classes"] = r.edge_class_count;
        j["edge_degrees"] = r.edge_degrees;
        j["cusps"] = r.cusp_count;
        j["cusp_eulers"] = r.cusp_eulers;
        j["all_cusps_tori"] = r.all_cusps_tori;
        j["has_coor"] = pf.coor_out.has_value();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "tets:           " << pf.tri.tet_count() << "\n";
        std::cout << "orientable:     " << (r.orientable ? "yes" : "no") << "\n";
        std::cout << "connected:      " << (r.connected ? "yes" : "no") << "\n";
        std::cout << "edge classes:   " << r.edge_class_count << " (degrees:";
        for (int d : r.edge_degrees) std::cout << " " << d;
        std::cout << ")\n";
        std::cout << "cusps:          " << r.cusp_count << " (euler:";
        for (int e : r.cusp_eulers) std::cout << " " << e;
        std::cout << ")\n";
        std::cout << "all cusps tori: " << (r.all_cusps_tori ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_taut_enumerate(const std::string& file, bool as_json) {
    ParsedFile pf = parse_triangulation(read_file(file));
    auto structures = enumerate_taut(pf.tri);
    if (as_json) {
        json j;
        j["count"] = structures.size();
        json list = json::array();
        for (const auto& c : structures) list.push_back(coor_to_json(pf.tri, c));
        j["structures"] = list;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << structures.size() << " taut structure(s)\n";
        for (size_t k = 0; k < structures.size(); ++k)
            std::cout << "  #" << k << "  " << coor_line(pf.tri, structures[k]) << "\n";
    }
    return 0;
}

int cmd_taut_check(const std::string& file, bool as_json) {
    ParsedFile pf = parse_triangulation(read_file(file));
    if (!pf.coor_out) throw validation_error("file has no coor block to check");
    Coorientation coor = Coorientation::from_raw_flags(pf.tri, *pf.coor_out);
    ValidationReport rep = validate(pf.tri);
    auto edges = edge_classes(pf.tri);
    bool tet_ok = check_tet_condition(pf.tri, coor);
    bool full = check_full_taut(pf.tri, coor, edges);
    bool p9 = rep.all_cusps_tori ? check_prop9(pf.tri, coor, edges, rep) : false;
    if (as_json) {
        json j;
        j["tet_condition"] = tet_ok;
        j["full_taut"] = full;
        if (rep.all_cusps_tori) j["prop9"] = p9;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "tet condition: " << (tet_ok ? "pass" : "fail") << "\n";
        std::cout << "full taut:     " << (full ? "pass" : "fail") << "\n";
        if (rep.all_cusps_tori) std::cout << "prop9 form:    " << (p9 ? "pass" : "fail") << "\n";
    }
    return 0;
}

MonodromySpec spec_from_json(const std::string& text, const std::string& dir) {
    json j = json::parse(text);
    MonodromySpec spec;
    if (j.contains("base_file"))
        spec.base = parse_surface(read_file(dir + j["base_file"].get<std::string>()));
    else if (j.contains("base"))
        spec.base = parse_surface(j["base"].get<std::string>());
    else
        throw validation_error("layer spec needs 'base' (inline text) or 'base_file'");
    spec.flips.edge_ids = j["flips"].get<std::vector<int>>();
    if (j.contains("closing")) {
        ClosingIso iso;
        for (const auto& row : j["closing"]) {
            iso.tri_image.push_back(row["to"].get<int>());
            auto mp = row["map"].get<std::vector<int>>();
            if (mp.size() != 3) throw validation_error("closing map rows need 3 vertex images");
            iso.label_map.push_back(Perm3(static_cast<uint8_t>(mp[0]), static_cast<uint8_t>(mp[1]),
                                          static_cast<uint8_t>(mp[2])));
        }
        spec.flips.closing = iso;
    }
    return spec;
}

int cmd_layer(const std::string& surface, const std::string& word, const std::string& spec_file,
              const std::string& out) {
    LayeredComplex lc = [&]() {
        if (!spec_file.empty()) {
            std::string dir;
            auto slash = spec_file.find_last_of('/');
            if (slash != std::string::npos) dir = spec_file.substr(0, slash + 1);
            return build_mapping_torus(spec_from_json(read_file(spec_file), dir));
        }
        if (surface != "ptorus")
            throw validation_error("only --surface ptorus is built in; use --spec for other fibers");
        if (word.empty()) throw validation_error("--word must be non-empty");
        return layer_ptorus_word(word);
    }();
    std::string text = serialize(lc.tri, lc.coor.raw_flags(lc.tri));
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    std::cerr << "layered " << lc.flip_count << " tetrahedra\n";
    return 0;
}

int cmd_carried(const std::string& file, int coor_idx, long long max_total, bool as_json) {
    ParsedFile pf = parse_triangulation(read_file(file));
    Coorientation coor = nth_taut(pf.tri, coor_idx);
    auto edges = edge_classes(pf.tri);
    SwitchSystem sys = switch_system(pf.tri, coor, edges);
    DualCycle g = dual_cycle(pf.tri, coor);
    CuspData cd = cusp_triangulations(pf.tri);
    auto sols = enumerate_solutions(sys, max_total);
    json list = json::array();
    if (!as_json)
        std::cout << sols.size() << " solution(s) with total <= " << max_total << "\n"
                  << "weights | total chi pairing comps bdry-curves\n";
    for (const auto& w : sols) {
        long long tot = total_weight(w);
        long long chi = euler_char(w);
        long long pr = pairing(g, w);
        SurfaceReport rep = reconstruct(pf.tri, coor, w, sys, cd);
        if (as_json) {
            json row;
            row["weights"] = w;
            row["total"] = tot;
            row["euler"] = chi;
            row["pairing"] = pr;
            row["components"] = json::array();
            for (const auto& c : rep.components)
                row["components"].push_back(
                    {{"sheets", c.sheets}, {"euler", c.euler}, {"boundary_curves", c.boundary_curves}});
            row["boundary_curves_per_cusp"] = rep.boundary_curves_per_cusp;
            list.push_back(row);
        } else {
            std::cout << "[";
            for (size_t i = 0; i < w.size(); ++i) std::cout << (i ? " " : "") << w[i];
            int curves = 0;
            for (int b : rep.boundary_curves_per_cusp) curves += b;
            std::cout << "] | " << tot << " " << chi << " " << pr << " " << rep.components.size() << " "
                      << curves << "\n";
        }
    }
    if (as_json) {
        json j;
        j["solutions"] = list;
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_discs(const std::string& file, int coor_idx, int tet, int max_cusps, bool as_json) {
    ParsedFile pf = parse_triangulation(read_file(file));
    Coorientation coor = nth_taut(pf.tri, coor_idx);
    TruncatedModel model = build_model(pf.tri, coor, tet);
    auto discs = enumerate_admissible_discs(model, max_cusps);
    Prop12Report rep = check_prop12_suite(model, max_cusps);
    if (as_json) {
        json j;
        j["patterns"] = rep.patterns;
        j["max_crossings"] = rep.max_crossings;
        json by;
        for (auto& [c, n] : rep.patterns_by_cusps) by[std::to_string(c)] = n;
        j["patterns_by_cusps"] = by;
        json list = json::array();
        for (const auto& p : discs) {
            PairingResult pr = g_dot(model, p);
            json row;
            row["crossings"] = p.crossings;
            row["arc_cells"] = p.arc_cells;
            row["cusps"] = p.cusps;
            row["area_pi"] = area(model, p);
            row["g_dot_quarters"] = pr.quarters;
            json arcs = json::array();
            for (const auto& a : pr.arcs)
                arcs.push_back({{"arc", a.arc_index},
                                {"hexagon", a.hexagon},
                                {"quarters", a.quarters},
                                {"cusp_endpoints", a.cusp_endpoints}});
            row["arc_contributions"] = arcs;
            list.push_back(row);
        }
        j["discs"] = list;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << rep.patterns << " admissible pattern(s) with c <= " << max_cusps << " in tet " << tet
                  << "\n";
        for (auto& [c, n] : rep.patterns_by_cusps) std::cout << "  c = " << c << ": " << n << "\n";
        std::cout << "area >= pi|G.D|, |G.D| <= c/2 and per-arc bounds all verified\n";
    }
    return 0;
}

int cmd_flippath(const std::string& file_a, const std::string& file_b, int max_depth, bool as_json) {
    SurfaceIdealTri a = parse_surface(read_file(file_a));
    SurfaceIdealTri b = parse_surface(read_file(file_b));
    auto seq = flip_path_bfs(a, b, max_depth);
    if (as_json) {
        json j;
        j["found"] = seq.has_value();
        if (seq) j["edge_ids"] = seq->edge_ids;
        std::cout << j.dump(2) << "\n";
    } else {
        if (!seq) {
            std::cout << "no flip path within depth " << max_depth << "\n";
        } else {
            std::cout << "flip path of length " << seq->edge_ids.size() << ":";
            for (int e : seq->edge_ids) std::cout << " " << e;
            std::cout << "\n(edge ids refer to the canonical form at each step)\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"taut ideal triangulations: verification, layering, carried surfaces, disc calculus"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string v_file;
    auto* validate_cmd = app.add_subcommand("validate", "parse and validate a triangulation file");
    validate_cmd->fallthrough();
    validate_cmd->add_option("file", v_file)->required();

    auto* taut_cmd = app.add_subcommand("taut", "taut structure operations");
    taut_cmd->require_subcommand(1);
    taut_cmd->fallthrough();
    std::string te_file, tc_file;
    auto* taut_enum = taut_cmd->add_subcommand("enumerate", "enumerate all taut structures");
    taut_enum->fallthrough();
    taut_enum->add_option("file", te_file)->required();
    auto* taut_check = taut_cmd->add_subcommand("check", "check the file's coor block");
    taut_check->fallthrough();
    taut_check->add_option("file", tc_file)->required();

    auto* layer_cmd = app.add_subcommand("layer", "build a layered mapping torus");
    layer_cmd->fallthrough();
    std::string l_surface = "ptorus", l_word, l_spec, l_out;
    layer_cmd->add_option("--surface", l_surface, "fiber surface (ptorus)");
    layer_cmd->add_option("--word", l_word, "monodromy word over {R,L}");
    layer_cmd->add_option("--spec", l_spec, "JSON monodromy spec (base + flips + closing)");
    layer_cmd->add_option("--out", l_out, "output triangulation file (stdout if omitted)");

    auto* carried_cmd = app.add_subcommand("carried", "enumerate carried surfaces");
    carried_cmd->fallthrough();
    std::string c_file;
    int c_coor = 0;
    long long c_max = 4;
    carried_cmd->add_option("file", c_file)->required();
    carried_cmd->add_option("--coor", c_coor, "taut structure index (enumeration order)");
    carried_cmd->add_option("--max-total", c_max, "weight total bound");

    auto* discs_cmd = app.add_subcommand("discs", "admissible disc calculus in one tet");
    discs_cmd->fallthrough();
    std::string d_file;
    int d_coor = 0, d_tet = 0, d_max = 3;
    discs_cmd->add_option("file", d_file)->required();
    discs_cmd->add_option("--coor", d_coor, "taut structure index");
    discs_cmd->add_option("--tet", d_tet, "tetrahedron index");
    discs_cmd->add_option("--max-cusps", d_max, "cusp bound");

    auto* flip_cmd = app.add_subcommand("flippath", "shortest flip path between surface triangulations");
    flip_cmd->fallthrough();
    std::string f_a, f_b;
    int f_depth = 6;
    flip_cmd->add_option("--a", f_a)->required();
    flip_cmd->add_option("--b", f_b)->required();
    flip_cmd->add_option("--max-depth", f_depth);

    CLI11_PARSE(app, argc, argv);

    try {
        read_thread_cap();
        if (*validate_cmd) return cmd_validate(v_file, as_json);
        if (*taut_enum) return cmd_taut_enumerate(te_file, as_json);
        if (*taut_check) return cmd_taut_check(tc_file, as_json);
        if (*layer_cmd) return cmd_layer(l_surface, l_word, l_spec, l_out);
        if (*carried_cmd) return cmd_carried(c_file, c_coor, c_max, as_json);
        if (*discs_cmd) return cmd_discs(d_file, d_coor, d_tet, d_max, as_json);
        if (*flip_cmd) return cmd_flippath(f_a, f_b, f_depth, as_json);
    } catch (const property_violation& e) {
        std::cerr << "property violation: " << e.what() << "\n";
        return 2;
    } catch (const construction_error& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return 3;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
