// hbinv: equivariant graph spines for handlebody involutions.
// Subcommands cover classification, invariants, moves, and the census;
// all output is deterministic (fixed orderings, no timestamps).

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hb/census.hpp"
#include "hb/classify.hpp"
#include "hb/moves.hpp"

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;
using namespace hb;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    out << text;
}

Model load_model(const std::string& path) { return parse_model(read_input(path)); }

const char* kind_name(EdgeKind k) {
    switch (k) {
    case EdgeKind::axial: return "axial";
    case EdgeKind::inverted: return "inverted";
    case EdgeKind::moved: return "moved";
    }
    return "?";
}

ordered_json class_json(const CanonicalForm& c) {
    ordered_json j;
    j["variant"] = c.free ? "free" : "nonfree";
    j["g"] = c.genus();
    j["n"] = c.n;
    j["m"] = c.m;
    j["l"] = c.l;
    j["display"] = c.display();
    return j;
}

std::string class_line(const CanonicalForm& c) {
    return c.display() + " g=" + std::to_string(c.genus()) + " n=" + std::to_string(c.n) +
           " m=" + std::to_string(c.m) + " l=" + std::to_string(c.l);
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }
void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_classify(const std::string& file, bool as_json) {
    CanonicalForm c = classify(load_model(file));
    if (as_json) {
        ordered_json j;
        j["display"] = c.display();
        j["g"] = c.genus();
        j["n"] = c.n;
        j["m"] = c.m;
        j["l"] = c.l;
        j["free"] = c.free;
        emit(j);
    } else {
        std::cout << class_line(c) << "\n";
    }
    return 0;
}

int cmd_invariants(const std::string& file, bool as_json) {
    Model m = load_model(file);
    int g = genus(m);
    bool fr = is_free(m);
    FixedSetSummary fs = fixed_set(m);
    QuotientData q = quotient(m);
    BoundaryData b = boundary_data(m);
    if (as_json) {
        ordered_json j;
        j["genus"] = g;
        j["free"] = fr;
        j["n"] = fs.n_arcs;
        j["m"] = fs.m_circles;
        j["quotient_genus"] = q.quotient_genus;
        j["boundary_fixed_points"] = b.boundary_fixed_points;
        j["boundary_quotient_genus"] = b.boundary_quotient_genus;
        emit(j);
    } else {
        std::cout << "genus " << g << "\n"
                  << "free " << (fr ? "true" : "false") << "\n"
                  << "n " << fs.n_arcs << "\n"
                  << "m " << fs.m_circles << "\n"
                  << "quotient_genus " << q.quotient_genus << "\n"
                  << "boundary_fixed_points " << b.boundary_fixed_points << "\n"
                  << "boundary_quotient_genus " << b.boundary_quotient_genus << "\n";
    }
    return 0;
}

int cmd_quotient(const std::string& file, bool as_json) {
    QuotientData q = quotient(load_model(file));
    if (as_json) {
        ordered_json j;
        j["quotient_genus"] = q.quotient_genus;
        j["branch_arcs"] = q.branch_arcs;
        j["branch_circles"] = q.branch_circles;
        j["vertices"] = ordered_json::array();
        for (const auto& v : q.vertices)
            j["vertices"].push_back({{"name", v.name}, {"mirror", v.mirror}});
        j["edges"] = ordered_json::array();
        for (const auto& e : q.edges)
            j["edges"].push_back({{"name", e.name},
                                  {"a", q.vertices[e.a].name},
                                  {"b", q.vertices[e.b].name},
                                  {"kind", kind_name(e.source_kind)}});
        emit(j);
    } else {
        std::cout << "quotient_genus " << q.quotient_genus << "\n"
                  << "branch_arcs " << q.branch_arcs << "\n"
                  << "branch_circles " << q.branch_circles << "\n";
        for (const auto& v : q.vertices)
            std::cout << "vertex " << v.name << (v.mirror ? " mirror" : "") << "\n";
        for (const auto& e : q.edges)
            std::cout << "edge " << e.name << " " << q.vertices[e.a].name << " "
                      << q.vertices[e.b].name << " " << kind_name(e.source_kind) << "\n";
    }
    return 0;
}

int cmd_boundary(const std::string& file, bool as_json) {
    BoundaryData b = boundary_data(load_model(file));
    if (as_json) {
        ordered_json j;
        j["boundary_fixed_points"] = b.boundary_fixed_points;
        j["boundary_quotient_genus"] = b.boundary_quotient_genus;
        emit(j);
    } else {
        std::cout << "boundary_fixed_points " << b.boundary_fixed_points << "\n"
                  << "boundary_quotient_genus " << b.boundary_quotient_genus << "\n";
    }
    return 0;
}

int cmd_normalize(const std::string& file, const std::string& out) {
    auto [reduced, trace] = normalize(load_model(file));
    for (const auto& step : trace)
        std::cout << step.move << " " << step.orbit << " g=" << step.after.g
                  << " n=" << step.after.n << " m=" << step.after.m << "\n";
    if (!out.empty()) write_output(out, serialize_model(reduced));
    return 0;
}

int cmd_isomorphic(const std::string& f1, const std::string& f2) {
    bool iso = equivariant_isomorphic(load_model(f1), load_model(f2));
    std::cout << (iso ? "true" : "false") << "\n";
    return 0;
}

int cmd_split(const std::string& file, const std::string& orbit, bool as_json) {
    SplitResult r = split(load_model(file), orbit);
    const char* kind = r.kind == OrbitKind::axial ? "axial" : "moved_pair";
    if (as_json) {
        ordered_json j;
        j["orbit"] = orbit;
        j["kind"] = kind;
        j["connected_after"] = r.connected_after;
        j["components"] = ordered_json::array();
        for (const auto& c : r.components)
            j["components"].push_back(
                {{"betti", c.betti}, {"preserved", c.preserved}, {"vertices", c.vertices}});
        emit(j);
    } else {
        std::cout << "orbit " << orbit << " kind " << kind << "\n"
                  << "connected_after " << (r.connected_after ? "true" : "false") << "\n";
        for (size_t i = 0; i < r.components.size(); ++i) {
            const auto& c = r.components[i];
            std::cout << "component " << i << " betti " << c.betti << " preserved "
                      << (c.preserved ? "true" : "false") << " vertices";
            for (const auto& v : c.vertices) std::cout << " " << v;
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_classes(int g, bool as_json) {
    auto classes = enumerate_classes(g);
    if (as_json) {
        ordered_json arr = ordered_json::array();
        for (const auto& c : classes) arr.push_back(class_json(c));
        emit(arr);
    } else {
        for (const auto& c : classes) std::cout << class_line(c) << "\n";
    }
    return 0;
}

int cmd_collisions(int g, bool as_json) {
    auto pairs = boundary_collisions(g);
    if (as_json) {
        ordered_json arr = ordered_json::array();
        for (const auto& [a, b] : pairs)
            arr.push_back({{"first", class_json(a)}, {"second", class_json(b)}});
        emit(arr);
    } else {
        for (const auto& [a, b] : pairs)
            std::cout << a.display() << " " << b.display() << "\n";
    }
    return 0;
}

int cmd_census(int g, int max_edges, int jobs, bool as_json) {
    auto models = enumerate_models({max_edges, jobs});
    std::map<InvariantTuple, int> table;
    for (const Model& m : models) ++table[invariant_tuple(m)];
    // free tuples print first within the genus, then by (n, m)
    std::vector<std::pair<InvariantTuple, int>> rows;
    for (const auto& [t, count] : table)
        if (t.g == g) rows.push_back({t, count});
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::tuple(!a.first.free, a.first.n, a.first.m) <
               std::tuple(!b.first.free, b.first.n, b.first.m);
    });
    if (as_json) {
        json j; // alphabetically sorted keys
        j["genus"] = g;
        j["max_edges"] = max_edges;
        j["tuples"] = json::array();
        for (const auto& [t, count] : rows) {
            json row;
            row["free"] = t.free;
            row["n"] = t.n;
            row["m"] = t.m;
            row["count"] = count;
            j["tuples"].push_back(row);
        }
        emit(j);
    } else {
        for (const auto& [t, count] : rows) {
            if (t.free)
                std::cout << "g=" << g << " free count " << count << "\n";
            else
                std::cout << "g=" << g << " n=" << t.n << " m=" << t.m << " count "
                          << count << "\n";
        }
    }
    return 0;
}

int cmd_verify(int max_genus, int max_edges, int jobs, bool as_json) {
    CensusReport rep = verify_theorem(max_genus, max_edges, jobs);
    if (as_json) {
        json j;
        j["max_genus"] = rep.max_genus;
        j["max_edges"] = rep.max_edges;
        j["pass"] = rep.pass;
        j["failures"] = rep.failures;
        j["under_covered"] = rep.under_covered;
        j["realized"] = json::array();
        for (const auto& [t, count] : rep.realized) {
            json row;
            row["g"] = t.g;
            row["free"] = t.free;
            row["n"] = t.n;
            row["m"] = t.m;
            row["count"] = count;
            j["realized"].push_back(row);
        }
        emit(j);
    } else {
        for (int g = 0; g <= max_genus; ++g) {
            int predicted = (int)rep.predicted.at(g).size();
            int realized = 0;
            for (const auto& [t, count] : rep.realized)
                if (t.g == g) ++realized;
            std::cout << "g=" << g << " predicted " << predicted << " realized "
                      << realized << "\n";
        }
        for (const auto& c : rep.under_covered)
            std::cout << "under-covered " << c << "\n";
        for (const auto& f : rep.failures) std::cout << "counterexample " << f << "\n";
        std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
    }
    return rep.pass ? 0 : 2;
}

int cmd_build(bool has_free, int free_n, bool has_nonfree, std::vector<int> nm,
              const std::string& out) {
    if (has_free == has_nonfree)
        throw error("build: give exactly one of --free or --nonfree");
    Model m = has_free ? build_free(free_n) : build_nonfree(nm[0], nm[1], nm[2]);
    write_output(out, serialize_model(m));
    return 0;
}

int cmd_emit_dot(const std::string& file) {
    Model m = load_model(file);
    QuotientData q = quotient(m);
    CanonicalForm c = classify(m);
    FixedSetSummary fs = fixed_set(m);
    PoleComplex pc = pole_complex(m);

    std::cout << "graph quotient {\n";
    std::cout << "  label=\"" << c.display() << " g=" << genus(m) << " n=" << fs.n_arcs
              << " m=" << fs.m_circles << "\";\n";
    for (size_t i = 0; i < q.vertices.size(); ++i)
        std::cout << "  q" << i << " [label=\"" << q.vertices[i].name
                  << (q.vertices[i].mirror ? " (branch end)" : "") << "\"];\n";
    for (const auto& e : q.edges)
        std::cout << "  q" << e.a << " -- q" << e.b << " [label=\"" << e.name << " "
                  << kind_name(e.source_kind) << "\"];\n";

    // fixed-set components, one labelled node each
    int fix = 0;
    std::vector<std::vector<std::string>> comp_vertices;
    for (int i = 0; i < (int)pc.fixed_vertices.size(); ++i) {
        int comp = pc.pole_component[2 * i];
        if ((int)comp_vertices.size() <= comp) comp_vertices.resize(comp + 1);
        comp_vertices[comp].push_back(m.vnames[pc.fixed_vertices[i]]);
    }
    for (size_t comp = 0; comp < comp_vertices.size(); ++comp) {
        std::cout << "  fix" << fix++ << " [label=\""
                  << (pc.component_is_cycle[comp] ? "circle:" : "arc:");
        for (const auto& v : comp_vertices[comp]) std::cout << " " << v;
        std::cout << "\"];\n";
    }
    for (int e = 0; e < m.edge_count(); ++e)
        if (m.core.kind[e] == EdgeKind::inverted)
            std::cout << "  fix" << fix++ << " [label=\"arc: co-core of " << m.enames[e]
                      << "\"];\n";
    std::cout << "}\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"equivariant graph spines for orientation-preserving "
                 "involutions of genus-g handlebodies"};
    app.require_subcommand(1);

    bool as_json = false;
    app.add_flag("--json", as_json, "emit JSON instead of human-readable text");

    std::string file, file2, out, orbit;
    int g = 0, max_edges = 0, max_genus = 0, jobs = 1;
    bool has_free = false, has_nonfree = false;
    int free_n = 0;
    std::vector<int> nm;

    auto* c_classify = app.add_subcommand("classify", "classify a model file");
    c_classify->add_option("file", file)->required();

    auto* c_build = app.add_subcommand("build", "write a canonical builder model");
    c_build->add_option("--free", free_n, "I_{2n+1} with parameter n")
        ->check(CLI::NonNegativeNumber);
    c_build->add_option("--nonfree", nm, "L^{n,m} with l extra handle pairs: n m l")
        ->expected(3);
    c_build->add_option("-o,--output", out, "output path (default stdout)");

    auto* c_inv = app.add_subcommand("invariants", "genus, fixed set, quotient data");
    c_inv->add_option("file", file)->required();

    auto* c_quot = app.add_subcommand("quotient", "quotient graph and branch data");
    c_quot->add_option("file", file)->required();

    auto* c_bdry = app.add_subcommand("boundary", "boundary restriction invariants");
    c_bdry->add_option("file", file)->required();

    auto* c_norm = app.add_subcommand("normalize", "contract until no move applies");
    c_norm->add_option("file", file)->required();
    c_norm->add_option("-o,--output", out, "write the normalized model here");

    auto* c_iso = app.add_subcommand("isomorphic", "equivariant spine isomorphism");
    c_iso->add_option("file1", file)->required();
    c_iso->add_option("file2", file2)->required();

    auto* c_split = app.add_subcommand("split", "delete a splittable orbit");
    c_split->add_option("file", file)->required();
    c_split->add_option("--orbit", orbit, "edge id of the orbit")->required();

    auto* c_census = app.add_subcommand("census", "tuple counts at one genus");
    c_census->add_option("--genus", g)->required()->check(CLI::NonNegativeNumber);
    c_census->add_option("--max-edges", max_edges)->required()->check(CLI::NonNegativeNumber);
    c_census->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    auto* c_verify = app.add_subcommand("verify", "check the classification by census");
    c_verify->add_option("--max-genus", max_genus)->required()->check(CLI::NonNegativeNumber);
    c_verify->add_option("--max-edges", max_edges)->required()->check(CLI::NonNegativeNumber);
    c_verify->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    auto* c_classes = app.add_subcommand("classes", "list the classes of one genus");
    c_classes->add_option("--genus", g)->required()->check(CLI::NonNegativeNumber);

    auto* c_coll = app.add_subcommand("collisions", "classes sharing boundary data");
    c_coll->add_option("--genus", g)->required()->check(CLI::NonNegativeNumber);

    auto* c_dot = app.add_subcommand("emit-dot", "quotient graph and fixed set as DOT");
    c_dot->add_option("file", file)->required();

    // let `hbinv <sub> --json ...` reach the global flag
    for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (c_classify->parsed()) return cmd_classify(file, as_json);
        if (c_build->parsed()) {
            has_free = c_build->count("--free") > 0;
            has_nonfree = c_build->count("--nonfree") > 0;
            return cmd_build(has_free, free_n, has_nonfree, nm, out);
        }
        if (c_inv->parsed()) return cmd_invariants(file, as_json);
        if (c_quot->parsed()) return cmd_quotient(file, as_json);
        if (c_bdry->parsed()) return cmd_boundary(file, as_json);
        if (c_norm->parsed()) return cmd_normalize(file, out);
        if (c_iso->parsed()) return cmd_isomorphic(file, file2);
        if (c_split->parsed()) return cmd_split(file, orbit, as_json);
        if (c_census->parsed()) return cmd_census(g, max_edges, jobs, as_json);
        if (c_verify->parsed()) return cmd_verify(max_genus, max_edges, jobs, as_json);
        if (c_classes->parsed()) return cmd_classes(g, as_json);
        if (c_coll->parsed()) return cmd_collisions(g, as_json);
        if (c_dot->parsed()) return cmd_emit_dot(file);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
