#include "hb/moves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hb/classify.hpp"

namespace hb {

InvariantTuple invariant_tuple(const Model& m) {
    FixedSetSummary fs = fixed_set(m);
    return {genus(m), is_free(m), fs.n_arcs, fs.m_circles};
}

namespace {

// Reconstructs raw data equivalent to the model (canonical declared order).
RawModel to_raw(const Model& m) {
    const CoreModel& c = m.core;
    RawModel raw;
    raw.vertices = m.vnames;
    for (int e = 0; e < c.ne(); ++e)
        raw.edges.push_back({m.enames[e], m.vnames[c.ends[e][0]], m.vnames[c.ends[e][1]]});
    for (int v = 0; v < c.nv; ++v)
        if (c.vmap[v] > v) raw.vmaps.push_back({m.vnames[v], m.vnames[c.vmap[v]]});
    for (int e = 0; e < c.ne(); ++e) {
        if (c.kind[e] == EdgeKind::axial)
            raw.emaps.push_back({m.enames[e], m.enames[e], "axial"});
        else if (c.kind[e] == EdgeKind::inverted)
            raw.emaps.push_back({m.enames[e], m.enames[e], "inverted"});
        else if (c.emap[e] > e)
            raw.emaps.push_back(
                {m.enames[e], m.enames[c.emap[e]], c.rev[e] ? "rev" : "fwd"});
    }
    return raw;
}

Model rebuild(const RawModel& raw) {
    try {
        return Model::from_raw(raw);
    } catch (const validation_error& e) {
        throw internal_error(std::string("move produced an invalid model: ") + e.what());
    }
}

std::string fresh_edge_name(const Model& m, int& counter) {
    for (;;) {
        std::string name = "x" + std::to_string(++counter);
        if (m.edge_index(name) == -1) return name;
    }
}

int require_edge(const Model& m, const std::string& name) {
    int e = m.edge_index(name);
    if (e < 0) throw move_error("unknown-edge", "no edge named '" + name + "'");
    return e;
}

int require_vertex(const Model& m, const std::string& name) {
    int v = m.vertex_index(name);
    if (v < 0) throw move_error("unknown-vertex", "no vertex named '" + name + "'");
    return v;
}

std::vector<int> orbit_edges(const CoreModel& c, int e) {
    if (c.kind[e] == EdgeKind::moved) return {std::min(e, c.emap[e]), std::max(e, c.emap[e])};
    return {e};
}

struct Components {
    int count = 0;
    std::vector<int> comp_of; // per vertex
};

Components components_without(const CoreModel& c, const std::vector<int>& removed) {
    std::vector<int> parent(c.nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < c.ne(); ++e) {
        if (std::find(removed.begin(), removed.end(), e) != removed.end()) continue;
        parent[find(c.ends[e][0])] = find(c.ends[e][1]);
    }
    Components out;
    out.comp_of.assign(c.nv, -1);
    for (int v = 0; v < c.nv; ++v) {
        int r = find(v);
        if (out.comp_of[r] == -1) out.comp_of[r] = out.count++;
        out.comp_of[v] = out.comp_of[r];
    }
    return out;
}

} // namespace

SplitResult split(const Model& m, const std::string& edge_name) {
    const CoreModel& c = m.core;
    int e = require_edge(m, edge_name);
    if (c.kind[e] == EdgeKind::inverted)
        throw move_error("inverted-orbit",
                         "edge '" + edge_name + "' is inverted; its co-core meets the "
                         "fixed set in an arc, not transversally at one point");
    std::vector<int> orbit = orbit_edges(c, e);

    Components comps = components_without(c, orbit);
    SplitResult res;
    res.kind = c.kind[e] == EdgeKind::axial ? OrbitKind::axial : OrbitKind::moved_pair;
    res.connected_after = comps.count == 1;
    res.components.resize(comps.count);
    std::vector<int> edges_in(comps.count, 0), verts_in(comps.count, 0);
    for (int v = 0; v < c.nv; ++v) {
        int k = comps.comp_of[v];
        res.components[k].vertices.push_back(m.vnames[v]);
        ++verts_in[k];
        res.components[k].preserved = comps.comp_of[c.vmap[v]] == k;
    }
    for (int f = 0; f < c.ne(); ++f) {
        if (std::find(orbit.begin(), orbit.end(), f) != orbit.end()) continue;
        ++edges_in[comps.comp_of[c.ends[f][0]]];
    }
    for (int k = 0; k < comps.count; ++k)
        res.components[k].betti = edges_in[k] - verts_in[k] + 1;
    return res;
}

Model attach_axial_edge(const Model& m, const Pole& a, const Pole& b) {
    int va = require_vertex(m, a.vertex);
    int vb = require_vertex(m, b.vertex);
    if (a.slot < 0 || a.slot > 1 || b.slot < 0 || b.slot > 1)
        throw move_error("bad-pole", "pole slot must be 0 or 1");
    if (a == b) throw move_error("pole-equal", "the two poles must be distinct");
    const CoreModel& c = m.core;
    if (!c.vertex_fixed(va) || !c.vertex_fixed(vb))
        throw move_error("not-fixed", "poles exist only at fixed vertices");

    PoleComplex pc = pole_complex(m);
    int pa = pc.pole_id(m, va, a.slot);
    int pb = pc.pole_id(m, vb, b.slot);
    if (pc.pole_degree[pa] != 1)
        throw move_error("pole-occupied",
                         "pole " + a.vertex + "/" + std::to_string(a.slot) +
                             " is occupied by a fixed dart or lies on a circle");
    if (pc.pole_degree[pb] != 1)
        throw move_error("pole-occupied",
                         "pole " + b.vertex + "/" + std::to_string(b.slot) +
                             " is occupied by a fixed dart or lies on a circle");
    RawModel raw = to_raw(m);
    int counter = 0;
    std::string name = fresh_edge_name(m, counter);
    raw.edges.push_back({name, a.vertex, b.vertex});
    raw.emaps.push_back({name, name, "axial"});
    return rebuild(raw);
}

Model attach_moved_pair(const Model& m, const std::string& u, const std::string& w) {
    int vu = require_vertex(m, u);
    int vw = require_vertex(m, w);
    const CoreModel& c = m.core;
    RawModel raw = to_raw(m);
    int counter = 0;
    std::string e1 = fresh_edge_name(m, counter);
    std::string e2 = fresh_edge_name(m, counter);
    raw.edges.push_back({e1, u, w});
    raw.edges.push_back({e2, m.vnames[c.vmap[vu]], m.vnames[c.vmap[vw]]});
    raw.emaps.push_back({e1, e2, "fwd"});
    return rebuild(raw);
}

Model attach_inverted_loop(const Model& m, const std::string& vertex) {
    int v = require_vertex(m, vertex);
    if (!m.core.vertex_fixed(v))
        throw move_error("not-fixed", "inverted loops attach at fixed vertices only");
    RawModel raw = to_raw(m);
    int counter = 0;
    std::string name = fresh_edge_name(m, counter);
    raw.edges.push_back({name, vertex, vertex});
    raw.emaps.push_back({name, name, "inverted"});
    return rebuild(raw);
}

std::optional<std::string> contract_illegal(const Model& m, const std::string& edge_name) {
    const CoreModel& c = m.core;
    int e = require_edge(m, edge_name);
    if (c.kind[e] == EdgeKind::inverted) return "inverted-orbit";
    if (c.edge_loop(e)) return "loop";

    std::vector<std::vector<int>> classes;
    if (c.kind[e] == EdgeKind::axial) {
        classes.push_back({c.ends[e][0], c.ends[e][1]});
    } else {
        int f = c.emap[e];
        std::set<int> se{c.ends[e][0], c.ends[e][1]};
        std::set<int> sf{c.ends[f][0], c.ends[f][1]};
        std::vector<int> shared;
        std::set_intersection(se.begin(), se.end(), sf.begin(), sf.end(),
                              std::back_inserter(shared));
        if (shared.size() == 2) return "parallel-to-image";
        if (shared.size() == 1) {
            if (!c.vertex_fixed(shared[0]))
                throw internal_error("single shared endpoint of a moved orbit must be fixed");
            std::vector<int> all(se.begin(), se.end());
            for (int v : sf)
                if (!se.count(v)) all.push_back(v);
            classes.push_back(all);
        } else {
            classes.push_back({c.ends[e][0], c.ends[e][1]});
            classes.push_back({c.ends[f][0], c.ends[f][1]});
        }
    }

    // any merged vertex that ends up fixed must keep <= 2 fixed darts
    std::vector<int> orbit = orbit_edges(c, e);
    for (const auto& cls : classes) {
        std::set<int> members(cls.begin(), cls.end());
        std::set<int> image;
        for (int v : cls) image.insert(c.vmap[v]);
        if (image != members) continue; // merged vertex is not fixed
        int fd = 0;
        for (int f = 0; f < c.ne(); ++f) {
            if (c.kind[f] != EdgeKind::axial) continue;
            if (std::find(orbit.begin(), orbit.end(), f) != orbit.end()) continue;
            if (members.count(c.ends[f][0])) ++fd;
            if (members.count(c.ends[f][1])) ++fd;
        }
        if (fd > 2) return "fixed-dart-overflow";
    }
    return std::nullopt;
}

Model contract(const Model& m, const std::string& edge_name) {
    if (auto why = contract_illegal(m, edge_name))
        throw move_error(*why, "cannot contract orbit of '" + edge_name + "'");
    const CoreModel& c = m.core;
    int e = m.edge_index(edge_name);
    std::vector<int> orbit = orbit_edges(c, e);

    // merge endpoints of each deleted edge
    std::vector<int> parent(c.nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int f : orbit) parent[find(c.ends[f][0])] = find(c.ends[f][1]);

    // representative name: smallest in the merge class
    std::vector<std::string> rep_name(c.nv);
    for (int v = 0; v < c.nv; ++v) rep_name[v] = m.vnames[v];
    for (int v = 0; v < c.nv; ++v) {
        int r = find(v);
        if (m.vnames[v] < rep_name[r]) rep_name[r] = m.vnames[v];
    }
    auto name_of = [&](int v) { return rep_name[find(v)]; };

    RawModel raw;
    for (int v = 0; v < c.nv; ++v)
        if (name_of(v) == m.vnames[v]) raw.vertices.push_back(m.vnames[v]);
    for (int f = 0; f < c.ne(); ++f) {
        if (std::find(orbit.begin(), orbit.end(), f) != orbit.end()) continue;
        raw.edges.push_back({m.enames[f], name_of(c.ends[f][0]), name_of(c.ends[f][1])});
    }
    std::set<std::pair<std::string, std::string>> vpairs;
    for (int v = 0; v < c.nv; ++v) {
        std::string a = name_of(v), b = name_of(c.vmap[v]);
        if (a == b) continue;
        vpairs.insert({std::min(a, b), std::max(a, b)});
    }
    for (const auto& [a, b] : vpairs) raw.vmaps.push_back({a, b});
    for (int f = 0; f < c.ne(); ++f) {
        if (std::find(orbit.begin(), orbit.end(), f) != orbit.end()) continue;
        if (c.kind[f] == EdgeKind::axial)
            raw.emaps.push_back({m.enames[f], m.enames[f], "axial"});
        else if (c.kind[f] == EdgeKind::inverted)
            raw.emaps.push_back({m.enames[f], m.enames[f], "inverted"});
        else if (c.emap[f] > f)
            raw.emaps.push_back(
                {m.enames[f], m.enames[c.emap[f]], c.rev[f] ? "rev" : "fwd"});
    }
    return rebuild(raw);
}

std::pair<Model, Trace> normalize(const Model& m) {
    Model cur = m;
    Trace trace;
    for (;;) {
        std::string pick;
        for (int e = 0; e < cur.core.ne(); ++e) {
            if (cur.core.kind[e] == EdgeKind::moved && cur.core.emap[e] < e) continue;
            if (!contract_illegal(cur, cur.enames[e])) {
                pick = cur.enames[e];
                break;
            }
        }
        if (pick.empty()) break;
        InvariantTuple before = invariant_tuple(cur);
        cur = contract(cur, pick);
        trace.push_back({"contract", pick, before, invariant_tuple(cur)});
    }
    return {cur, trace};
}

bool hyperelliptic_diagnostic(const Model& m) {
    if (is_free(m))
        throw move_error("free-model", "the hyperelliptic diagnostic applies to "
                                       "non-free models only");
    const CoreModel& c = m.core;
    for (int e = 0; e < c.ne(); ++e) {
        if (c.kind[e] == EdgeKind::inverted) continue; // not a splittable orbit
        if (c.kind[e] == EdgeKind::moved && c.emap[e] < e) continue;
        if (components_without(c, orbit_edges(c, e)).count == 1) return false;
    }
    return true;
}

} // namespace hb
