#include "hb/invariants.hpp"

#include <algorithm>
#include <numeric>

namespace hb {

int genus(const Model& m) { return m.core.betti(); }

bool is_free(const Model& m) {
    const CoreModel& c = m.core;
    for (int v = 0; v < c.nv; ++v)
        if (c.vertex_fixed(v)) return false;
    for (int e = 0; e < c.ne(); ++e)
        if (c.kind[e] != EdgeKind::moved) return false;
    return true;
}

int PoleComplex::pole_id(const Model& m, int vertex, int slot) const {
    (void)m;
    auto it = std::lower_bound(fixed_vertices.begin(), fixed_vertices.end(), vertex);
    if (it == fixed_vertices.end() || *it != vertex) return -1;
    return 2 * (int)(it - fixed_vertices.begin()) + slot;
}

PoleComplex pole_complex(const Model& m) {
    const CoreModel& c = m.core;
    PoleComplex pc;
    for (int v = 0; v < c.nv; ++v)
        if (c.vertex_fixed(v)) pc.fixed_vertices.push_back(v);

    const int np = 2 * (int)pc.fixed_vertices.size();
    std::vector<int> rank(c.nv, -1);
    for (int i = 0; i < (int)pc.fixed_vertices.size(); ++i)
        rank[pc.fixed_vertices[i]] = i;

    // Fixed darts claim slots in edge-name order; edge indices are already
    // name-sorted, and the two darts of one edge come first/second.
    std::vector<int> next_slot(pc.fixed_vertices.size(), 0);
    std::vector<int> parent(np);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    pc.pole_degree.assign(np, 0);

    // vertex segments: pole 2i -- 2i+1
    for (int i = 0; i < (int)pc.fixed_vertices.size(); ++i) {
        parent[find(2 * i)] = find(2 * i + 1);
        ++pc.pole_degree[2 * i];
        ++pc.pole_degree[2 * i + 1];
    }
    // axial segments join the poles occupied by the edge's two darts
    for (int e = 0; e < c.ne(); ++e) {
        if (c.kind[e] != EdgeKind::axial) continue;
        int r0 = rank[c.ends[e][0]];
        int p0 = 2 * r0 + next_slot[r0]++;
        int r1 = rank[c.ends[e][1]];
        int p1 = 2 * r1 + next_slot[r1]++;
        parent[find(p0)] = find(p1);
        ++pc.pole_degree[p0];
        ++pc.pole_degree[p1];
    }

    std::vector<int> comp_of_root(np, -1);
    pc.pole_component.assign(np, -1);
    int ncomp = 0;
    for (int p = 0; p < np; ++p) {
        int r = find(p);
        if (comp_of_root[r] == -1) comp_of_root[r] = ncomp++;
        pc.pole_component[p] = comp_of_root[r];
    }
    // a component is a cycle iff every pole in it has degree 2
    pc.component_is_cycle.assign(ncomp, true);
    for (int p = 0; p < np; ++p)
        if (pc.pole_degree[p] < 2) pc.component_is_cycle[pc.pole_component[p]] = false;
    for (bool cyc : pc.component_is_cycle)
        (cyc ? pc.cycle_components : pc.path_components)++;

    for (int e = 0; e < c.ne(); ++e)
        if (c.kind[e] == EdgeKind::inverted) ++pc.inverted_edges;
    return pc;
}

FixedSetSummary fixed_set(const Model& m) {
    PoleComplex pc = pole_complex(m);
    return {pc.path_components + pc.inverted_edges, pc.cycle_components};
}

std::vector<Pole> free_poles(const Model& m) {
    PoleComplex pc = pole_complex(m);
    std::vector<Pole> out;
    for (int i = 0; i < (int)pc.fixed_vertices.size(); ++i)
        for (int slot = 0; slot < 2; ++slot)
            if (pc.pole_degree[2 * i + slot] == 1)
                out.push_back({m.vnames[pc.fixed_vertices[i]], slot});
    return out;
}

QuotientData quotient(const Model& m) {
    const CoreModel& c = m.core;
    QuotientData q;
    FixedSetSummary fs = fixed_set(m);
    q.branch_arcs = fs.n_arcs;
    q.branch_circles = fs.m_circles;

    std::vector<int> orbit_of(c.nv, -1);
    for (int v = 0; v < c.nv; ++v) {
        if (std::min(v, c.vmap[v]) != v) continue;
        orbit_of[v] = (int)q.vertices.size();
        q.vertices.push_back({m.vnames[v], false});
    }
    for (int v = 0; v < c.nv; ++v)
        if (orbit_of[v] == -1) orbit_of[v] = orbit_of[c.vmap[v]];

    for (int e = 0; e < c.ne(); ++e) {
        switch (c.kind[e]) {
        case EdgeKind::axial:
            q.edges.push_back({m.enames[e], orbit_of[c.ends[e][0]],
                               orbit_of[c.ends[e][1]], EdgeKind::axial});
            break;
        case EdgeKind::inverted: {
            int mirror = (int)q.vertices.size();
            q.vertices.push_back({m.enames[e] + "_mirror", true});
            q.edges.push_back(
                {m.enames[e], orbit_of[c.ends[e][0]], mirror, EdgeKind::inverted});
            break;
        }
        case EdgeKind::moved:
            if (c.emap[e] > e)
                q.edges.push_back({m.enames[e], orbit_of[c.ends[e][0]],
                                   orbit_of[c.ends[e][1]], EdgeKind::moved});
            break;
        }
    }

    q.quotient_genus = (int)q.edges.size() - (int)q.vertices.size() + 1;

    int g = genus(m);
    int expected = is_free(m) ? (g + 1) / 2 : (g - fs.n_arcs + 1) / 2;
    if (q.quotient_genus != expected)
        throw internal_error("quotient genus " + std::to_string(q.quotient_genus) +
                             " disagrees with formula " + std::to_string(expected));
    return q;
}

BoundaryData boundary_data(const Model& m) {
    FixedSetSummary fs = fixed_set(m);
    QuotientData q = quotient(m);
    return {2 * fs.n_arcs, q.quotient_genus};
}

} // namespace hb
