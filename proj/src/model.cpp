#include "hb/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace hb {

namespace rules {
const std::vector<std::string>& all() {
    static const std::vector<std::string> v = {
        bad_identifier,
        duplicate_vertex,
        duplicate_edge,
        unknown_vertex,
        unknown_edge,
        vmap_not_involution,
        emap_orbit_conflict,
        emap_tag_mismatch,
        missing_emap,
        axial_endpoints_not_fixed,
        inverted_endpoints_not_swapped,
        moved_endpoints_mismatch,
        fixed_dart_overflow,
        no_vertices,
        not_connected,
    };
    return v;
}
} // namespace rules

std::string ValidationReport::summary() const {
    if (ok) return "ok";
    std::string s = "invalid model:";
    for (const auto& v : violations) s += " [" + v.rule + " at " + v.where + "]";
    return s;
}

int CoreModel::fixed_dart_count(int v) const {
    int c = 0;
    for (int e = 0; e < ne(); ++e) {
        if (kind[e] != EdgeKind::axial) continue;
        if (ends[e][0] == v) ++c;
        if (ends[e][1] == v) ++c;
    }
    return c;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                  (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

// Collects at most one violation per rule, keeping the first offender.
struct RuleSink {
    ValidationReport rep;
    void add(const char* rule, const std::string& where) {
        for (const auto& v : rep.violations)
            if (v.rule == rule) return;
        rep.violations.push_back({rule, where});
        rep.ok = false;
    }
};

} // namespace

bool CoreModel::connected() const {
    if (nv == 0) return false;
    UnionFind uf(nv);
    int comps = nv;
    for (const auto& e : ends)
        if (uf.unite(e[0], e[1])) --comps;
    return comps == 1;
}

ValidationReport validate(const RawModel& raw) {
    RuleSink sink;

    for (const auto& v : raw.vertices)
        if (!valid_identifier(v)) sink.add(rules::bad_identifier, "vertex " + v);
    for (const auto& e : raw.edges)
        if (!valid_identifier(e.id)) sink.add(rules::bad_identifier, "edge " + e.id);

    std::unordered_map<std::string, int> vidx;
    for (int i = 0; i < (int)raw.vertices.size(); ++i) {
        if (!vidx.emplace(raw.vertices[i], i).second)
            sink.add(rules::duplicate_vertex, raw.vertices[i]);
    }
    std::unordered_map<std::string, int> eidx;
    for (int i = 0; i < (int)raw.edges.size(); ++i) {
        if (!eidx.emplace(raw.edges[i].id, i).second)
            sink.add(rules::duplicate_edge, raw.edges[i].id);
    }

    if (raw.vertices.empty()) sink.add(rules::no_vertices, "graph");

    auto vertex_of = [&](const std::string& name, const std::string& where) -> int {
        auto it = vidx.find(name);
        if (it == vidx.end()) {
            sink.add(rules::unknown_vertex, where + " -> " + name);
            return -1;
        }
        return it->second;
    };

    const int nv = (int)raw.vertices.size();
    const int ne = (int)raw.edges.size();

    std::vector<std::array<int, 2>> ends(ne, {-1, -1});
    for (int i = 0; i < ne; ++i) {
        ends[i][0] = vertex_of(raw.edges[i].v1, "edge " + raw.edges[i].id);
        ends[i][1] = vertex_of(raw.edges[i].v2, "edge " + raw.edges[i].id);
    }

    // vertex involution from the listed pairs; unlisted vertices are fixed
    std::vector<int> vmap(nv, -1);
    for (const auto& p : raw.vmaps) {
        int a = vertex_of(p.a, "vmap " + p.a + " " + p.b);
        int b = vertex_of(p.b, "vmap " + p.a + " " + p.b);
        if (a < 0 || b < 0) continue;
        bool ok_a = vmap[a] == -1 || vmap[a] == b;
        bool ok_b = vmap[b] == -1 || vmap[b] == a;
        if (!ok_a || !ok_b) {
            sink.add(rules::vmap_not_involution, "vmap " + p.a + " " + p.b);
            continue;
        }
        vmap[a] = b;
        vmap[b] = a;
    }
    for (int v = 0; v < nv; ++v)
        if (vmap[v] == -1) vmap[v] = v;

    // edge orbits
    std::vector<int> emap(ne, -1);
    std::vector<EdgeKind> kind(ne, EdgeKind::axial);
    std::vector<uint8_t> rev(ne, 0);
    std::vector<bool> listed(ne, false);
    for (const auto& p : raw.emaps) {
        auto ite = eidx.find(p.e);
        auto itf = eidx.find(p.f);
        std::string where = "emap " + p.e + " " + p.f + " " + p.tag;
        if (ite == eidx.end()) {
            sink.add(rules::unknown_edge, where + " -> " + p.e);
            continue;
        }
        if (itf == eidx.end()) {
            sink.add(rules::unknown_edge, where + " -> " + p.f);
            continue;
        }
        int e = ite->second, f = itf->second;
        EdgeKind k;
        uint8_t r = 0;
        if (p.tag == "axial" || p.tag == "inverted") {
            if (e != f) {
                sink.add(rules::emap_tag_mismatch, where);
                continue;
            }
            k = p.tag == "axial" ? EdgeKind::axial : EdgeKind::inverted;
        } else if (p.tag == "fwd" || p.tag == "rev") {
            if (e == f) {
                sink.add(rules::emap_tag_mismatch, where);
                continue;
            }
            k = EdgeKind::moved;
            r = p.tag == "rev" ? 1 : 0;
        } else {
            sink.add(rules::emap_tag_mismatch, where);
            continue;
        }
        // re-listing an orbit is allowed only when exactly consistent
        auto consistent = [&](int x, int px, EdgeKind kx, uint8_t rx) {
            return !listed[x] || (emap[x] == px && kind[x] == kx && rev[x] == rx);
        };
        if (!consistent(e, f, k, r) || !consistent(f, e, k, r)) {
            sink.add(rules::emap_orbit_conflict, where);
            continue;
        }
        listed[e] = listed[f] = true;
        emap[e] = f;
        emap[f] = e;
        kind[e] = kind[f] = k;
        rev[e] = rev[f] = r;
    }

    // unlisted edges default to axial only when both endpoints are fixed
    std::vector<bool> bad_default(ne, false);
    for (int e = 0; e < ne; ++e) {
        if (listed[e]) continue;
        emap[e] = e;
        kind[e] = EdgeKind::axial;
        auto [a, b] = std::pair(ends[e][0], ends[e][1]);
        if (a < 0 || b < 0) continue;
        if (vmap[a] != a || vmap[b] != b) {
            sink.add(rules::missing_emap, "edge " + raw.edges[e].id);
            bad_default[e] = true;
        }
    }

    // per-orbit endpoint compatibility
    for (int e = 0; e < ne; ++e) {
        int a = ends[e][0], b = ends[e][1];
        if (a < 0 || b < 0 || bad_default[e]) continue;
        const std::string& id = raw.edges[e].id;
        switch (kind[e]) {
        case EdgeKind::axial:
            if (vmap[a] != a || vmap[b] != b)
                sink.add(rules::axial_endpoints_not_fixed, "edge " + id);
            break;
        case EdgeKind::inverted:
            if (vmap[a] != b)
                sink.add(rules::inverted_endpoints_not_swapped, "edge " + id);
            break;
        case EdgeKind::moved: {
            int f = emap[e];
            int fa = ends[f][0], fb = ends[f][1];
            if (fa < 0 || fb < 0) break;
            int ia = rev[e] ? fb : fa; // image of first dart's endpoint
            int ib = rev[e] ? fa : fb;
            if (vmap[a] != ia || vmap[b] != ib)
                sink.add(rules::moved_endpoints_mismatch,
                         "emap " + id + " " + raw.edges[f].id);
            break;
        }
        }
    }

    // fixed-dart rule: at most two fixed darts per vertex
    {
        std::vector<int> fd(nv, 0);
        for (int e = 0; e < ne; ++e) {
            if (kind[e] != EdgeKind::axial) continue;
            if (ends[e][0] >= 0) ++fd[ends[e][0]];
            if (ends[e][1] >= 0) ++fd[ends[e][1]];
        }
        for (int v = 0; v < nv; ++v)
            if (fd[v] > 2) {
                sink.add(rules::fixed_dart_overflow,
                         "vertex " + raw.vertices[v] + " (" + std::to_string(fd[v]) +
                             " fixed darts)");
                break;
            }
    }

    if (nv > 0) {
        UnionFind uf(nv);
        for (int e = 0; e < ne; ++e)
            if (ends[e][0] >= 0 && ends[e][1] >= 0) uf.unite(ends[e][0], ends[e][1]);
        for (int v = 1; v < nv; ++v)
            if (uf.find(v) != uf.find(0)) {
                sink.add(rules::not_connected, "vertex " + raw.vertices[v]);
                break;
            }
    }

    return sink.rep;
}

Model Model::from_raw(const RawModel& raw) {
    ValidationReport rep = validate(raw);
    if (!rep.ok) throw validation_error(std::move(rep));

    Model m;
    m.vnames = raw.vertices;
    std::sort(m.vnames.begin(), m.vnames.end());
    std::unordered_map<std::string, int> vidx;
    for (int i = 0; i < (int)m.vnames.size(); ++i) vidx[m.vnames[i]] = i;

    std::vector<int> eorder((int)raw.edges.size());
    std::iota(eorder.begin(), eorder.end(), 0);
    std::sort(eorder.begin(), eorder.end(), [&](int a, int b) {
        return raw.edges[a].id < raw.edges[b].id;
    });
    std::vector<int> epos(raw.edges.size()); // raw index -> sorted index
    m.enames.resize(raw.edges.size());
    for (int i = 0; i < (int)eorder.size(); ++i) {
        epos[eorder[i]] = i;
        m.enames[i] = raw.edges[eorder[i]].id;
    }
    std::unordered_map<std::string, int> eidx;
    for (int i = 0; i < (int)m.enames.size(); ++i) eidx[m.enames[i]] = i;

    CoreModel& c = m.core;
    c.nv = (int)m.vnames.size();
    c.ends.resize(m.enames.size());
    c.vmap.assign(c.nv, -1);
    std::iota(c.vmap.begin(), c.vmap.end(), 0);
    c.emap.assign(m.enames.size(), 0);
    c.kind.assign(m.enames.size(), EdgeKind::axial);
    c.rev.assign(m.enames.size(), 0);

    for (const auto& p : raw.vmaps) {
        int a = vidx.at(p.a), b = vidx.at(p.b);
        c.vmap[a] = b;
        c.vmap[b] = a;
    }

    std::vector<bool> flipped(m.enames.size(), false);
    for (int r = 0; r < (int)raw.edges.size(); ++r) {
        int e = epos[r];
        int a = vidx.at(raw.edges[r].v1), b = vidx.at(raw.edges[r].v2);
        if (a > b) {
            std::swap(a, b); // canonical dart order: smaller endpoint first
            flipped[e] = true;
        }
        c.ends[e] = {a, b};
        c.emap[e] = e;
    }

    std::vector<bool> listed(m.enames.size(), false);
    for (const auto& p : raw.emaps) {
        int e = eidx.at(p.e), f = eidx.at(p.f);
        if (p.tag == "axial") {
            c.kind[e] = EdgeKind::axial;
        } else if (p.tag == "inverted") {
            c.kind[e] = EdgeKind::inverted;
        } else {
            uint8_t r = (p.tag == "rev") ? 1 : 0;
            if (flipped[e]) r ^= 1;
            if (flipped[f]) r ^= 1;
            c.emap[e] = f;
            c.emap[f] = e;
            c.kind[e] = c.kind[f] = EdgeKind::moved;
            c.rev[e] = c.rev[f] = r;
            listed[f] = true;
        }
        listed[e] = true;
    }
    // unlisted edges are axial by default (validation already checked them)

    return m;
}

int Model::vertex_index(const std::string& name) const {
    auto it = std::lower_bound(vnames.begin(), vnames.end(), name);
    if (it == vnames.end() || *it != name) return -1;
    return (int)(it - vnames.begin());
}

int Model::edge_index(const std::string& name) const {
    auto it = std::lower_bound(enames.begin(), enames.end(), name);
    if (it == enames.end() || *it != name) return -1;
    return (int)(it - enames.begin());
}

// ---------------------------------------------------------------- text I/O

Model parse_model(const std::string& text) {
    RawModel raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (!saw_header) {
            if (tok.size() != 2 || tok[0] != "involution-graph" || tok[1] != "v1")
                throw parse_error(lineno, "expected header 'involution-graph v1'");
            saw_header = true;
            continue;
        }
        if (tok[0] == "vertex") {
            if (tok.size() != 2) throw parse_error(lineno, "vertex takes 1 argument");
            raw.vertices.push_back(tok[1]);
        } else if (tok[0] == "edge") {
            if (tok.size() != 4) throw parse_error(lineno, "edge takes 3 arguments");
            raw.edges.push_back({tok[1], tok[2], tok[3]});
        } else if (tok[0] == "vmap") {
            if (tok.size() != 3) throw parse_error(lineno, "vmap takes 2 arguments");
            raw.vmaps.push_back({tok[1], tok[2]});
        } else if (tok[0] == "emap") {
            if (tok.size() != 4) throw parse_error(lineno, "emap takes 3 arguments");
            raw.emaps.push_back({tok[1], tok[2], tok[3]});
        } else {
            throw parse_error(lineno, "unknown directive '" + tok[0] + "'");
        }
    }
    if (!saw_header) throw parse_error(lineno, "missing header 'involution-graph v1'");
    return Model::from_raw(raw);
}

std::string serialize_model(const Model& m) {
    const CoreModel& c = m.core;
    std::string out = "involution-graph v1\n";
    for (const auto& v : m.vnames) out += "vertex " + v + "\n";
    for (int e = 0; e < c.ne(); ++e)
        out += "edge " + m.enames[e] + " " + m.vnames[c.ends[e][0]] + " " +
               m.vnames[c.ends[e][1]] + "\n";
    for (int v = 0; v < c.nv; ++v)
        if (c.vmap[v] > v)
            out += "vmap " + m.vnames[v] + " " + m.vnames[c.vmap[v]] + "\n";
    for (int e = 0; e < c.ne(); ++e) {
        switch (c.kind[e]) {
        case EdgeKind::axial:
            out += "emap " + m.enames[e] + " " + m.enames[e] + " axial\n";
            break;
        case EdgeKind::inverted:
            out += "emap " + m.enames[e] + " " + m.enames[e] + " inverted\n";
            break;
        case EdgeKind::moved:
            if (c.emap[e] > e)
                out += "emap " + m.enames[e] + " " + m.enames[c.emap[e]] + " " +
                       (c.rev[e] ? "rev" : "fwd") + "\n";
            break;
        }
    }
    return out;
}

// -------------------------------------------------- equivariant isomorphism

namespace {

// Per-vertex invariant used to cut the image candidate lists.
struct VertexProfile {
    bool fixed;
    int degree;          // dart count
    int fixed_darts;     // axial incidences
    int inverted_darts;
    int loops_axial, loops_inverted, loops_moved;
    auto operator<=>(const VertexProfile&) const = default;
};

std::vector<VertexProfile> profiles(const CoreModel& c) {
    std::vector<VertexProfile> p(c.nv);
    for (int v = 0; v < c.nv; ++v)
        p[v] = {c.vertex_fixed(v), 0, 0, 0, 0, 0, 0};
    for (int e = 0; e < c.ne(); ++e) {
        for (int side = 0; side < 2; ++side) {
            int v = c.ends[e][side];
            ++p[v].degree;
            if (c.kind[e] == EdgeKind::axial) ++p[v].fixed_darts;
            if (c.kind[e] == EdgeKind::inverted) ++p[v].inverted_darts;
        }
        if (c.edge_loop(e)) {
            int v = c.ends[e][0];
            if (c.kind[e] == EdgeKind::axial) ++p[v].loops_axial;
            if (c.kind[e] == EdgeKind::inverted) ++p[v].loops_inverted;
            if (c.kind[e] == EdgeKind::moved) ++p[v].loops_moved;
        }
    }
    return p;
}

// Multiset of edges between an unordered vertex pair, split by kind and,
// for moved edges, by whether the orbit partner lies in the same pair.
struct GroupCount {
    int axial = 0, inverted = 0, moved_internal = 0, moved_external = 0;
    bool operator==(const GroupCount&) const = default;
};

GroupCount group_count(const CoreModel& c, int u, int w) {
    GroupCount g;
    for (int e = 0; e < c.ne(); ++e) {
        int a = c.ends[e][0], b = c.ends[e][1];
        if (!((a == u && b == w) || (a == w && b == u))) continue;
        switch (c.kind[e]) {
        case EdgeKind::axial:
            ++g.axial;
            break;
        case EdgeKind::inverted:
            ++g.inverted;
            break;
        case EdgeKind::moved: {
            int f = c.emap[e];
            int fa = c.ends[f][0], fb = c.ends[f][1];
            bool internal = (fa == u && fb == w) || (fa == w && fb == u);
            if (internal)
                ++g.moved_internal;
            else
                ++g.moved_external;
            break;
        }
        }
    }
    return g;
}

struct IsoSearch {
    const CoreModel& a;
    const CoreModel& b;
    std::vector<VertexProfile> pa, pb;
    std::vector<int> phi;      // a-vertex -> b-vertex or -1
    std::vector<bool> used;    // b-vertex taken
    std::vector<int> order;    // assignment order over a's vertices
    long long nodes_left;

    bool assign(int u, int x);
    void unassign(int u);
    bool run(size_t pos);
};

bool IsoSearch::assign(int u, int x) {
    if (phi[u] == x) return true;
    if (phi[u] != -1 || used[x]) return false;
    if (pa[u] != pb[x]) return false;
    // adjacency toward already-assigned vertices, including loops at u
    for (int w = 0; w < a.nv; ++w) {
        if (phi[w] == -1 && w != u) continue;
        int img = (w == u) ? x : phi[w];
        if (!(group_count(a, u, w) == group_count(b, x, img))) return false;
    }
    phi[u] = x;
    used[x] = true;
    return true;
}

void IsoSearch::unassign(int u) {
    used[phi[u]] = false;
    phi[u] = -1;
}

bool IsoSearch::run(size_t pos) {
    if (--nodes_left < 0) throw resource_limit_error("isomorphism search budget exceeded");
    if (pos == order.size()) return true;
    int u = order[pos];
    if (phi[u] != -1) return run(pos + 1);
    for (int x = 0; x < b.nv; ++x) {
        if (used[x]) continue;
        int su = a.vmap[u], sx = b.vmap[x];
        bool paired_u = su != u && phi[su] == -1;
        if (!assign(u, x)) continue;
        bool ok = true;
        // the involution forces the partner's image
        if (su == u) {
            ok = (sx == x);
        } else if (paired_u) {
            ok = (sx != x) && assign(su, sx);
        } else {
            ok = (phi[su] == sx);
        }
        if (ok && run(pos + 1)) return true;
        if (paired_u && phi[su] == sx && sx != x) unassign(su);
        unassign(u);
    }
    return false;
}

} // namespace

bool core_isomorphic(const CoreModel& a, const CoreModel& b, IsoBudget budget) {
    if (a.nv != b.nv || a.ne() != b.ne()) return false;
    auto pa = profiles(a), pb = profiles(b);
    {
        auto sa = pa, sb = pb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    IsoSearch s{a, b, std::move(pa), std::move(pb), {}, {}, {}, budget.nodes};
    s.phi.assign(a.nv, -1);
    s.used.assign(b.nv, false);
    s.order.resize(a.nv);
    std::iota(s.order.begin(), s.order.end(), 0);
    // most-constrained first: rarest profile, then highest degree
    std::map<VertexProfile, int> freq;
    for (const auto& p : s.pa) ++freq[p];
    std::stable_sort(s.order.begin(), s.order.end(), [&](int u, int v) {
        auto ku = std::pair(freq[s.pa[u]], -s.pa[u].degree);
        auto kv = std::pair(freq[s.pa[v]], -s.pa[v].degree);
        return ku < kv;
    });
    return s.run(0);
}

bool equivariant_isomorphic(const Model& a, const Model& b, IsoBudget budget) {
    return core_isomorphic(a.core, b.core, budget);
}

} // namespace hb
