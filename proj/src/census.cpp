#include "hb/census.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <numeric>
#include <unordered_map>

#ifdef HBINV_OPENMP
#include <omp.h>
#endif

#include "hb/classify.hpp"
#include "hb/invariants.hpp"

namespace hb {

// ------------------------------------------------------------ certificate

namespace {

// One round of color refinement; returns the number of colors.  The new
// color of a vertex ranks (old color, partner color, sorted incident
// (edge class, far-end color) list), so refinement only splits classes.
int refine(const CoreModel& c, std::vector<int>& color) {
    const int nv = c.nv;
    std::vector<std::vector<int>> key(nv);
    std::vector<int> order(nv);
    int ncolors = 0;
    for (;;) {
        for (int v = 0; v < nv; ++v) {
            key[v].clear();
            key[v].push_back(color[v]);
            key[v].push_back(color[c.vmap[v]]);
        }
        std::vector<std::vector<int>> inc(nv);
        for (int e = 0; e < c.ne(); ++e)
            for (int side = 0; side < 2; ++side) {
                int v = c.ends[e][side], w = c.ends[e][side ^ 1];
                int cls = (int)c.kind[e] * 2 + (c.edge_loop(e) ? 1 : 0);
                inc[v].push_back(cls * (nv + 1) + color[w]);
            }
        for (int v = 0; v < nv; ++v) {
            std::sort(inc[v].begin(), inc[v].end());
            key[v].insert(key[v].end(), inc[v].begin(), inc[v].end());
        }
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return key[a] < key[b]; });
        std::vector<int> next(nv);
        int nc = 0;
        for (int i = 0; i < nv; ++i) {
            if (i > 0 && key[order[i]] != key[order[i - 1]]) ++nc;
            next[order[i]] = nc;
        }
        ++nc;
        color = std::move(next);
        if (nc == ncolors) return nc;
        ncolors = nc;
        if (nc == nv) return nc;
    }
}

std::vector<int> initial_colors(const CoreModel& c) {
    const int nv = c.nv;
    std::vector<std::array<int, 7>> key(nv);
    for (int v = 0; v < nv; ++v)
        key[v] = {c.vertex_fixed(v) ? 0 : 1, 0, 0, 0, 0, 0, 0};
    for (int e = 0; e < c.ne(); ++e) {
        for (int side = 0; side < 2; ++side) {
            int v = c.ends[e][side];
            ++key[v][1];
            if (c.kind[e] == EdgeKind::axial) ++key[v][2];
            if (c.kind[e] == EdgeKind::inverted) ++key[v][3];
        }
        if (c.edge_loop(e)) ++key[c.ends[e][0]][4 + std::min((int)c.kind[e], 2)];
    }
    std::vector<int> order(nv), color(nv);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
    int nc = 0;
    for (int i = 0; i < nv; ++i) {
        if (i > 0 && key[order[i]] != key[order[i - 1]]) ++nc;
        color[order[i]] = nc;
    }
    return color;
}

struct CertSearch {
    const CoreModel& c;
    std::vector<int32_t> best;
    bool have_best = false;

    void encode(const std::vector<int>& pi, std::vector<int32_t>& out) const {
        const int nv = c.nv;
        out.clear();
        out.push_back(nv);
        out.push_back(c.ne());
        std::vector<std::array<int, 2>> pairs;
        for (int v = 0; v < nv; ++v)
            if (c.vmap[v] > v)
                pairs.push_back({std::min(pi[v], pi[c.vmap[v]]),
                                 std::max(pi[v], pi[c.vmap[v]])});
        std::sort(pairs.begin(), pairs.end());
        out.push_back((int)pairs.size());
        for (auto& p : pairs) {
            out.push_back(p[0]);
            out.push_back(p[1]);
        }
        std::vector<std::array<int, 5>> codes;
        for (int e = 0; e < c.ne(); ++e) {
            if (c.kind[e] == EdgeKind::moved && c.emap[e] < e) continue;
            std::array<int, 2> pe = {std::min(pi[c.ends[e][0]], pi[c.ends[e][1]]),
                                     std::max(pi[c.ends[e][0]], pi[c.ends[e][1]])};
            if (c.kind[e] == EdgeKind::moved) {
                int f = c.emap[e];
                std::array<int, 2> pf = {std::min(pi[c.ends[f][0]], pi[c.ends[f][1]]),
                                         std::max(pi[c.ends[f][0]], pi[c.ends[f][1]])};
                if (pf < pe) std::swap(pe, pf);
                codes.push_back({2, pe[0], pe[1], pf[0], pf[1]});
            } else {
                codes.push_back(
                    {c.kind[e] == EdgeKind::axial ? 0 : 1, pe[0], pe[1], -1, -1});
            }
        }
        std::sort(codes.begin(), codes.end());
        for (auto& k : codes)
            for (int x : k) out.push_back(x);
    }

    void run(std::vector<int> color) {
        int nc = refine(c, color);
        if (nc == c.nv) {
            std::vector<int32_t> enc;
            encode(color, enc);
            if (!have_best || enc < best) {
                best = std::move(enc);
                have_best = true;
            }
            return;
        }
        // individualize inside the smallest non-singleton color class
        std::vector<int> count(nc, 0);
        for (int v = 0; v < c.nv; ++v) ++count[color[v]];
        int target = 0;
        while (count[target] < 2) ++target;
        for (int v = 0; v < c.nv; ++v) {
            if (color[v] != target) continue;
            std::vector<int> split(c.nv);
            for (int w = 0; w < c.nv; ++w) split[w] = 2 * color[w] + (w == v ? 0 : 1);
            run(std::move(split));
        }
    }
};

} // namespace

std::vector<int32_t> canonical_certificate(const CoreModel& c) {
    CertSearch s{c, {}, false};
    s.run(initial_colors(c));
    return s.best;
}

// ------------------------------------------------------------ enumeration
//
// Models are generated per vertex count V and involution shape
// (f fixed vertices, t swapped pairs, f + 2t = V) as multisets of edge
// orbits over a finite alphabet:
//   axial(a,b)     a <= b < f               weight 1
//   inverted(a,b)  vmap(a) = b, a <= b      weight 1
//   moved(a,b)     orbit representative     weight 2 (the pair e, se)
// Candidates are valid by construction once connected and within the
// fixed-dart rule; isomorph rejection hashes the canonical certificate
// and confirms collisions with the exact search.

namespace {

struct Sym {
    int kind; // 0 axial, 1 inverted, 2 moved
    int a, b;
    int weight;
};

int shape_vmap(int v, int f) { return v < f ? v : f + ((v - f) ^ 1); }

std::vector<Sym> build_alphabet(int V, int f, int t) {
    std::vector<Sym> out;
    for (int a = 0; a < f; ++a)
        for (int b = a; b < f; ++b) out.push_back({0, a, b, 1});
    for (int a = 0; a < f; ++a) out.push_back({1, a, a, 1});
    for (int p = 0; p < t; ++p) out.push_back({1, f + 2 * p, f + 2 * p + 1, 1});
    for (int a = 0; a < V; ++a)
        for (int b = a; b < V; ++b) {
            int pa = shape_vmap(a, f), pb = shape_vmap(b, f);
            if (pa > pb) std::swap(pa, pb);
            if (std::pair(a, b) <= std::pair(pa, pb)) out.push_back({2, a, b, 2});
        }
    return out;
}

CoreModel make_core(int V, int f, const std::vector<Sym>& syms,
                    const std::vector<int>& chosen) {
    CoreModel c;
    c.nv = V;
    c.vmap.resize(V);
    for (int v = 0; v < V; ++v) c.vmap[v] = shape_vmap(v, f);
    auto add_edge = [&](int a, int b, EdgeKind k) {
        int e = c.ne();
        c.ends.push_back({a, b});
        c.emap.push_back(e);
        c.kind.push_back(k);
        c.rev.push_back(0);
        return e;
    };
    for (int s : chosen) {
        const Sym& sym = syms[s];
        switch (sym.kind) {
        case 0:
            add_edge(sym.a, sym.b, EdgeKind::axial);
            break;
        case 1:
            add_edge(sym.a, sym.b, EdgeKind::inverted);
            break;
        case 2: {
            int pa = c.vmap[sym.a], pb = c.vmap[sym.b];
            if (pa > pb) std::swap(pa, pb);
            int e1 = add_edge(sym.a, sym.b, EdgeKind::moved);
            int e2 = add_edge(pa, pb, EdgeKind::moved);
            c.emap[e1] = e2;
            c.emap[e2] = e1;
            uint8_t r = (pa != pb && c.vmap[sym.a] != pa) ? 1 : 0;
            c.rev[e1] = c.rev[e2] = r;
            break;
        }
        }
    }
    return c;
}

std::string cert_key(const std::vector<int32_t>& cert) {
    return std::string(reinterpret_cast<const char*>(cert.data()),
                       cert.size() * sizeof(int32_t));
}

// first-occurrence isomorph rejection
struct Dedup {
    std::unordered_map<std::string, std::vector<int>> buckets;
    std::vector<CoreModel> kept;

    bool insert(const CoreModel& cand) {
        std::string key = cert_key(canonical_certificate(cand));
        auto& bucket = buckets[key];
        for (int idx : bucket)
            if (core_isomorphic(cand, kept[idx])) return false;
        bucket.push_back((int)kept.size());
        kept.push_back(cand);
        return true;
    }
};

struct BudgetGuard {
    std::atomic<long long>* used = nullptr;
    std::atomic<bool>* exceeded = nullptr;
    long long limit = 0;
    long long local = 0;

    bool tick() {
        if (++local >= 8192) flush();
        return !exceeded->load(std::memory_order_relaxed);
    }
    void flush() {
        if (local == 0) return;
        long long total = used->fetch_add(local, std::memory_order_relaxed) + local;
        local = 0;
        if (total > limit) exceeded->store(true, std::memory_order_relaxed);
    }
};

template <typename Emit>
struct Enumerator {
    int V, f, max_edges;
    const std::vector<Sym>& syms;
    std::vector<uint32_t> reach; // suffix union of endpoint masks
    Emit& emit;
    BudgetGuard& budget;

    std::vector<int> chosen;
    std::array<int8_t, 32> fd{};
    std::array<int8_t, 32> parent{};
    int comps = 0;
    uint32_t touched = 0;
    int edges_used = 0;

    Enumerator(int V_, int f_, int max_edges_, const std::vector<Sym>& syms_,
               Emit& emit_, BudgetGuard& budget_)
        : V(V_), f(f_), max_edges(max_edges_), syms(syms_), emit(emit_),
          budget(budget_) {
        reach.assign(syms.size() + 1, 0);
        for (int i = (int)syms.size() - 1; i >= 0; --i)
            reach[i] = reach[i + 1] | sym_mask(syms[i]);
        for (int v = 0; v < V; ++v) parent[v] = (int8_t)v;
        comps = V;
    }

    uint32_t sym_mask(const Sym& s) const {
        uint32_t m = (1u << s.a) | (1u << s.b);
        if (s.kind == 2) m |= (1u << shape_vmap(s.a, f)) | (1u << shape_vmap(s.b, f));
        return m;
    }

    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[b] = (int8_t)a;
            --comps;
        }
    }

    void rec(int si) {
        if (!budget.tick()) return;
        if (comps == 1) emit(chosen);
        int remaining = max_edges - edges_used;
        if (remaining <= 0) return;
        if (comps - 1 > remaining) return;
        uint32_t all = V >= 32 ? 0xffffffffu : ((1u << V) - 1);
        if ((~touched & all) & ~reach[si]) return; // someone is forever isolated

        for (int s = si; s < (int)syms.size(); ++s) {
            const Sym& sym = syms[s];
            if (sym.weight > remaining) continue;
            if (sym.kind == 0) {
                int at_a = sym.a == sym.b ? 2 : 1;
                if (fd[sym.a] + at_a > 2) continue;
                if (sym.a != sym.b && fd[sym.b] + 1 > 2) continue;
            }
            // save
            auto save_parent = parent;
            int save_comps = comps;
            uint32_t save_touched = touched;

            if (sym.kind == 0) {
                fd[sym.a] += sym.a == sym.b ? 2 : 1;
                if (sym.a != sym.b) fd[sym.b] += 1;
            }
            unite(sym.a, sym.b);
            touched |= (1u << sym.a) | (1u << sym.b);
            if (sym.kind == 2) {
                int pa = shape_vmap(sym.a, f), pb = shape_vmap(sym.b, f);
                unite(pa, pb);
                touched |= (1u << pa) | (1u << pb);
            }
            edges_used += sym.weight;
            chosen.push_back(s);

            rec(s);

            chosen.pop_back();
            edges_used -= sym.weight;
            parent = save_parent;
            comps = save_comps;
            touched = save_touched;
            if (sym.kind == 0) {
                fd[sym.a] -= sym.a == sym.b ? 2 : 1;
                if (sym.a != sym.b) fd[sym.b] -= 1;
            }
        }
    }

    // run only the subtree whose first symbol is s0; s0 == -1 runs the
    // root emission alone (the 0-edge candidate)
    void run_subtree(int s0) {
        if (s0 < 0) {
            if (!budget.tick()) return;
            if (comps == 1) emit(chosen);
            return;
        }
        int remaining = max_edges - edges_used;
        if (comps - 1 > remaining) return;
        const Sym& sym = syms[s0];
        if (sym.weight > remaining) return;
        if (sym.kind == 0) {
            int at_a = sym.a == sym.b ? 2 : 1;
            if (fd[sym.a] + at_a > 2) return;
            if (sym.a != sym.b && fd[sym.b] + 1 > 2) return;
        }
        if (sym.kind == 0) {
            fd[sym.a] += sym.a == sym.b ? 2 : 1;
            if (sym.a != sym.b) fd[sym.b] += 1;
        }
        unite(sym.a, sym.b);
        touched |= (1u << sym.a) | (1u << sym.b);
        if (sym.kind == 2) {
            int pa = shape_vmap(sym.a, f), pb = shape_vmap(sym.b, f);
            unite(pa, pb);
            touched |= (1u << pa) | (1u << pb);
        }
        edges_used += sym.weight;
        chosen.push_back(s0);
        rec(s0);
    }
};

std::string pad_name(char prefix, int i, int count) {
    int width = 1;
    for (int x = count - 1; x >= 10; x /= 10) ++width;
    std::string digits = std::to_string(i);
    return prefix + std::string(width - (int)digits.size(), '0') + digits;
}

Model materialize(const CoreModel& c) {
    RawModel raw;
    for (int v = 0; v < c.nv; ++v) raw.vertices.push_back(pad_name('v', v, c.nv));
    auto ename = [&](int e) { return pad_name('e', e, c.ne()); };
    for (int e = 0; e < c.ne(); ++e)
        raw.edges.push_back(
            {ename(e), raw.vertices[c.ends[e][0]], raw.vertices[c.ends[e][1]]});
    for (int v = 0; v < c.nv; ++v)
        if (c.vmap[v] > v) raw.vmaps.push_back({raw.vertices[v], raw.vertices[c.vmap[v]]});
    for (int e = 0; e < c.ne(); ++e) {
        if (c.kind[e] == EdgeKind::axial)
            raw.emaps.push_back({ename(e), ename(e), "axial"});
        else if (c.kind[e] == EdgeKind::inverted)
            raw.emaps.push_back({ename(e), ename(e), "inverted"});
        else if (c.emap[e] > e)
            raw.emaps.push_back({ename(e), ename(c.emap[e]), c.rev[e] ? "rev" : "fwd"});
    }
    return Model::from_raw(raw);
}

struct Task {
    int V, t, s0;
};

std::vector<Task> build_tasks(int max_edges) {
    std::vector<Task> tasks;
    int max_v = std::max(1, max_edges + 1);
    if (max_v > 31) throw error("census bound too large (max vertex count 31)");
    for (int V = 1; V <= max_v; ++V)
        for (int t = 0; 2 * t <= V; ++t) {
            tasks.push_back({V, t, -1});
            int nsyms = (int)build_alphabet(V, V - 2 * t, t).size();
            for (int s0 = 0; s0 < nsyms; ++s0) tasks.push_back({V, t, s0});
        }
    return tasks;
}

std::vector<Model> finish(Dedup& dedup) {
    std::vector<Model> out;
    out.reserve(dedup.kept.size());
    for (const CoreModel& c : dedup.kept) out.push_back(materialize(c));
    return out;
}

} // namespace

std::vector<Model> enumerate_models_serial(const CensusOptions& opt) {
    if (opt.max_edges < 0) throw error("max_edges must be >= 0");
    std::atomic<long long> used{0};
    std::atomic<bool> exceeded{false};
    BudgetGuard budget{&used, &exceeded, opt.node_budget, 0};

    Dedup dedup;
    int max_v = std::max(1, opt.max_edges + 1);
    if (max_v > 31) throw error("census bound too large (max vertex count 31)");
    for (int V = 1; V <= max_v; ++V)
        for (int t = 0; 2 * t <= V; ++t) {
            int f = V - 2 * t;
            auto syms = build_alphabet(V, f, t);
            auto emit = [&](const std::vector<int>& chosen) {
                dedup.insert(make_core(V, f, syms, chosen));
            };
            Enumerator<decltype(emit)> en(V, f, opt.max_edges, syms, emit, budget);
            en.rec(0);
            if (exceeded.load()) throw resource_limit_error("census node budget exceeded");
        }
    budget.flush();
    if (exceeded.load()) throw resource_limit_error("census node budget exceeded");
    return finish(dedup);
}

std::vector<Model> enumerate_models_parallel(const CensusOptions& opt) {
    if (opt.max_edges < 0) throw error("max_edges must be >= 0");
    std::vector<Task> tasks = build_tasks(opt.max_edges);
    std::vector<std::vector<std::pair<std::string, CoreModel>>> results(tasks.size());
    std::atomic<long long> used{0};
    std::atomic<bool> exceeded{false};

#ifdef HBINV_OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opt.jobs))
#endif
    for (int i = 0; i < (int)tasks.size(); ++i) {
        if (exceeded.load(std::memory_order_relaxed)) continue;
        const Task& task = tasks[i];
        int f = task.V - 2 * task.t;
        auto syms = build_alphabet(task.V, f, task.t);
        BudgetGuard budget{&used, &exceeded, opt.node_budget, 0};
        // local isomorph rejection; the merge below resolves across tasks
        std::unordered_map<std::string, std::vector<int>> local_buckets;
        auto& local = results[i];
        auto emit = [&](const std::vector<int>& chosen) {
            CoreModel cand = make_core(task.V, f, syms, chosen);
            std::string key = cert_key(canonical_certificate(cand));
            auto& bucket = local_buckets[key];
            for (int idx : bucket)
                if (core_isomorphic(local[idx].second, cand)) return;
            bucket.push_back((int)local.size());
            local.emplace_back(std::move(key), std::move(cand));
        };
        Enumerator<decltype(emit)> en(task.V, f, opt.max_edges, syms, emit, budget);
        en.run_subtree(task.s0);
        budget.flush();
    }
    if (exceeded.load()) throw resource_limit_error("census node budget exceeded");

    // deterministic merge in task order, keeping first occurrences
    Dedup dedup;
    for (auto& local : results)
        for (auto& [key, core] : local) {
            auto& bucket = dedup.buckets[key];
            bool dup = false;
            for (int idx : bucket)
                if (core_isomorphic(core, dedup.kept[idx])) {
                    dup = true;
                    break;
                }
            if (!dup) {
                bucket.push_back((int)dedup.kept.size());
                dedup.kept.push_back(std::move(core));
            }
        }
    return finish(dedup);
}

std::vector<Model> enumerate_models(const CensusOptions& opt) {
    if (opt.jobs <= 1) return enumerate_models_serial(opt);
    return enumerate_models_parallel(opt);
}

// ---------------------------------------------------------- verification

namespace {

bool tuple_predicted(const std::vector<CanonicalForm>& classes, const InvariantTuple& t) {
    for (const auto& c : classes) {
        if (c.free != t.free) continue;
        if (c.free || (c.n == t.n && c.m == t.m)) return true;
    }
    return false;
}

Model build_class(const CanonicalForm& c) {
    return c.free ? build_free(c.n) : build_nonfree(c.n, c.m, c.l);
}

} // namespace

CensusReport verify_theorem(int max_genus, int max_edges, int jobs) {
    return verify_census(max_genus, max_edges, enumerate_models({max_edges, jobs}));
}

CensusReport verify_census(int max_genus, int max_edges,
                           const std::vector<Model>& models) {
    if (max_genus < 0 || max_edges < 0)
        throw error("verify_theorem: bounds must be >= 0");
    CensusReport rep;
    rep.max_genus = max_genus;
    rep.max_edges = max_edges;

    std::map<int, std::vector<CanonicalForm>> classes_of;
    auto classes_for = [&](int g) -> const std::vector<CanonicalForm>& {
        auto it = classes_of.find(g);
        if (it == classes_of.end()) it = classes_of.emplace(g, enumerate_classes(g)).first;
        return it->second;
    };

    for (const Model& m : models) {
        InvariantTuple t = invariant_tuple(m);
        ++rep.realized[t];
        auto describe = [&](const std::string& why) {
            rep.failures.push_back("g=" + std::to_string(t.g) +
                                   (t.free ? " free" : " n=" + std::to_string(t.n) +
                                                           " m=" + std::to_string(t.m)) +
                                   ": " + why);
        };
        if (t.free && t.g % 2 == 0) describe("free involution of even genus");
        if (!t.free && (t.n + 2 * t.m < 1 || t.n + 2 * t.m > t.g + 1))
            describe("n + 2m outside [1, g+1]");
        if (!t.free && ((t.n - (t.g + 1)) % 2 != 0)) describe("n parity violates n = g+1 (mod 2)");
        if (!tuple_predicted(classes_for(t.g), t)) describe("tuple not predicted by the theorem");
        try {
            QuotientData q = quotient(m); // checks Betti against the closed formula
            int gq = q.quotient_genus;
            if (2 * (1 - gq) != (1 - t.g) + t.n)
                describe("orbifold Euler identity 1-g' = ((1-g)+n)/2 fails");
            BoundaryData b = boundary_data(m);
            if (2 - 2 * t.g != 2 * (2 - 2 * b.boundary_quotient_genus) -
                                  b.boundary_fixed_points)
                describe("Riemann-Hurwitz boundary identity fails");
        } catch (const internal_error& e) {
            describe(e.what());
        }
    }

    for (int g = 0; g <= max_genus; ++g) {
        rep.predicted[g] = classes_for(g);
        for (const CanonicalForm& c : rep.predicted[g]) {
            Model builder = build_class(c);
            if (builder.edge_count() > max_edges) {
                rep.under_covered.push_back(c.display());
                continue;
            }
            InvariantTuple want{g, c.free, c.free ? 0 : c.n, c.free ? 0 : c.m};
            if (!rep.realized.count(want))
                rep.failures.push_back("predicted class " + c.display() +
                                       " not realized within " +
                                       std::to_string(max_edges) + " edges");
        }
    }

    rep.pass = rep.failures.empty();
    return rep;
}

} // namespace hb
