#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hb/census.hpp"
#include "hb/classify.hpp"
#include "hb/moves.hpp"

using namespace hb;

namespace {

Model from_text(const std::string& body) {
    return parse_model("involution-graph v1\n" + body);
}

Model antipodal_cycle(int len) {
    RawModel raw;
    auto v = [](int i) { return "w" + std::to_string(i); };
    auto e = [](int i) { return "d" + std::to_string(i); };
    for (int i = 0; i < len; ++i) raw.vertices.push_back(v(i));
    for (int i = 0; i < len; ++i) raw.edges.push_back({e(i), v(i), v((i + 1) % len)});
    for (int i = 0; i < len / 2; ++i) {
        raw.vmaps.push_back({v(i), v(i + len / 2)});
        raw.emaps.push_back({e(i), e(i + len / 2), "fwd"});
    }
    return Model::from_raw(raw);
}

int betti_sum(const SplitResult& r) {
    int s = 0;
    for (const auto& c : r.components) s += c.betti;
    return s;
}

} // namespace

TEST_CASE("split a swapped loop orbit of I_3") {
    SplitResult r = split(build_free(1), "s1a");
    CHECK(r.kind == OrbitKind::moved_pair);
    CHECK(r.connected_after);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].betti == 1);
    CHECK(r.components[0].preserved);
}

TEST_CASE("split the connector pair of the genus-1 hyperelliptic spine") {
    SplitResult r = split(build_nonfree(2, 0, 0), "c1a");
    CHECK_FALSE(r.connected_after);
    REQUIRE(r.components.size() == 2);
    CHECK(r.components[0].betti == 0);
    CHECK(r.components[1].betti == 0);
    CHECK(r.components[0].preserved);
    CHECK(r.components[1].preserved);
}

TEST_CASE("split an axial loop") {
    SplitResult r = split(from_text("vertex v\nedge e v v\nemap e e axial\n"), "e");
    CHECK(r.kind == OrbitKind::axial);
    CHECK(r.connected_after);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].betti == 0);
}

TEST_CASE("inverted orbits are not splittable") {
    Model m = from_text("vertex v\nedge e v v\nemap e e inverted\n");
    CHECK_THROWS_AS(split(m, "e"), move_error);
}

TEST_CASE("split accounting across the census") {
    for (const Model& m : enumerate_models({5, 1})) {
        int g = genus(m);
        for (int e = 0; e < m.edge_count(); ++e) {
            if (m.core.kind[e] == EdgeKind::inverted) continue;
            if (m.core.kind[e] == EdgeKind::moved && m.core.emap[e] < e) continue;
            SplitResult r = split(m, m.enames[e]);
            int parts = (int)r.components.size();
            if (r.kind == OrbitKind::axial) {
                REQUIRE(parts <= 2);
                CHECK(betti_sum(r) == (parts == 1 ? g - 1 : g));
            } else {
                REQUIRE(parts <= 3);
                CHECK(betti_sum(r) == g - 3 + parts);
            }
            // swapped components come in pairs
            int swapped = 0;
            for (const auto& comp : r.components)
                if (!comp.preserved) ++swapped;
            CHECK(swapped % 2 == 0);
        }
    }
}

TEST_CASE("closing one arc onto itself creates a circle") {
    Model m = build_nonfree(1, 0, 0);
    Model closed = attach_axial_edge(m, {"u1", 0}, {"u1", 1});
    CHECK(classify(closed).display() == "L_1^{0,1}");
    CHECK(invariant_tuple(closed) == InvariantTuple{1, false, 0, 1});
}

TEST_CASE("joining two different arcs keeps m") {
    Model m = build_nonfree(2, 0, 0);
    Model joined = attach_axial_edge(m, {"u1", 0}, {"u2", 0});
    CHECK(classify(joined).display() == "L_2^{1,0}");
}

TEST_CASE("occupied poles are rejected") {
    Model m = from_text("vertex v\nedge e v v\nemap e e axial\n");
    CHECK_THROWS_AS(attach_axial_edge(m, {"v", 0}, {"v", 1}), move_error);
    Model chain = from_text("vertex a\nvertex b\nedge e a b\n");
    CHECK_THROWS_AS(attach_axial_edge(chain, {"a", 0}, {"b", 1}), move_error);
    CHECK_NOTHROW(attach_axial_edge(chain, {"a", 1}, {"b", 1}));
}

TEST_CASE("attachment-site independence over all free pole pairs") {
    for (const Model& m : enumerate_models({4, 1})) {
        auto poles = free_poles(m);
        PoleComplex pc = pole_complex(m);
        for (size_t i = 0; i < poles.size(); ++i)
            for (size_t j = i + 1; j < poles.size(); ++j) {
                int pi = pc.pole_id(m, m.vertex_index(poles[i].vertex), poles[i].slot);
                int pj = pc.pole_id(m, m.vertex_index(poles[j].vertex), poles[j].slot);
                bool same_arc = pc.pole_component[pi] == pc.pole_component[pj];
                InvariantTuple before = invariant_tuple(m);
                Model after = attach_axial_edge(m, poles[i], poles[j]);
                InvariantTuple got = invariant_tuple(after);
                InvariantTuple want{before.g + 1, false, before.n - 1,
                                    before.m + (same_arc ? 1 : 0)};
                CHECK(got == want);
                // the resulting class depends only on whether the poles
                // shared an arc, not on which poles they were
                CHECK(classify(after) ==
                      CanonicalForm{false, want.n, want.m,
                                    (want.g + 1 - want.n - 2 * want.m) / 2});
            }
    }
}

TEST_CASE("moved pairs extend the free family") {
    for (int n = 0; n <= 3; ++n) {
        Model ext = attach_moved_pair(build_free(n), "a", "a");
        CHECK(classify(ext) == CanonicalForm{true, n + 1, 0, 0});
    }
}

TEST_CASE("moved pairs raise l in the non-free family") {
    Model ext = attach_moved_pair(build_nonfree(1, 1, 0), "u1", "u1");
    CHECK(classify(ext) == CanonicalForm{false, 1, 1, 1});
    ext = attach_moved_pair(build_nonfree(2, 0, 1), "u1", "u2");
    CHECK(classify(ext) == CanonicalForm{false, 2, 0, 2});
}

TEST_CASE("inverted loops add one arc") {
    Model m = attach_inverted_loop(build_nonfree(1, 0, 0), "u1");
    CHECK(classify(m).display() == "L_1^{2,0}");

    Model h = build_nonfree(1, 0, 0);
    for (int g = 1; g <= 5; ++g) {
        h = attach_inverted_loop(h, "u1");
        CHECK(classify(h) == CanonicalForm{false, g + 1, 0, 0});
    }

    CHECK_THROWS_AS(attach_inverted_loop(build_free(0), "a"), move_error);
}

TEST_CASE("contracting the axial edge of a chain") {
    Model m = from_text("vertex p\nvertex q\n"
                        "edge c p q\n"
                        "edge i q q\n"
                        "emap c c axial\nemap i i inverted\n");
    CHECK(invariant_tuple(m) == InvariantTuple{1, false, 2, 0});
    Model r = contract(m, "c");
    CHECK(r.vertex_count() == 1);
    CHECK(invariant_tuple(r) == InvariantTuple{1, false, 2, 0});
    CHECK(equivariant_isomorphic(
        r, from_text("vertex v\nedge e v v\nemap e e inverted\n")));
}

TEST_CASE("contracting an antipodal orbit of the 6-cycle") {
    Model m = antipodal_cycle(6);
    CHECK(classify(m).display() == "I_1");
    Model r = contract(m, "d0");
    CHECK(r.vertex_count() == 4);
    CHECK(classify(r).display() == "I_1");
    CHECK(equivariant_isomorphic(r, antipodal_cycle(4)));
}

TEST_CASE("contraction legality codes") {
    Model inv = from_text("vertex v\nedge e v v\nemap e e inverted\n");
    CHECK(contract_illegal(inv, "e") == "inverted-orbit");

    Model ax_loop = from_text("vertex v\nedge e v v\nemap e e axial\n");
    CHECK(contract_illegal(ax_loop, "e") == "loop");

    CHECK(contract_illegal(build_free(0), "c1") == "parallel-to-image");
    CHECK(contract_illegal(build_free(1), "s1a") == "loop");

    // chain connector pairs share both endpoints with their image
    CHECK(contract_illegal(build_nonfree(2, 0, 0), "c1a") == "parallel-to-image");
    CHECK_THROWS_AS(contract(build_free(0), "c1"), move_error);
}

TEST_CASE("contracting a moved pair sharing one fixed vertex") {
    // star: fixed center u, swapped tips x, y
    Model m = from_text("vertex u\nvertex x\nvertex y\nvmap x y\n"
                        "edge e u x\nedge f u y\nemap e f fwd\n");
    CHECK(invariant_tuple(m) == InvariantTuple{0, false, 1, 0});
    CHECK_FALSE(contract_illegal(m, "e").has_value());
    Model r = contract(m, "e");
    CHECK(r.vertex_count() == 1);
    CHECK(invariant_tuple(r) == InvariantTuple{0, false, 1, 0});
}

TEST_CASE("builders are already normal") {
    for (int n = 0; n <= 3; ++n) {
        auto [r, trace] = normalize(build_free(n));
        CHECK(trace.empty());
        CHECK(r.vertex_count() == 2);
    }
    for (int n = 0; n <= 2; ++n)
        for (int m = 0; m <= 2; ++m) {
            if (n + 2 * m == 0) continue;
            auto [r, trace] = normalize(build_nonfree(n, m, 1));
            CHECK(trace.empty());
            CHECK(r.vertex_count() <= n + m);
        }
}

TEST_CASE("normalize preserves the invariant tuple step by step") {
    for (const Model& m : enumerate_models({5, 1})) {
        auto [r, trace] = normalize(m);
        InvariantTuple t = invariant_tuple(m);
        for (const auto& step : trace) {
            CHECK(step.before == t);
            CHECK(step.after == t);
        }
        CHECK(invariant_tuple(r) == t);
        CHECK(classify(r) == classify(m));
        // no legal contraction remains
        for (int e = 0; e < r.edge_count(); ++e)
            CHECK(contract_illegal(r, r.enames[e]).has_value());
    }
}

TEST_CASE("normalize reduces the antipodal 6-cycle to two vertices") {
    auto [r, trace] = normalize(antipodal_cycle(6));
    CHECK(r.vertex_count() == 2);
    CHECK(trace.size() == 2);
    CHECK(classify(r).display() == "I_1");
}

TEST_CASE("hyperelliptic diagnostic") {
    RawModel bouquet;
    bouquet.vertices = {"v"};
    for (int i = 1; i <= 3; ++i) {
        std::string name = "q" + std::to_string(i);
        bouquet.edges.push_back({name, "v", "v"});
        bouquet.emaps.push_back({name, name, "inverted"});
    }
    CHECK(hyperelliptic_diagnostic(Model::from_raw(bouquet))); // vacuous

    CHECK_FALSE(hyperelliptic_diagnostic(
        from_text("vertex v\nedge e v v\nemap e e axial\n")));

    CHECK(hyperelliptic_diagnostic(build_nonfree(2, 0, 0)));

    // both canonical hyperelliptic spines, chain and bouquet, pass
    for (int g = 1; g <= 5; ++g) {
        Model chain = build_nonfree(g + 1, 0, 0);
        CHECK(classify(chain) == CanonicalForm{false, g + 1, 0, 0});
        CHECK(hyperelliptic_diagnostic(chain));
    }

    CHECK_THROWS_AS(hyperelliptic_diagnostic(build_free(1)), move_error);
}

TEST_CASE("randomized move soundness") {
    auto seeds = enumerate_models({4, 1});
    std::mt19937 rng(20240817);
    int applications = 0;
    while (applications < 500) {
        const Model& m = seeds[rng() % seeds.size()];
        InvariantTuple before = invariant_tuple(m);
        switch (rng() % 4) {
        case 0: { // moved pair anywhere
            int u = rng() % m.vertex_count(), w = rng() % m.vertex_count();
            Model r = attach_moved_pair(m, m.vnames[u], m.vnames[w]);
            CHECK(invariant_tuple(r) ==
                  InvariantTuple{before.g + 2, before.free, before.n, before.m});
            ++applications;
            break;
        }
        case 1: { // inverted loop at a fixed vertex
            std::vector<int> fixed;
            for (int v = 0; v < m.vertex_count(); ++v)
                if (m.core.vertex_fixed(v)) fixed.push_back(v);
            if (fixed.empty()) break;
            Model r = attach_inverted_loop(m, m.vnames[fixed[rng() % fixed.size()]]);
            CHECK(invariant_tuple(r) ==
                  InvariantTuple{before.g + 1, false, before.n + 1, before.m});
            ++applications;
            break;
        }
        case 2: { // axial edge across two free poles
            auto poles = free_poles(m);
            if (poles.size() < 2) break;
            size_t i = rng() % poles.size(), j = rng() % poles.size();
            if (i == j) break;
            Model r = attach_axial_edge(m, poles[i], poles[j]);
            InvariantTuple t = invariant_tuple(r);
            CHECK(t.g == before.g + 1);
            CHECK(t.n == before.n - 1);
            CHECK((t.m == before.m || t.m == before.m + 1));
            ++applications;
            break;
        }
        default: { // contract the first legal orbit
            for (int e = 0; e < m.edge_count(); ++e) {
                if (!contract_illegal(m, m.enames[e])) {
                    Model r = contract(m, m.enames[e]);
                    CHECK(invariant_tuple(r) == before);
                    ++applications;
                    break;
                }
            }
            break;
        }
        }
    }
}
