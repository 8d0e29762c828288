#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "hb/census.hpp"
#include "hb/classify.hpp"

using namespace hb;

TEST_CASE("zero edges: the ball with its axis rotation") {
    auto models = enumerate_models({0, 1});
    REQUIRE(models.size() == 1);
    CHECK(models[0].vertex_count() == 1);
    CHECK(models[0].edge_count() == 0);
    CHECK(classify(models[0]).display() == "L_0^{1,0}");
}

TEST_CASE("at most one edge: five spines, hand enumerated") {
    // point; axial loop; inverted loop; axial chain of two fixed vertices;
    // inverted edge between two swapped vertices
    auto models = enumerate_models({1, 1});
    REQUIRE(models.size() == 5);
    std::multiset<std::string> classes;
    for (const Model& m : models) classes.insert(classify(m).display());
    CHECK(classes == std::multiset<std::string>{"L_0^{1,0}", "L_0^{1,0}", "L_0^{1,0}",
                                                "L_1^{0,1}", "L_1^{2,0}"});
}

TEST_CASE("at most two edges: fifteen spines, hand enumerated") {
    auto models = enumerate_models({2, 1});
    CHECK(models.size() == 15);
    // the genus-1 tuples realized must be exactly the three H_1 classes
    std::set<std::string> g1;
    for (const Model& m : models)
        if (genus(m) == 1) g1.insert(classify(m).display());
    CHECK(g1 == std::set<std::string>{"I_1", "L_1^{0,1}", "L_1^{2,0}"});
}

namespace {

// Brute-force reference census: all labeled models over small vertex sets,
// every involution (not only canonical shapes), every edge multiset, every
// orbit/tag assignment; validated, then deduplicated by the exact
// isomorphism search alone.  Independent of the production enumerator.
std::vector<Model> brute_force_census(int max_edges, int max_vertices) {
    std::vector<Model> classes;
    auto vname = [](int i) { return "v" + std::to_string(i); };
    auto ename = [](int i) { return "e" + std::to_string(i); };

    for (int V = 1; V <= max_vertices; ++V) {
        // all involutions of {0..V-1}
        std::vector<std::vector<int>> invols;
        std::vector<int> cur(V, -1);
        std::function<void(int)> gen_invol = [&](int v) {
            if (v == V) {
                invols.push_back(cur);
                return;
            }
            if (cur[v] != -1) {
                gen_invol(v + 1);
                return;
            }
            cur[v] = v;
            gen_invol(v + 1);
            cur[v] = -1;
            for (int w = v + 1; w < V; ++w) {
                if (cur[w] != -1) continue;
                cur[v] = w;
                cur[w] = v;
                gen_invol(v + 1);
                cur[v] = cur[w] = -1;
            }
        };
        gen_invol(0);

        // all edge multisets of size <= max_edges over the V(V+1)/2 slots
        std::vector<std::pair<int, int>> slots;
        for (int a = 0; a < V; ++a)
            for (int b = a; b < V; ++b) slots.emplace_back(a, b);
        std::vector<std::vector<std::pair<int, int>>> edge_sets;
        std::vector<std::pair<int, int>> es;
        std::function<void(size_t)> gen_edges = [&](size_t slot) {
            edge_sets.push_back(es);
            if ((int)es.size() == max_edges) return;
            for (size_t s = slot; s < slots.size(); ++s) {
                es.push_back(slots[s]);
                gen_edges(s);
                es.pop_back();
            }
        };
        gen_edges(0);

        for (const auto& vmap : invols)
            for (const auto& edges : edge_sets) {
                // every orbit structure: self-axial, self-inverted, or a
                // pair with a later edge, aligned fwd or rev
                int E = (int)edges.size();
                std::vector<RawModel::EPair> emaps;
                std::vector<bool> taken(E, false);
                std::function<void(int)> gen_tags = [&](int e) {
                    while (e < E && taken[e]) ++e;
                    if (e == E) {
                        RawModel raw;
                        for (int v = 0; v < V; ++v) raw.vertices.push_back(vname(v));
                        for (int i = 0; i < E; ++i)
                            raw.edges.push_back(
                                {ename(i), vname(edges[i].first), vname(edges[i].second)});
                        for (int v = 0; v < V; ++v)
                            if (vmap[v] > v) raw.vmaps.push_back({vname(v), vname(vmap[v])});
                        raw.emaps = emaps;
                        if (!validate(raw).ok) return;
                        Model m = Model::from_raw(raw);
                        for (const Model& seen : classes)
                            if (equivariant_isomorphic(m, seen)) return;
                        classes.push_back(std::move(m));
                        return;
                    }
                    taken[e] = true;
                    for (const char* tag : {"axial", "inverted"}) {
                        emaps.push_back({ename(e), ename(e), tag});
                        gen_tags(e + 1);
                        emaps.pop_back();
                    }
                    for (int f = e + 1; f < E; ++f) {
                        if (taken[f]) continue;
                        taken[f] = true;
                        for (const char* tag : {"fwd", "rev"}) {
                            emaps.push_back({ename(e), ename(f), tag});
                            gen_tags(e + 1);
                            emaps.pop_back();
                        }
                        taken[f] = false;
                    }
                    taken[e] = false;
                };
                gen_tags(0);
            }
    }
    return classes;
}

} // namespace

TEST_CASE("the enumerator agrees with a brute-force reference census") {
    auto brute = brute_force_census(3, 4);
    auto fast = enumerate_models({3, 1});
    CHECK(brute.size() == fast.size());
    // same classes, not just the same count
    for (const Model& b : brute) {
        int hits = 0;
        for (const Model& f : fast)
            if (equivariant_isomorphic(b, f)) ++hits;
        CHECK(hits == 1);
    }
}

TEST_CASE("every census model validates and is pairwise non-isomorphic") {
    auto models = enumerate_models({3, 1});
    for (const Model& m : models) {
        Model reparsed = parse_model(serialize_model(m));
        CHECK(reparsed == m);
    }
    for (size_t i = 0; i < models.size(); ++i)
        for (size_t j = i + 1; j < models.size(); ++j)
            CHECK_FALSE(equivariant_isomorphic(models[i], models[j]));
}

TEST_CASE("enumeration is deterministic") {
    auto a = enumerate_models({4, 1});
    auto b = enumerate_models({4, 1});
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("parallel kernel reproduces the serial reference") {
    for (int jobs : {2, 4}) {
        auto serial = enumerate_models_serial({4, 1});
        auto parallel = enumerate_models_parallel({4, jobs});
        REQUIRE(serial.size() == parallel.size());
        for (size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
    }
}

TEST_CASE("certificates agree with the exact isomorphism test") {
    auto models = enumerate_models({3, 1});
    for (size_t i = 0; i < models.size(); ++i) {
        // same class after a relabeling round trip
        Model again = parse_model(serialize_model(models[i]));
        CHECK(canonical_certificate(again.core) ==
              canonical_certificate(models[i].core));
        for (size_t j = i + 1; j < models.size(); ++j) {
            bool same_cert = canonical_certificate(models[i].core) ==
                             canonical_certificate(models[j].core);
            CHECK(same_cert == equivariant_isomorphic(models[i], models[j]));
        }
    }
}

TEST_CASE("certificates are invariant under random relabeling") {
    std::mt19937 rng(4242);
    auto models = enumerate_models({4, 1});
    for (int trial = 0; trial < 60; ++trial) {
        const Model& m = models[rng() % models.size()];
        // rename everything and shuffle the declaration order
        std::vector<std::string> vnew(m.vertex_count()), enew(m.edge_count());
        std::vector<int> vperm(m.vertex_count()), eperm(m.edge_count());
        std::iota(vperm.begin(), vperm.end(), 0);
        std::iota(eperm.begin(), eperm.end(), 0);
        std::shuffle(vperm.begin(), vperm.end(), rng);
        std::shuffle(eperm.begin(), eperm.end(), rng);
        for (int v = 0; v < m.vertex_count(); ++v)
            vnew[v] = "R" + std::to_string(vperm[v]);
        for (int e = 0; e < m.edge_count(); ++e)
            enew[e] = "S" + std::to_string(eperm[e]);
        RawModel raw;
        for (int v : vperm) raw.vertices.push_back(vnew[v]);
        for (int e : eperm)
            raw.edges.push_back({enew[e], vnew[m.core.ends[e][0]], vnew[m.core.ends[e][1]]});
        for (int v = 0; v < m.vertex_count(); ++v)
            if (m.core.vmap[v] > v) raw.vmaps.push_back({vnew[v], vnew[m.core.vmap[v]]});
        for (int e = 0; e < m.edge_count(); ++e) {
            if (m.core.kind[e] == EdgeKind::axial)
                raw.emaps.push_back({enew[e], enew[e], "axial"});
            else if (m.core.kind[e] == EdgeKind::inverted)
                raw.emaps.push_back({enew[e], enew[e], "inverted"});
            else if (m.core.emap[e] > e)
                raw.emaps.push_back(
                    {enew[e], enew[m.core.emap[e]], m.core.rev[e] ? "rev" : "fwd"});
        }
        Model relabeled = Model::from_raw(raw);
        CHECK(canonical_certificate(relabeled.core) == canonical_certificate(m.core));
        CHECK(equivariant_isomorphic(relabeled, m));
    }
}

TEST_CASE("certificates are invariant under relabeling of builders") {
    Model a = build_free(2);
    std::string renamed = "involution-graph v1\n"
                          "vertex Zleft\nvertex Zright\n"
                          "edge k1 Zleft Zright\nedge k2 Zleft Zright\n"
                          "edge m1 Zleft Zleft\nedge m2 Zright Zright\n"
                          "edge n1 Zleft Zleft\nedge n2 Zright Zright\n"
                          "vmap Zleft Zright\n"
                          "emap k1 k2 rev\nemap m1 m2 fwd\nemap n1 n2 fwd\n";
    CHECK(canonical_certificate(a.core) == canonical_certificate(parse_model(renamed).core));
}

TEST_CASE("verify_theorem at the classical base cases") {
    CensusReport rep = verify_theorem(1, 4);
    CHECK(rep.pass);
    CHECK(rep.failures.empty());
    CHECK(rep.under_covered.empty());
    std::set<std::tuple<bool, int, int>> g1;
    for (const auto& [t, count] : rep.realized) {
        CHECK(count > 0);
        if (t.g == 1) g1.insert({t.free, t.n, t.m});
    }
    CHECK(g1 == std::set<std::tuple<bool, int, int>>{
                    {true, 0, 0}, {false, 0, 1}, {false, 2, 0}});
}

TEST_CASE("verify_theorem at genus 2") {
    CensusReport rep = verify_theorem(2, 6);
    CHECK(rep.pass);
    std::set<std::tuple<bool, int, int>> g2;
    for (const auto& [t, count] : rep.realized)
        if (t.g == 2) g2.insert({t.free, t.n, t.m});
    // no free tuple: 2 is even
    CHECK(g2 == std::set<std::tuple<bool, int, int>>{
                    {false, 1, 0}, {false, 1, 1}, {false, 3, 0}});
}

TEST_CASE("under-covered classes are reported, not failed") {
    // at 2 edges the genus-1 builders I_1 (2 edges) and L_1^{0,1} (1 edge)
    // fit, but L_1^{2,0} needs build_nonfree(2,0,0) with 2 connector edges
    // -- still fits; shrink to 1 edge to force under-coverage
    CensusReport rep = verify_theorem(1, 1);
    CHECK(rep.pass);
    CHECK_FALSE(rep.under_covered.empty());
}

TEST_CASE("the node budget guards the enumeration") {
    CHECK_THROWS_AS(enumerate_models({6, 1, 100}), resource_limit_error);
    CHECK_THROWS_AS(enumerate_models_parallel({6, 2, 100}), resource_limit_error);
}
