#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hb/errors.hpp"

namespace hb {

// How an involution acts on a self-mapped edge (1-handle):
//   axial    -- fixes both darts; the handle is rotated about its core.
//   inverted -- swaps the two darts; the handle is rotated about a
//               diameter of its co-core and its attaching disks swap.
// Edges in a two-element orbit are "moved".
enum class EdgeKind : uint8_t { axial, inverted, moved };

// Unchecked transcription of the text format (or of programmatic input).
// validate() turns this into a report; Model::from_raw builds a Model.
struct RawModel {
    struct Edge {
        std::string id, v1, v2;
    };
    struct VPair {
        std::string a, b;
    };
    struct EPair {
        std::string e, f, tag; // tag: axial | inverted | fwd | rev
    };

    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    std::vector<VPair> vmaps;
    std::vector<EPair> emaps;
};

struct Violation {
    std::string rule;  // one of the rule identifiers below
    std::string where; // first offending element, human readable
};

// Rule identifiers produced by validate(), also listed in README.md.
namespace rules {
inline constexpr const char* bad_identifier = "bad-identifier";
inline constexpr const char* duplicate_vertex = "duplicate-vertex";
inline constexpr const char* duplicate_edge = "duplicate-edge";
inline constexpr const char* unknown_vertex = "unknown-vertex";
inline constexpr const char* unknown_edge = "unknown-edge";
inline constexpr const char* vmap_not_involution = "vmap-not-involution";
inline constexpr const char* emap_orbit_conflict = "emap-orbit-conflict";
inline constexpr const char* emap_tag_mismatch = "emap-tag-mismatch";
inline constexpr const char* missing_emap = "missing-emap";
inline constexpr const char* axial_endpoints_not_fixed = "axial-endpoints-not-fixed";
inline constexpr const char* inverted_endpoints_not_swapped = "inverted-endpoints-not-swapped";
inline constexpr const char* moved_endpoints_mismatch = "moved-endpoints-mismatch";
inline constexpr const char* fixed_dart_overflow = "fixed-dart-overflow";
inline constexpr const char* no_vertices = "no-vertices";
inline constexpr const char* not_connected = "not-connected";

// Every rule validate() can emit, in report order.
const std::vector<std::string>& all();
} // namespace rules

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations; // at most one per rule, first offender

    std::string summary() const;
};

class validation_error : public error {
public:
    explicit validation_error(ValidationReport rep)
        : error(rep.summary()), report_(std::move(rep)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

// Name-free combinatorial core shared by Model and the census kernel.
// Vertices and edges are indices; edge e owns darts 2e (at ends[e][0])
// and 2e+1 (at ends[e][1]); reversal is 2e <-> 2e+1.
struct CoreModel {
    int nv = 0;
    std::vector<std::array<int, 2>> ends; // per edge
    std::vector<int> vmap;                // involution on vertices
    std::vector<int> emap;                // involution on edges (orbit partner)
    std::vector<EdgeKind> kind;           // per edge
    std::vector<uint8_t> rev;             // moved orbits: 1 if first dart of e
                                          // maps to second dart of emap[e];
                                          // equal on both edges of the orbit

    int ne() const { return static_cast<int>(ends.size()); }
    int betti() const { return ne() - nv + 1; }
    bool vertex_fixed(int v) const { return vmap[v] == v; }
    bool edge_loop(int e) const { return ends[e][0] == ends[e][1]; }

    // dart d = 2e+i
    int dart_map(int d) const {
        int e = d >> 1, i = d & 1;
        switch (kind[e]) {
        case EdgeKind::axial:
            return d;
        case EdgeKind::inverted:
            return d ^ 1;
        case EdgeKind::moved:
            return 2 * emap[e] + (i ^ rev[e]);
        }
        return d;
    }

    int fixed_dart_count(int v) const;
    bool connected() const;

    bool operator==(const CoreModel&) const = default;
};

// An equivariant graph spine: connected multigraph plus an order-<=2
// automorphism with per-self-edge local type.  Immutable after
// construction; vertices and edges are stored sorted by name, and each
// edge's endpoints are stored with the smaller vertex name first.
struct Model {
    std::vector<std::string> vnames; // sorted
    std::vector<std::string> enames; // sorted
    CoreModel core;

    int vertex_count() const { return core.nv; }
    int edge_count() const { return core.ne(); }

    int vertex_index(const std::string& name) const;  // -1 if absent
    int edge_index(const std::string& name) const;    // -1 if absent

    bool operator==(const Model&) const = default;

    // Throws validation_error when the raw data violates any rule.
    static Model from_raw(const RawModel& raw);
};

// Checks every structural rule; never throws on bad data.
ValidationReport validate(const RawModel& raw);

// Text format (see README.md).  parse_model throws parse_error for
// syntax problems and validation_error for rule violations.
Model parse_model(const std::string& text);
std::string serialize_model(const Model& m);

struct IsoBudget {
    long long nodes = 50'000'000;
};

// True iff a graph isomorphism conjugates one involution to the other,
// matching self-edge types; decided by backtracking over vertex images.
// Throws resource_limit_error when the search exceeds budget.nodes.
bool equivariant_isomorphic(const Model& a, const Model& b, IsoBudget budget = {});
bool core_isomorphic(const CoreModel& a, const CoreModel& b, IsoBudget budget = {});

} // namespace hb
