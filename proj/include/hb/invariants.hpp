#pragma once

#include <string>
#include <vector>

#include "hb/model.hpp"

namespace hb {

// Fixed point set of the encoded involution: a disjoint union of
// properly embedded arcs and interior circles.
struct FixedSetSummary {
    int n_arcs = 0;
    int m_circles = 0;
    bool operator==(const FixedSetSummary&) const = default;
};

// The fixed axis of each fixed vertex (ball) meets its boundary sphere in
// two poles.  Fixed darts occupy poles, at most one each; axial edges join
// the poles occupied by their two darts, so components are paths or
// cycles.  Inverted edges contribute standalone arcs and stay outside
// the complex.
struct PoleComplex {
    std::vector<int> fixed_vertices; // vertex indices, ascending
    // pole id = 2*rank(fixed vertex) + slot; slot in {0,1}
    std::vector<int> pole_component;
    std::vector<int> pole_degree;    // 1 or 2
    std::vector<bool> component_is_cycle;
    int path_components = 0;
    int cycle_components = 0;
    int inverted_edges = 0;

    int pole_count() const { return (int)pole_component.size(); }
    // -1 when the vertex is not fixed
    int pole_id(const Model& m, int vertex, int slot) const;
};

PoleComplex pole_complex(const Model& m);

// A free pole: an end of the fixed axis of a fixed vertex not occupied by
// an axial dart, i.e. a degree-1 end of an arc of the fixed point set.
struct Pole {
    std::string vertex;
    int slot = 0; // 0 or 1; slots fill in edge-name order
    bool operator==(const Pole&) const = default;
};

std::vector<Pole> free_poles(const Model& m);

// Quotient of the spine by the involution: one vertex per vertex orbit,
// one edge per moved orbit, one edge per axial edge, and one edge to a
// fresh degree-1 mirror vertex per inverted edge.
struct QuotientData {
    struct QVertex {
        std::string name;
        bool mirror = false;
    };
    struct QEdge {
        std::string name; // orbit representative edge name
        int a = 0, b = 0; // indices into vertices
        EdgeKind source_kind = EdgeKind::axial;
    };
    std::vector<QVertex> vertices;
    std::vector<QEdge> edges;
    int quotient_genus = 0;
    int branch_arcs = 0;    // n
    int branch_circles = 0; // m
};

struct BoundaryData {
    int boundary_fixed_points = 0;  // 2n
    int boundary_quotient_genus = 0;
    bool operator==(const BoundaryData&) const = default;
};

int genus(const Model& m); // first Betti number of the spine
bool is_free(const Model& m);
FixedSetSummary fixed_set(const Model& m);

// Computes the quotient graph and checks its Betti number against the
// closed formulas (g+1)/2 (free) and (g-n+1)/2 (non-free); disagreement
// throws internal_error.
QuotientData quotient(const Model& m);

BoundaryData boundary_data(const Model& m);

} // namespace hb
