#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hb/canonical.hpp"
#include "hb/invariants.hpp"
#include "hb/model.hpp"

namespace hb {

// The tuple every move must preserve or transform as specified.
struct InvariantTuple {
    int g = 0;
    bool free = false;
    int n = 0, m = 0;
    auto operator<=>(const InvariantTuple&) const = default;
};

InvariantTuple invariant_tuple(const Model& m);

enum class OrbitKind { axial, moved_pair };

// Result of deleting a splittable edge orbit (an axial edge or a moved
// pair; inverted edges are not splittable, their co-cores meet the fixed
// set in an arc).  Component Betti numbers sum to:
//   axial:      g-1 (connected) or g (two components)
//   moved pair: g-2 (connected), g-1 (two) or g (three components)
struct SplitComponent {
    std::vector<std::string> vertices;
    int betti = 0;
    bool preserved = false; // involution maps the component onto itself
};

struct SplitResult {
    OrbitKind kind = OrbitKind::axial;
    std::vector<SplitComponent> components;
    bool connected_after = false;
};

SplitResult split(const Model& m, const std::string& edge_name);

// Adds an axial edge consuming two distinct free poles.  Genus +1; if the
// poles were the two ends of the same arc the arc closes up (n-1, m+1),
// otherwise two arcs join (n-1, m unchanged).
Model attach_axial_edge(const Model& m, const Pole& a, const Pole& b);

// Adds a swapped pair of edges u--w and su--sw.  Genus +2; the fixed set
// and freeness are unchanged.
Model attach_moved_pair(const Model& m, const std::string& u, const std::string& w);

// Adds an inverted loop at a fixed vertex.  Genus +1, n+1.
Model attach_inverted_loop(const Model& m, const std::string& vertex);

// Legality of contracting the orbit of the named edge; nullopt when
// legal, otherwise one of: "inverted-orbit", "loop", "parallel-to-image",
// "fixed-dart-overflow".
std::optional<std::string> contract_illegal(const Model& m, const std::string& edge_name);

// Equivariantly contracts a legal orbit, merging its endpoints.  Genus,
// freeness, n, m and connectedness are unchanged.
Model contract(const Model& m, const std::string& edge_name);

struct TraceStep {
    std::string move;
    std::string orbit; // smallest edge name of the orbit
    InvariantTuple before, after;
};
using Trace = std::vector<TraceStep>;

// Greedily contracts the smallest-named legal orbit until none applies.
std::pair<Model, Trace> normalize(const Model& m);

// True iff deleting any splittable orbit disconnects the spine
// (vacuously true when none exists); advisory check that the class is
// the hyperelliptic one L_g^{g+1,0}.  Rejects free models.
bool hyperelliptic_diagnostic(const Model& m);

} // namespace hb
