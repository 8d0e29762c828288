#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hb/canonical.hpp"
#include "hb/model.hpp"
#include "hb/moves.hpp"

namespace hb {

struct CensusOptions {
    int max_edges = 0;
    int jobs = 1; // 1 runs the serial reference kernel
    long long node_budget = 4'000'000'000LL;
};

// Order-canonical labeling of (graph, involution, tags): equal vectors
// iff the models are equivariantly isomorphic.  Computed by partition
// refinement plus individualization, minimizing the encoded orbit list.
std::vector<int32_t> canonical_certificate(const CoreModel& c);

// One representative per equivariant-isomorphism class of valid connected
// models with at most max_edges edges, in a deterministic order
// independent of the worker count.  Throws resource_limit_error when the
// search exceeds the node budget.
std::vector<Model> enumerate_models(const CensusOptions& opt);
std::vector<Model> enumerate_models_serial(const CensusOptions& opt);  // reference
std::vector<Model> enumerate_models_parallel(const CensusOptions& opt); // OpenMP

struct CensusReport {
    int max_genus = 0;
    int max_edges = 0;
    // spine classes found per (genus, free?, n, m)
    std::map<InvariantTuple, int> realized;
    // the theorem's class list per genus <= max_genus
    std::map<int, std::vector<CanonicalForm>> predicted;
    // classes whose canonical builder needs more than max_edges edges;
    // reported, not failed
    std::vector<std::string> under_covered;
    std::vector<std::string> failures; // counterexamples, empty iff pass
    bool pass = false;
};

// Runs the census and checks both directions of the classification at
// desk scale: every enumerated spine's tuple is predicted, and every
// predicted class of genus <= max_genus whose builder fits is realized.
// Also checks the quotient formulas and the Euler-characteristic
// identities on every model.
CensusReport verify_theorem(int max_genus, int max_edges, int jobs = 1);

// The checking half of verify_theorem over an already enumerated census.
CensusReport verify_census(int max_genus, int max_edges,
                           const std::vector<Model>& models);

} // namespace hb
