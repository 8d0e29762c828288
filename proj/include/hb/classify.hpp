#pragma once

#include "hb/canonical.hpp"
#include "hb/model.hpp"

namespace hb {

// Maps a valid model to its class via the complete invariants
// (free?, genus, fixed set).  Throws theorem_violation_error, with the
// serialized model in the message, if the invariants fall outside the
// admissible ranges; that cannot happen for validated models.
CanonicalForm classify(const Model& m);

// Equivalence of the encoded involutions; coarser than
// equivariant_isomorphic on spines.
bool same_class(const Model& a, const Model& b);

} // namespace hb
