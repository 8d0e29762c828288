#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hb/invariants.hpp"
#include "hb/model.hpp"

namespace hb {

// One equivalence class of involutions: either the free class I_g with
// g = 2n+1, or the non-free class L_g^{n,m} with g = n + 2m + 2l - 1,
// fixed set n arcs and m circles, and n + 2m >= 1.
struct CanonicalForm {
    bool free = false;
    int n = 0, m = 0, l = 0; // for free forms m = l = 0 and g = 2n+1

    int genus() const { return free ? 2 * n + 1 : n + 2 * m + 2 * l - 1; }
    std::string display() const;

    auto operator<=>(const CanonicalForm&) const = default;
};

// Minimal spine of I_g for g = 2n+1: two swapped vertices joined by a
// swapped parallel pair, plus n swapped loop pairs.
Model build_free(int n);

// Minimal spine of L_g^{n,m} with l extra swapped loop pairs: fixed
// vertices u1..u_{n+m} chained by swapped parallel pairs, an axial loop
// at each of the last m of them, l swapped loop pairs at u1.
// Rejects n + 2m = 0 (a non-free involution has fixed points).
Model build_nonfree(int n, int m, int l);

// All classes of genus g, ordered free first, then by (n, m).
std::vector<CanonicalForm> enumerate_classes(int g);
int count_classes(int g);

// Boundary invariants of a class computed from the closed formulas.
BoundaryData class_boundary(const CanonicalForm& c);

// Unordered pairs of distinct genus-g classes whose restrictions to the
// boundary surface are equivalent: non-free classes sharing n (same 2n
// boundary fixed points, same boundary quotient genus (g-n+1)/2).
std::vector<std::pair<CanonicalForm, CanonicalForm>> boundary_collisions(int g);

} // namespace hb
