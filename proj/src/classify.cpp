#include "hb/classify.hpp"

#include "hb/invariants.hpp"

namespace hb {

namespace {
[[noreturn]] void violation(const Model& m, const std::string& why) {
    throw theorem_violation_error("classification impossible: " + why +
                                  "\nmodel dump:\n" + serialize_model(m));
}
} // namespace

CanonicalForm classify(const Model& m) {
    int g = genus(m);
    if (is_free(m)) {
        if (g % 2 == 0) violation(m, "free model of even genus " + std::to_string(g));
        return {true, (g - 1) / 2, 0, 0};
    }
    FixedSetSummary fs = fixed_set(m);
    int n = fs.n_arcs, mm = fs.m_circles;
    if (n + 2 * mm < 1) violation(m, "non-free model with empty fixed set");
    if (n + 2 * mm > g + 1)
        violation(m, "n + 2m = " + std::to_string(n + 2 * mm) + " exceeds g + 1 = " +
                         std::to_string(g + 1));
    if ((n - (g + 1)) % 2 != 0)
        violation(m, "n = " + std::to_string(n) + " has wrong parity for genus " +
                         std::to_string(g));
    return {false, n, mm, (g + 1 - n - 2 * mm) / 2};
}

bool same_class(const Model& a, const Model& b) { return classify(a) == classify(b); }

} // namespace hb
