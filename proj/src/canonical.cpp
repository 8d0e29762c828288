#include "hb/canonical.hpp"

namespace hb {

std::string CanonicalForm::display() const {
    if (free) return "I_" + std::to_string(genus());
    return "L_" + std::to_string(genus()) + "^{" + std::to_string(n) + "," +
           std::to_string(m) + "}";
}

Model build_free(int n) {
    if (n < 0) throw error("build_free: n must be >= 0");
    RawModel raw;
    raw.vertices = {"a", "b"};
    raw.vmaps.push_back({"a", "b"});
    raw.edges.push_back({"c1", "a", "b"});
    raw.edges.push_back({"c2", "a", "b"});
    raw.emaps.push_back({"c1", "c2", "rev"});
    for (int i = 1; i <= n; ++i) {
        std::string la = "s" + std::to_string(i) + "a";
        std::string lb = "s" + std::to_string(i) + "b";
        raw.edges.push_back({la, "a", "a"});
        raw.edges.push_back({lb, "b", "b"});
        raw.emaps.push_back({la, lb, "fwd"});
    }
    return Model::from_raw(raw);
}

Model build_nonfree(int n, int m, int l) {
    if (n < 0 || m < 0 || l < 0) throw error("build_nonfree: parameters must be >= 0");
    if (n + 2 * m == 0)
        throw error("build_nonfree: n + 2m must be >= 1 (non-free involutions have "
                    "nonempty fixed set)");
    RawModel raw;
    auto u = [](int i) { return "u" + std::to_string(i); };
    for (int i = 1; i <= n + m; ++i) raw.vertices.push_back(u(i));
    for (int i = 1; i <= n + m - 1; ++i) {
        std::string ca = "c" + std::to_string(i) + "a";
        std::string cb = "c" + std::to_string(i) + "b";
        raw.edges.push_back({ca, u(i), u(i + 1)});
        raw.edges.push_back({cb, u(i), u(i + 1)});
        raw.emaps.push_back({ca, cb, "fwd"});
    }
    for (int j = 1; j <= m; ++j) {
        std::string s = "s" + std::to_string(j);
        raw.edges.push_back({s, u(n + j), u(n + j)});
        raw.emaps.push_back({s, s, "axial"});
    }
    for (int k = 1; k <= l; ++k) {
        std::string ta = "t" + std::to_string(k) + "a";
        std::string tb = "t" + std::to_string(k) + "b";
        raw.edges.push_back({ta, u(1), u(1)});
        raw.edges.push_back({tb, u(1), u(1)});
        raw.emaps.push_back({ta, tb, "fwd"});
    }
    return Model::from_raw(raw);
}

std::vector<CanonicalForm> enumerate_classes(int g) {
    if (g < 0) throw error("enumerate_classes: genus must be >= 0");
    std::vector<CanonicalForm> out;
    if (g % 2 == 1) out.push_back({true, (g - 1) / 2, 0, 0});
    for (int n = (g + 1) % 2; n <= g + 1; n += 2)
        for (int m = (n == 0 ? 1 : 0); n + 2 * m <= g + 1; ++m)
            out.push_back({false, n, m, (g + 1 - n - 2 * m) / 2});
    return out;
}

int count_classes(int g) { return (int)enumerate_classes(g).size(); }

BoundaryData class_boundary(const CanonicalForm& c) {
    int g = c.genus();
    if (c.free) return {0, (g + 1) / 2};
    return {2 * c.n, (g - c.n + 1) / 2};
}

std::vector<std::pair<CanonicalForm, CanonicalForm>> boundary_collisions(int g) {
    auto classes = enumerate_classes(g);
    std::vector<std::pair<CanonicalForm, CanonicalForm>> out;
    for (size_t i = 0; i < classes.size(); ++i)
        for (size_t j = i + 1; j < classes.size(); ++j) {
            // the boundary restriction determines and is determined by
            // (2n, g'); among distinct same-genus classes that means two
            // non-free classes with equal n
            if (classes[i].free || classes[j].free) continue;
            if (classes[i].n == classes[j].n) out.emplace_back(classes[i], classes[j]);
        }
    return out;
}

} // namespace hb
