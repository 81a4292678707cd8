// Generators for the dense deterministic graph H (minimum degree >= floor(alpha*n)),
// plus implicit constant-space views of the structured families for large n,
// where materializing ~alpha*n^2/2 edges is not an option.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "geopert/graph.hpp"
#include "geopert/rng.hpp"

namespace geopert {

enum class HFamily { RandomSupergraph, BlownUpCycle, Bipartite };

inline const char* family_name(HFamily f) {
    switch (f) {
        case HFamily::RandomSupergraph: return "random-supergraph";
        case HFamily::BlownUpCycle: return "blown-up-cycle";
        case HFamily::Bipartite: return "bipartite";
    }
    return "?";
}

inline HFamily family_from_name(const std::string& s) {
    if (s == "random-supergraph") return HFamily::RandomSupergraph;
    if (s == "blown-up-cycle") return HFamily::BlownUpCycle;
    if (s == "bipartite") return HFamily::Bipartite;
    throw std::invalid_argument("unknown H family: " + s);
}

// Complete bipartite graph with parts A = {0..floor(alpha*n)-1} and B = the
// rest. Minimum degree |A|; for alpha < 1/2 the parts are unbalanced, so H
// alone has no Hamilton cycle.
inline Graph gen_bipartite_counterexample(int n, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("gen_bipartite_counterexample: alpha out of (0, 1/2)");
    const int a = static_cast<int>(std::floor(alpha * n));
    if (a < 1) throw std::invalid_argument("gen_bipartite_counterexample: floor(alpha*n) < 1");
    Graph g(n);
    for (int u = 0; u < a; ++u)
        for (int v = a; v < n; ++v) g.add_edge(u, v);
    g.finalize();
    return g;
}

namespace detail {

// Contiguous near-equal clusters: the first (n mod k) clusters get one extra
// vertex. cluster_of is O(1) arithmetic.
struct ClusterLayout {
    int n, k, q, rem;
    ClusterLayout(int n_, int k_) : n(n_), k(k_), q(n_ / k_), rem(n_ % k_) {}
    int cluster_of(int v) const {
        const int cut = rem * (q + 1);
        return v < cut ? v / (q + 1) : rem + (v - cut) / q;
    }
    int cluster_size(int c) const { return c < rem ? q + 1 : q; }
};

// Raise any deficient vertex to degree >= need by joining it to its lowest-id
// non-neighbors. Deterministic.
inline void patch_min_degree(Graph& g, int need) {
    for (int v = 0; v < g.n(); ++v) {
        if (g.degree(v) >= need) continue;
        for (int u = 0; u < g.n() && g.degree(v) < need; ++u)
            if (u != v && !g.has_edge(u, v)) g.add_edge(u, v);
    }
    g.finalize();
}

}  // namespace detail

// Cycle of ceil(1/alpha) clusters; each cluster is complete and completely
// joined to the two adjacent clusters. Implicit: edge tests are pure
// arithmetic, nothing is stored.
class BlownUpCycleView {
public:
    BlownUpCycleView(int n, double alpha)
        : layout_(n, std::min(n, static_cast<int>(std::ceil(1.0 / alpha)))) {
        if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("BlownUpCycleView: alpha out of (0, 1/2)");
        if (n < 1) throw std::invalid_argument("BlownUpCycleView: n < 1");
    }

    int n() const { return layout_.n; }
    int clusters() const { return layout_.k; }

    bool has_edge(int u, int v) const {
        if (u == v || u < 0 || v < 0 || u >= layout_.n || v >= layout_.n) return false;
        const int cu = layout_.cluster_of(u), cv = layout_.cluster_of(v);
        if (cu == cv) return true;
        const int diff = std::abs(cu - cv);
        return diff == 1 || diff == layout_.k - 1;
    }

    int degree(int v) const {
        const int c = layout_.cluster_of(v);
        if (layout_.k <= 3) return layout_.n - 1;  // everything adjacent
        const int prev = (c + layout_.k - 1) % layout_.k, next = (c + 1) % layout_.k;
        return layout_.cluster_size(c) - 1 + layout_.cluster_size(prev) + layout_.cluster_size(next);
    }

private:
    detail::ClusterLayout layout_;
};

// Implicit complete bipartite K_{a, n-a} with a = floor(alpha*n).
class BipartiteView {
public:
    BipartiteView(int n, double alpha) : n_(n), a_(static_cast<int>(std::floor(alpha * n))) {
        if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("BipartiteView: alpha out of (0, 1/2)");
        if (a_ < 1) throw std::invalid_argument("BipartiteView: floor(alpha*n) < 1");
    }
    int n() const { return n_; }
    int part_a() const { return a_; }
    bool has_edge(int u, int v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
        return (u < a_) != (v < a_);
    }
    int degree(int v) const { return v < a_ ? n_ - a_ : a_; }

private:
    int n_, a_;
};

// Explicit H with min degree >= floor(alpha*n). The binomial family samples
// G(n, p0) with p0 well above alpha and patches any deficient vertex; the
// structured families are materialized from their implicit views.
inline Graph gen_min_degree_H(int n, double alpha, HFamily family, uint64_t seed = 0) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("gen_min_degree_H: alpha out of (0, 1/2)");
    if (n < 2) throw std::invalid_argument("gen_min_degree_H: n < 2");
    const int need = static_cast<int>(std::floor(alpha * n));
    Graph g(n);
    switch (family) {
        case HFamily::Bipartite:
            return gen_bipartite_counterexample(n, alpha);
        case HFamily::BlownUpCycle: {
            BlownUpCycleView view(n, alpha);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (view.has_edge(u, v)) g.add_edge(u, v);
            break;
        }
        case HFamily::RandomSupergraph: {
            const double p0 = std::min(1.0, 1.5 * alpha + 10.0 / n);
            SplitMix64 rng(seed);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng.next_double() < p0) g.add_edge(u, v);
            break;
        }
    }
    detail::patch_min_degree(g, need);
    return g;
}

}  // namespace geopert
