// Undirected simple graph on vertex ids 0..n-1: sorted neighbor lists plus a
// hash-set membership structure for O(1) expected edge tests.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

namespace geopert {

class Graph {
public:
    explicit Graph(int n = 0) : n_(n), adj_(n) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    }

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        g.finalize();
        return g;
    }

    // Ignores duplicates; throws on self-loops or out-of-range ids.
    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("Graph: self-loop");
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("Graph: vertex out of range");
        if (!set_.insert(key(u, v)).second) return;
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        sorted_ = false;
    }

    void finalize() {
        if (sorted_) return;
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
        sorted_ = true;
    }

    bool has_edge(int u, int v) const {
        if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) return false;
        return set_.count(key(u, v)) > 0;
    }

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int n() const { return n_; }
    int64_t edge_count() const { return static_cast<int64_t>(set_.size()); }

    // Edges as (u, v) with u < v, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(set_.size());
        for (int u = 0; u < n_; ++u)
            for (int v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    uint64_t key(int u, int v) const {
        uint64_t a = static_cast<uint32_t>(std::min(u, v));
        uint64_t b = static_cast<uint32_t>(std::max(u, v));
        return (a << 32) | b;
    }

    int n_;
    bool sorted_ = true;
    std::vector<std::vector<int>> adj_;
    std::unordered_set<uint64_t> set_;
};

inline int min_degree(const Graph& g) {
    if (g.n() == 0) throw std::invalid_argument("min_degree: empty graph");
    int md = g.degree(0);
    for (int v = 1; v < g.n(); ++v) md = std::min(md, g.degree(v));
    return md;
}

// Which input graphs contain a given union edge.
enum class UnionProv { OnlyH, OnlyG, Both };

// Edge-set union of H and G. Throws on vertex-count mismatch. Per-edge
// provenance is answered by union_provenance against the original inputs.
inline Graph union_graph(const Graph& H, const Graph& G) {
    if (H.n() != G.n()) throw std::invalid_argument("union_graph: vertex count mismatch");
    Graph u(H.n());
    for (auto [a, b] : H.edges()) u.add_edge(a, b);
    for (auto [a, b] : G.edges()) u.add_edge(a, b);
    u.finalize();
    return u;
}

inline UnionProv union_provenance(const Graph& H, const Graph& G, int u, int v) {
    const bool h = H.has_edge(u, v), g = G.has_edge(u, v);
    if (!h && !g) throw std::invalid_argument("union_provenance: not a union edge");
    if (h && g) return UnionProv::Both;
    return h ? UnionProv::OnlyH : UnionProv::OnlyG;
}

}  // namespace geopert
