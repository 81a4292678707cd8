// Exact Hamiltonicity for small graphs: subset dynamic programming over
// 2^n states with fixed start vertex 0 and parent pointers for witness
// extraction. Ground truth for cross-validating the constructive builder.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "geopert/graph.hpp"

namespace geopert {

struct OracleResult {
    bool hamiltonian = false;
    std::optional<std::vector<int>> cycle;  // present iff hamiltonian
};

// Throws std::invalid_argument when n exceeds limit. Graphs with n < 3 are
// reported non-Hamiltonian (a cycle needs three distinct vertices).
inline OracleResult exact_hamilton(const Graph& g, int limit = 20) {
    const int n = g.n();
    if (n > limit) throw std::invalid_argument("exact_hamilton: graph too large for subset DP");
    if (n < 3) return {};

    // adjacency as bitmasks
    std::vector<uint32_t> adj(n, 0);
    for (int v = 0; v < n; ++v)
        for (int w : g.neighbors(v)) adj[v] |= (1u << w);

    const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    // dp[mask] = set of endpoints v such that some path 0 -> v visits exactly mask
    std::vector<uint32_t> dp(static_cast<size_t>(1) << n, 0);
    dp[1] = 1;  // the trivial path at vertex 0
    for (uint32_t mask = 1; mask <= full; ++mask) {
        if (!(mask & 1) || dp[mask] == 0) continue;
        uint32_t ends = dp[mask];
        while (ends) {
            const int v = __builtin_ctz(ends);
            ends &= ends - 1;
            uint32_t ext = adj[v] & ~mask;
            while (ext) {
                const int w = __builtin_ctz(ext);
                ext &= ext - 1;
                dp[mask | (1u << w)] |= (1u << w);
            }
        }
    }

    uint32_t closers = dp[full] & adj[0] & ~1u;
    if (closers == 0) return {};

    // Witness: walk backwards from the lowest valid closing endpoint.
    std::vector<int> cycle;
    int v = __builtin_ctz(closers);
    uint32_t mask = full;
    while (v != 0) {
        cycle.push_back(v);
        const uint32_t pmask = mask & ~(1u << v);
        uint32_t cands = dp[pmask] & adj[v];
        v = __builtin_ctz(cands);
        mask = pmask;
    }
    cycle.push_back(0);
    std::reverse(cycle.begin(), cycle.end());

    OracleResult res;
    res.hamiltonian = true;
    res.cycle = std::move(cycle);
    return res;
}

}  // namespace geopert
