// Random geometric graph machinery: uniform positions in [0,1]^d and RGG
// construction via grid bucketing (buckets of side >= r, candidate pairs only
// from the same or adjacent buckets), expected work O(n + |E|).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "geopert/geometry.hpp"
#include "geopert/graph.hpp"
#include "geopert/rng.hpp"

namespace geopert {

// n points, coordinates drawn independently uniform on [0,1], in vertex order
// then axis order. Deterministic given seed.
inline std::vector<Point> sample_positions(int n, int d, uint64_t seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("sample_positions: n and d must be >= 1");
    SplitMix64 rng(seed);
    std::vector<Point> pts(n);
    for (auto& pt : pts) {
        pt.resize(d);
        for (int i = 0; i < d; ++i) pt[i] = rng.next_double();
    }
    return pts;
}

// Exactly the pairs at l_p distance <= r become edges (closed inequality).
inline Graph build_rgg(const std::vector<Point>& positions, double r, double p) {
    if (positions.empty()) throw std::invalid_argument("build_rgg: no positions");
    const int n = static_cast<int>(positions.size());
    const int d = static_cast<int>(positions[0].size());

    // Bucket grid: side 1/B >= r. Cap the bucket count near n so tiny radii
    // do not allocate an oversized grid.
    int64_t B = (r >= 1.0) ? 1 : static_cast<int64_t>(std::floor(1.0 / r));
    const auto cap = static_cast<int64_t>(std::ceil(std::pow(4.0 * n, 1.0 / d))) + 1;
    B = std::max<int64_t>(1, std::min(B, cap));
    int64_t nbuckets = 1;
    for (int i = 0; i < d; ++i) nbuckets *= B;

    std::vector<std::vector<int>> bucket(nbuckets);
    std::vector<int64_t> bucket_of(n);
    for (int v = 0; v < n; ++v) {
        int64_t idx = 0;
        for (int i = 0; i < d; ++i) {
            auto k = static_cast<int64_t>(positions[v][i] * B);
            if (k >= B) k = B - 1;
            idx = idx * B + k;
        }
        bucket_of[v] = idx;
        bucket[idx].push_back(v);
    }

    // Offsets into the 3^d neighborhood; only lexicographically positive ones
    // so each bucket pair is scanned once.
    std::vector<std::vector<int>> offsets;
    std::vector<int> cur(d, -1);
    for (;;) {
        bool positive = false;
        for (int i = 0; i < d; ++i) {
            if (cur[i] > 0) { positive = true; break; }
            if (cur[i] < 0) break;
        }
        if (positive) offsets.push_back(cur);
        int i = d - 1;
        while (i >= 0 && cur[i] == 1) cur[i--] = -1;
        if (i < 0) break;
        ++cur[i];
    }

    Graph g(n);
    std::vector<int64_t> coords(d);
    for (int64_t b = 0; b < nbuckets; ++b) {
        const auto& here = bucket[b];
        if (here.empty()) continue;
        // in-bucket pairs
        for (size_t i = 0; i < here.size(); ++i)
            for (size_t j = i + 1; j < here.size(); ++j)
                if (lp_distance(positions[here[i]], positions[here[j]], p) <= r)
                    g.add_edge(here[i], here[j]);
        // decode bucket coordinates
        int64_t t = b;
        for (int i = d - 1; i >= 0; --i) { coords[i] = t % B; t /= B; }
        for (const auto& off : offsets) {
            int64_t nb = 0;
            bool ok = true;
            for (int i = 0; i < d; ++i) {
                const int64_t c = coords[i] + off[i];
                if (c < 0 || c >= B) { ok = false; break; }
                nb = nb * B + c;
            }
            if (!ok || bucket[nb].empty()) continue;
            for (int u : here)
                for (int v : bucket[nb])
                    if (lp_distance(positions[u], positions[v], p) <= r) g.add_edge(u, v);
        }
    }
    g.finalize();
    return g;
}

}  // namespace geopert
