// Per-cell occupancy and the sparse/dense machinery: the C0/C1/C2 partition
// of sparse cells, linked-cell queries against H, the auxiliary graph Gamma
// on dense cells, and the analytic tail bounds used to annotate reports.
//
// A cell is sparse iff it holds at most R = 2*3^d vertices. Linked-cell
// searches scan cells in lexicographic order, so every "arbitrary" choice is
// deterministic.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "geopert/geometry.hpp"

namespace geopert {

struct CellClassification {
    int R = 0;
    std::vector<std::vector<int>> occupants;  // by linear cell index, each ascending
    std::vector<uint8_t> is_dense;            // flag per linear cell index
    std::vector<int64_t> sparse_cells, dense_cells;  // ascending linear indices
    std::vector<int64_t> c0, c1, c2;                 // partition of sparse_cells
};

inline CellClassification classify_cells(const std::vector<Point>& positions, const Tessellation& t) {
    CellClassification cls;
    cls.R = 2;
    for (int i = 0; i < t.d(); ++i) cls.R *= 3;
    cls.occupants.assign(t.cell_count(), {});
    cls.is_dense.assign(t.cell_count(), 0);
    for (int v = 0; v < static_cast<int>(positions.size()); ++v)
        cls.occupants[t.index_of(t.cell_of(positions[v]))].push_back(v);  // ascending by construction
    for (int64_t c = 0; c < t.cell_count(); ++c) {
        const auto k = static_cast<int>(cls.occupants[c].size());
        if (k > cls.R) {
            cls.is_dense[c] = 1;
            cls.dense_cells.push_back(c);
        } else {
            cls.sparse_cells.push_back(c);
            if (k == 0) cls.c0.push_back(c);
            else if (k == 1) cls.c1.push_back(c);
            else cls.c2.push_back(c);
        }
    }
    return cls;
}

// {u,v}-linked: the cell holds distinct x, y outside {u,v} with ux and vy
// edges of H. u == v asks for a {v,v}-linked cell. O(occupants) per call.
template <class HG>
bool is_linked(const CellClassification& cls, int64_t cell, int u, int v, const HG& H) {
    int a_first = -1, a_second = -1;  // occupants adjacent to u
    int b_first = -1, b_second = -1;  // occupants adjacent to v
    for (int w : cls.occupants[cell]) {
        if (w == u || w == v) continue;
        if (H.has_edge(u, w)) {
            if (a_first < 0) a_first = w;
            else if (a_second < 0) a_second = w;
        }
        if (H.has_edge(v, w)) {
            if (b_first < 0) b_first = w;
            else if (b_second < 0) b_second = w;
        }
        if (a_second >= 0 && b_second >= 0) break;
    }
    if (a_first < 0 || b_first < 0) return false;
    return a_first != b_first || a_second >= 0 || b_second >= 0;
}

// The deterministic (x, y) witness for a linked cell: lexicographically
// smallest pair with x adjacent to u, y adjacent to v, x != y.
template <class HG>
std::optional<std::pair<int, int>> linked_pair(const CellClassification& cls, int64_t cell, int u, int v,
                                               const HG& H) {
    const auto& occ = cls.occupants[cell];
    for (int x : occ) {
        if (x == u || x == v || !H.has_edge(u, x)) continue;
        for (int y : occ) {
            if (y == x || y == u || y == v || !H.has_edge(v, y)) continue;
            return std::make_pair(x, y);
        }
    }
    return std::nullopt;
}

// First cell in lexicographic order that is {u,v}-linked and not excluded.
// Absence is a value; the caller turns it into a build failure.
template <class HG, class Excluded>
std::optional<int64_t> find_linked_cell(const CellClassification& cls, int u, int v, const HG& H,
                                        Excluded&& excluded) {
    const auto total = static_cast<int64_t>(cls.occupants.size());
    for (int64_t c = 0; c < total; ++c) {
        if (excluded(c)) continue;
        if (is_linked(cls, c, u, v, H)) return c;
    }
    return std::nullopt;
}

template <class HG>
int64_t count_unlinked(const CellClassification& cls, int u, int v, const HG& H) {
    int64_t cnt = 0;
    for (int64_t c = 0; c < static_cast<int64_t>(cls.occupants.size()); ++c)
        if (!is_linked(cls, c, u, v, H)) ++cnt;
    return cnt;
}

// Auxiliary graph on dense cells, edges between friends. Component ids are
// stable: numbered by smallest member cell.
struct GammaGraph {
    std::vector<int64_t> cells;              // dense cells, ascending
    std::vector<std::vector<int32_t>> adj;   // positions into cells, ascending
    std::vector<int32_t> comp;               // component id per position
    int32_t num_components = 0;

    int32_t pos_of(int64_t cell) const {
        auto it = pos_.find(cell);
        return it == pos_.end() ? -1 : it->second;
    }

    std::unordered_map<int64_t, int32_t> pos_;
};

inline GammaGraph build_gamma(const CellClassification& cls, const Tessellation& t) {
    GammaGraph g;
    g.cells = cls.dense_cells;
    const auto m = static_cast<int32_t>(g.cells.size());
    g.adj.resize(m);
    g.comp.assign(m, -1);
    for (int32_t i = 0; i < m; ++i) g.pos_[g.cells[i]] = i;
    for (int32_t i = 0; i < m; ++i)
        for (int64_t f : t.friend_indices(g.cells[i]))
            if (auto j = g.pos_of(f); j >= 0) g.adj[i].push_back(j);  // ascending: friend_indices ascending
    // BFS component labelling in ascending cell order
    std::vector<int32_t> queue;
    for (int32_t i = 0; i < m; ++i) {
        if (g.comp[i] >= 0) continue;
        const int32_t id = g.num_components++;
        queue.assign(1, i);
        g.comp[i] = id;
        for (size_t qi = 0; qi < queue.size(); ++qi)
            for (int32_t nb : g.adj[queue[qi]])
                if (g.comp[nb] < 0) {
                    g.comp[nb] = id;
                    queue.push_back(nb);
                }
    }
    return g;
}

// The four tail bounds used by the census reports:
//   sparse_bound     = e^{-K/2} n   (sparse-cell count)
//   unlinked_bound   = 4 e^{-alpha K/4} n   (per-pair unlinked cells)
//   component_bound  = e^{-K/3} n   (Gamma components)
//   forbidden_budget = e^{-K/6} n   (|F union F*| during the build)
struct ClaimBounds {
    double sparse_bound, unlinked_bound, component_bound, forbidden_budget;
};

inline ClaimBounds claim1_bounds(int64_t n, double K, double alpha) {
    if (!(K > 0.0) || !(alpha > 0.0 && alpha < 0.5) || n < 1)
        throw std::invalid_argument("claim1_bounds: need K > 0, alpha in (0, 1/2), n >= 1");
    const auto nd = static_cast<double>(n);
    return {std::exp(-K / 2.0) * nd, 4.0 * std::exp(-alpha * K / 4.0) * nd, std::exp(-K / 3.0) * nd,
            std::exp(-K / 6.0) * nd};
}

// Azuma tail for an L-Lipschitz function of n independent coordinates:
// P[|X - E X| >= t] <= e^{-t^2 / (2 L^2 n)}.
inline double azuma_tail(double L, int64_t n, double t) {
    if (!(L > 0.0) || n < 1 || !(t >= 0.0)) throw std::invalid_argument("azuma_tail: bad parameters");
    return std::exp(-(t * t) / (2.0 * L * L * static_cast<double>(n)));
}

}  // namespace geopert
