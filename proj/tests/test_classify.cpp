#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "geopert/classify.hpp"
#include "geopert/families.hpp"
#include "geopert/rgg.hpp"

using namespace geopert;

TEST_CASE("sparse threshold R = 2 * 3^d, boundary exact") {
    // d=1, r=0.5 -> 4 cells, R = 6. Cell 0 gets exactly 6 occupants (sparse),
    // cell 2 gets 7 (dense).
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({0.01 + 0.01 * i});
    for (int i = 0; i < 7; ++i) pts.push_back({0.51 + 0.01 * i});
    const Tessellation t(1, 0.5, 2.0, static_cast<int64_t>(pts.size()));
    REQUIRE(t.cells_per_axis() == 4);
    const auto cls = classify_cells(pts, t);
    CHECK(cls.R == 6);
    CHECK(cls.dense_cells == std::vector<int64_t>{2});
    CHECK(cls.sparse_cells == std::vector<int64_t>{0, 1, 3});
    CHECK(cls.c0 == std::vector<int64_t>{1, 3});
    CHECK(cls.c1.empty());
    CHECK(cls.c2 == std::vector<int64_t>{0});
    CHECK(cls.occupants[0] == std::vector<int>{0, 1, 2, 3, 4, 5});
    CHECK(cls.occupants[2].size() == 7);
}

TEST_CASE("classification partitions cells and occupants sum to n") {
    const int n = 4000;
    const auto pts = sample_positions(n, 2, 31);
    const Tessellation t(2, 0.12, 2.0, n);
    const auto cls = classify_cells(pts, t);
    CHECK(static_cast<int64_t>(cls.sparse_cells.size() + cls.dense_cells.size()) == t.cell_count());
    CHECK(cls.c0.size() + cls.c1.size() + cls.c2.size() == cls.sparse_cells.size());
    size_t total = 0;
    for (const auto& occ : cls.occupants) {
        CHECK(std::is_sorted(occ.begin(), occ.end()));
        total += occ.size();
    }
    CHECK(total == static_cast<size_t>(n));
    for (int64_t c : cls.c2) CHECK(cls.occupants[c].size() >= 2);
    for (int64_t c : cls.c1) CHECK(cls.occupants[c].size() == 1);
    for (int64_t c : cls.c0) CHECK(cls.occupants[c].empty());
    for (int64_t c : cls.dense_cells) CHECK(static_cast<int>(cls.occupants[c].size()) > cls.R);
}

TEST_CASE("sparse-cell count tracks the Poisson tail") {
    // Cell occupancy is Bin(n, s^d); the expected number of sparse cells is
    // cell_count * P[Bin <= R], which the Poisson CDF at lambda = K
    // approximates well. The observed count must land near that estimate.
    const int n = 100000;
    const double r = 0.0401;  // 71 cells per axis, K = n/71^2 ~ 19.84
    const Tessellation t(2, r, 2.0, n);
    REQUIRE(t.cells_per_axis() == 71);
    const auto cls = classify_cells(sample_positions(n, 2, 2026), t);

    const double lambda = t.K();
    double pmf = std::exp(-lambda), cdf = pmf;
    for (int i = 1; i <= cls.R; ++i) {
        pmf *= lambda / i;
        cdf += pmf;
    }
    const double expected = cdf * static_cast<double>(t.cell_count());
    CHECK(std::abs(static_cast<double>(cls.sparse_cells.size()) - expected) < 0.15 * expected);
}

TEST_CASE("is_linked cases on a hand-built instance") {
    // Cell 0 holds vertices 0..4; u=5 and v=6 live elsewhere.
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) pts.push_back({0.01 + 0.01 * i});
    pts.push_back({0.60});
    pts.push_back({0.62});
    const Tessellation t(1, 0.5, 2.0, 7);
    const auto cls = classify_cells(pts, t);
    const int u = 5, v = 6;

    // No occupant adjacent to u.
    CHECK_FALSE(is_linked(cls, 0, u, v, Graph::from_edges(7, {{v, 0}})));
    // Distinct witnesses.
    CHECK(is_linked(cls, 0, u, v, Graph::from_edges(7, {{u, 0}, {v, 1}})));
    // Single shared witness is not enough: x and y must be distinct.
    CHECK_FALSE(is_linked(cls, 0, u, v, Graph::from_edges(7, {{u, 0}, {v, 0}})));
    // A second u-witness resolves the collision.
    const Graph h2 = Graph::from_edges(7, {{u, 0}, {u, 1}, {v, 0}});
    CHECK(is_linked(cls, 0, u, v, h2));
    CHECK(linked_pair(cls, 0, u, v, h2) == std::make_pair(1, 0));
    // u == v asks for two distinct H-neighbors of u in the cell.
    CHECK_FALSE(is_linked(cls, 0, u, u, Graph::from_edges(7, {{u, 0}})));
    CHECK(is_linked(cls, 0, u, u, Graph::from_edges(7, {{u, 0}, {u, 1}})));
    // Empty cell is never linked.
    CHECK_FALSE(is_linked(cls, 1, u, v, h2));
    // Occupants u, v themselves never serve as witnesses.
    const auto cls2 = classify_cells(pts, t);
    CHECK_FALSE(is_linked(cls2, 0, 0, 1, Graph::from_edges(7, {{0, 1}})));
}

TEST_CASE("is_linked is symmetric in u and v") {
    const int n = 400;
    const auto pts = sample_positions(n, 2, 8);
    const Tessellation t(2, 0.25, 2.0, n);
    const auto cls = classify_cells(pts, t);
    const Graph H = gen_min_degree_H(n, 0.3, HFamily::RandomSupergraph, 77);
    SplitMix64 rng(5);
    for (int it = 0; it < 50; ++it) {
        const int u = static_cast<int>(rng.next_below(n)), v = static_cast<int>(rng.next_below(n));
        for (int64_t c = 0; c < t.cell_count(); ++c)
            REQUIRE(is_linked(cls, c, u, v, H) == is_linked(cls, c, v, u, H));
    }
}

TEST_CASE("find_linked_cell matches an independent exhaustive scan") {
    const int n = 500;
    const auto pts = sample_positions(n, 2, 19);
    const Tessellation t(2, 0.3, 2.0, n);
    const auto cls = classify_cells(pts, t);
    const Graph H = gen_min_degree_H(n, 0.3, HFamily::RandomSupergraph, 55);

    // Brute-force reference: first non-excluded cell holding distinct x, y
    // outside {u, v} with ux and vy in H.
    auto reference = [&](int u, int v, auto&& excluded) -> std::optional<int64_t> {
        for (int64_t c = 0; c < t.cell_count(); ++c) {
            if (excluded(c)) continue;
            for (int x : cls.occupants[c]) {
                if (x == u || x == v || !H.has_edge(u, x)) continue;
                for (int y : cls.occupants[c])
                    if (y != x && y != u && y != v && H.has_edge(v, y)) return c;
            }
        }
        return std::nullopt;
    };

    SplitMix64 rng(3);
    for (int it = 0; it < 40; ++it) {
        const int u = static_cast<int>(rng.next_below(n)), v = static_cast<int>(rng.next_below(n));
        const int64_t skip_below = static_cast<int64_t>(rng.next_below(t.cell_count()));
        auto excl = [&](int64_t c) { return c < skip_below; };
        CHECK(find_linked_cell(cls, u, v, H, excl) == reference(u, v, excl));
    }
    // Everything excluded: absence is a value, not an error.
    CHECK(find_linked_cell(cls, 0, 1, H, [](int64_t) { return true; }) == std::nullopt);

    // count_unlinked agrees with a direct fold.
    const int u = 3, v = 141;
    int64_t cnt = 0;
    for (int64_t c = 0; c < t.cell_count(); ++c)
        if (!is_linked(cls, c, u, v, H)) ++cnt;
    CHECK(count_unlinked(cls, u, v, H) == cnt);
}

TEST_CASE("gamma components match an independent union-find") {
    const int n = 900;
    const auto pts = sample_positions(n, 2, 61);
    const Tessellation t(2, 0.17, 2.0, n);
    const auto cls = classify_cells(pts, t);
    const auto gamma = build_gamma(cls, t);
    REQUIRE(gamma.cells == cls.dense_cells);

    // Reference partition via union-find over pairwise friendship.
    const auto m = gamma.cells.size();
    std::vector<size_t> root(m);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](size_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (t.are_friends(t.cell_at(gamma.cells[i]), t.cell_at(gamma.cells[j]))) root[find(i)] = find(j);
    std::vector<size_t> reps;
    for (size_t i = 0; i < m; ++i)
        if (find(i) == i) reps.push_back(i);
    CHECK(static_cast<size_t>(gamma.num_components) == reps.size());
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            CHECK((gamma.comp[i] == gamma.comp[j]) == (find(i) == find(j)));

    // Degree cap Delta(Gamma) <= 3^d - 1 and component ids are BFS-stable:
    // component of a cell never exceeds that of any earlier cell by more than 1.
    int32_t seen_max = -1;
    for (size_t i = 0; i < m; ++i) {
        CHECK(gamma.adj[i].size() <= 8);
        CHECK(std::is_sorted(gamma.adj[i].begin(), gamma.adj[i].end()));
        CHECK(gamma.comp[i] <= seen_max + 1);
        seen_max = std::max(seen_max, gamma.comp[i]);
    }
    for (size_t i = 0; i < m; ++i) CHECK(gamma.pos_of(gamma.cells[i]) == static_cast<int32_t>(i));
    CHECK(gamma.pos_of(-5) == -1);
}

TEST_CASE("gamma with no dense cells is empty") {
    const std::vector<Point> pts{{0.1, 0.1}, {0.9, 0.9}};
    const Tessellation t(2, 0.5, 2.0, 2);
    const auto gamma = build_gamma(classify_cells(pts, t), t);
    CHECK(gamma.cells.empty());
    CHECK(gamma.num_components == 0);
}

TEST_CASE("tail bound arithmetic") {
    const auto b = claim1_bounds(1000, 40.0, 0.3);
    CHECK(b.sparse_bound == Catch::Approx(std::exp(-20.0) * 1000.0));
    CHECK(b.unlinked_bound == Catch::Approx(4.0 * std::exp(-3.0) * 1000.0));
    CHECK(b.component_bound == Catch::Approx(std::exp(-40.0 / 3.0) * 1000.0));
    CHECK(b.forbidden_budget == Catch::Approx(std::exp(-40.0 / 6.0) * 1000.0));
    CHECK_THROWS_AS(claim1_bounds(1000, -1.0, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(claim1_bounds(1000, 40.0, 0.7), std::invalid_argument);

    CHECK(azuma_tail(1.0, 100, 10.0) == Catch::Approx(std::exp(-0.5)));
    CHECK(azuma_tail(2.0, 50, 0.0) == 1.0);
    // Monotone decreasing in t.
    double prev = 1.0;
    for (double tt = 1.0; tt < 50.0; tt += 3.0) {
        const double cur = azuma_tail(1.5, 200, tt);
        CHECK(cur <= prev);
        prev = cur;
    }
    CHECK_THROWS_AS(azuma_tail(0.0, 10, 1.0), std::invalid_argument);
}
