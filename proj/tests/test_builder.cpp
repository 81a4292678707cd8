#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "geopert/builder.hpp"
#include "geopert/families.hpp"
#include "geopert/rgg.hpp"

using namespace geopert;

namespace {

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    g.finalize();
    return g;
}

// Independent certificate check against materialized graphs: permutation,
// H-tagged pairs in H, G-tagged pairs in the explicit RGG.
bool check_against_graphs(const CycleCertificate& cert, const Graph& H, const Graph& G) {
    const int n = H.n();
    if (static_cast<int>(cert.order.size()) != n || cert.prov.size() != cert.order.size()) return false;
    std::vector<uint8_t> seen(n, 0);
    for (int v : cert.order) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    for (int i = 0; i < n; ++i) {
        const int a = cert.order[i], b = cert.order[(i + 1) % n];
        const bool ok = (cert.prov[i] == EdgeProv::H) ? H.has_edge(a, b) : G.has_edge(a, b);
        if (!ok) return false;
    }
    return true;
}

// d=1 tessellation with 8 cells (r = 0.25); vertices placed cell by cell.
std::vector<Point> line_points(const std::vector<std::pair<int, int>>& cell_counts) {
    std::vector<Point> pts;
    for (auto [cell, cnt] : cell_counts)
        for (int i = 0; i < cnt; ++i) pts.push_back({0.125 * cell + 0.01 * (i + 1)});
    return pts;
}

}  // namespace

TEST_CASE("single dense cell with no H: ascending clique cycle") {
    const int n = 30;
    const auto pts = sample_positions(n, 2, 1);
    const Tessellation t(2, 10.0, 2.0, n);  // one cell
    REQUIRE(t.cell_count() == 1);
    const auto out = build_hamilton(pts, t, Graph(n));
    REQUIRE(out.ok());
    std::vector<int> expect(n);
    std::iota(expect.begin(), expect.end(), 0);
    CHECK(out.certificate->order == expect);
    for (auto pv : out.certificate->prov) CHECK(pv == EdgeProv::G);
    CHECK(out.stats.link_edges == 0);
    CHECK(out.stats.absorbers == 0);
    CHECK(out.stats.gamma_components == 1);
}

TEST_CASE("two components, one link: staged golden trace") {
    // Cells 0, 6, 7 of an 8-cell line hold 8 vertices each; Gamma has the
    // components {0} and {6,7}, so exactly one H link is needed.
    const auto pts = line_points({{0, 8}, {6, 8}, {7, 8}});
    const Tessellation t(1, 0.25, 2.0, 24);
    REQUIRE(t.cells_per_axis() == 8);
    const Graph H = complete_graph(24);
    HamiltonBuilder<Graph> b(pts, t, H);

    REQUIRE(b.gamma().cells == std::vector<int64_t>{0, 6, 7});
    CHECK(b.gamma().num_components == 2);
    CHECK(b.fstar_count() == 1);  // the singleton component {0}
    CHECK_FALSE(b.gamma_prime_connected());

    REQUIRE(b.connect_components());
    REQUIRE(b.links().size() == 1);
    const auto& l = b.links()[0];
    // Smallest component is {0}; its two lowest occupants are 0 and 1; the
    // first eligible linked cell is 6 with the lexicographic witness (8, 9).
    CHECK(l.cell_c == 0);
    CHECK(l.cell_cprime == 6);
    CHECK(l.u == 0);
    CHECK(l.v == 1);
    CHECK(l.x == 8);
    CHECK(l.y == 9);
    CHECK(b.gamma_prime_connected());
    // Both linked cells are forbidden; the merged component's last free cell
    // (7) is starved.
    CHECK(b.forbidden_cells()[0] == 1);
    CHECK(b.forbidden_cells()[6] == 1);
    CHECK(b.forbidden_cells()[7] == 0);
    CHECK(b.starved_cells()[7] == 1);
    CHECK(b.fstar_count() == 1);
    CHECK_FALSE(b.stats().fstar_empty_after_linking);

    REQUIRE(b.build_absorbers());
    CHECK(b.absorbers().empty());
    REQUIRE(b.traverse_components());
    // Each reserved in-cell edge is routed as a consecutive pair.
    for (const auto& cyc : b.component_cycles()) {
        for (auto [a, bb] : {std::pair{0, 1}, std::pair{8, 9}}) {
            bool adjacent = false, present = false;
            for (size_t i = 0; i < cyc.size(); ++i) {
                if (cyc[i] != a) continue;
                present = true;
                adjacent = cyc[(i + 1) % cyc.size()] == bb || cyc[(i + cyc.size() - 1) % cyc.size()] == bb;
            }
            if (present) CHECK(adjacent);
        }
    }
    REQUIRE(b.assemble());

    const auto out = build_hamilton(pts, t, H);
    REQUIRE(out.ok());
    CHECK(out.stats.link_edges == 1);
    CHECK(check_against_graphs(*out.certificate, H, build_rgg(pts, 0.25, 2.0)));
    // The exchanged H edges 0-8 and 1-9 are both on the final cycle.
    auto on_cycle = [&](int a, int bb) {
        const auto& o = out.certificate->order;
        for (size_t i = 0; i < o.size(); ++i)
            if ((o[i] == a && o[(i + 1) % o.size()] == bb) || (o[i] == bb && o[(i + 1) % o.size()] == a))
                return out.certificate->prov[i] == EdgeProv::H;
        return false;
    };
    CHECK(on_cycle(0, 8));
    CHECK(on_cycle(1, 9));
}

TEST_CASE("C1 absorber: lone vertex spliced via two H edges") {
    // Dense cell 0 plus a single far vertex 8; H is the star at 8.
    auto pts = line_points({{0, 8}});
    pts.push_back({0.55});  // cell 4
    const Tessellation t(1, 0.25, 2.0, 9);
    Graph H(9);
    for (int i = 0; i < 8; ++i) H.add_edge(8, i);
    H.finalize();

    HamiltonBuilder<Graph> b(pts, t, H);
    REQUIRE(b.connect_components());
    REQUIRE(b.build_absorbers());
    REQUIRE(b.absorbers().size() == 1);
    const auto& ab = b.absorbers()[0];
    CHECK(ab.cell == 4);
    CHECK(ab.cprime == 0);
    CHECK(ab.path == std::vector<int>{0, 8, 1});
    CHECK(ab.path_prov == std::vector<EdgeProv>{EdgeProv::H, EdgeProv::H});

    const auto out = build_hamilton(pts, t, H);
    REQUIRE(out.ok());
    CHECK(out.certificate->order.size() == 9);
    CHECK(out.stats.absorbers == 1);
    CHECK(check_against_graphs(*out.certificate, H, build_rgg(pts, 0.25, 2.0)));
}

TEST_CASE("C2 absorber: in-cell clique path between two H anchors") {
    auto pts = line_points({{0, 8}});
    for (double x : {0.52, 0.54, 0.56}) pts.push_back({x});  // cell 4, vertices 8..10
    const Tessellation t(1, 0.25, 2.0, 11);
    const Graph H = complete_graph(11);

    HamiltonBuilder<Graph> b(pts, t, H);
    REQUIRE(b.connect_components());
    REQUIRE(b.build_absorbers());
    REQUIRE(b.absorbers().size() == 1);
    const auto& ab = b.absorbers()[0];
    CHECK(ab.cell == 4);
    CHECK(ab.path == std::vector<int>{0, 8, 10, 9, 1});
    CHECK(ab.path_prov == std::vector<EdgeProv>{EdgeProv::H, EdgeProv::G, EdgeProv::G, EdgeProv::H});

    const auto out = build_hamilton(pts, t, H);
    REQUIRE(out.ok());
    // Splicing a |P| = 5 path in place of one anchor edge: 8 + 5 - 2 vertices.
    CHECK(out.certificate->order.size() == 11);
    CHECK(check_against_graphs(*out.certificate, H, build_rgg(pts, 0.25, 2.0)));
}

TEST_CASE("path-shaped component traverses without H") {
    const auto pts = line_points({{0, 8}, {1, 8}, {2, 8}});
    const Tessellation t(1, 0.25, 2.0, 24);
    const auto out = build_hamilton(pts, t, Graph(24));
    REQUIRE(out.ok());
    CHECK(out.certificate->order.size() == 24);
    for (auto pv : out.certificate->prov) CHECK(pv == EdgeProv::G);
    CHECK(out.stats.gamma_components == 1);
    CHECK(verify(*out.certificate, pts, 0.25, 2.0, Graph(24)));
}

TEST_CASE("failure stages are reported, never bogus certificates") {
    // No dense cell at all.
    const std::vector<Point> far{{0.05, 0.05}, {0.95, 0.95}, {0.5, 0.5}};
    const auto out1 = build_hamilton(far, Tessellation(2, 0.5, 2.0, 3), Graph(3));
    REQUIRE_FALSE(out1.ok());
    CHECK(out1.failure->stage == FailStage::NoDenseCells);

    // A lone vertex with no H neighbors cannot be absorbed.
    auto pts = line_points({{0, 8}});
    pts.push_back({0.55});
    Graph H(9);
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) H.add_edge(u, v);
    H.finalize();
    const auto out2 = build_hamilton(pts, Tessellation(1, 0.25, 2.0, 9), H);
    REQUIRE_FALSE(out2.ok());
    CHECK(out2.failure->stage == FailStage::AbsorberLinkExhausted);
    CHECK(out2.failure->witness_cells == std::vector<int64_t>{4});
    CHECK(out2.failure->witness_vertices == std::vector<int>{8});

    // Two dense components with no H edges between them cannot be linked.
    const auto pts3 = line_points({{0, 8}, {7, 8}});
    const auto out3 = build_hamilton(pts3, Tessellation(1, 0.25, 2.0, 16), Graph(16));
    REQUIRE_FALSE(out3.ok());
    CHECK(out3.failure->stage == FailStage::ComponentLinkExhausted);
    CHECK(fail_stage_name(out3.failure->stage) == std::string("component-link-exhausted"));
}

TEST_CASE("verify rejects tampered certificates") {
    const auto pts = line_points({{0, 8}});
    const Tessellation t(1, 0.25, 2.0, 8);
    const Graph H(8);
    const auto out = build_hamilton(pts, t, H);
    REQUIRE(out.ok());
    const auto& good = *out.certificate;
    REQUIRE(verify(good, pts, 0.25, 2.0, H));

    auto bad = good;
    std::swap(bad.order[0], bad.order[0 + 3]);
    // Still a permutation; some consecutive pair is now in-cell but the
    // certificate survives only because all cell pairs are within r -- so
    // instead break the permutation and the provenance separately.
    auto dup = good;
    dup.order[1] = dup.order[2];
    CHECK_FALSE(verify(dup, pts, 0.25, 2.0, H));

    auto wrong_tag = good;
    wrong_tag.prov[0] = EdgeProv::H;  // H is edgeless here
    CHECK_FALSE(verify(wrong_tag, pts, 0.25, 2.0, H));

    auto short_cert = good;
    short_cert.order.pop_back();
    short_cert.prov.pop_back();
    CHECK_FALSE(verify(short_cert, pts, 0.25, 2.0, H));

    CHECK_FALSE(verify(CycleCertificate{{0, 1}, {EdgeProv::G, EdgeProv::G}},
                       {{0.1}, {0.11}}, 0.25, 2.0, Graph(2)));  // n < 3
}

TEST_CASE("builder is deterministic") {
    const int n = 400;
    const auto pts = sample_positions(n, 2, 909);
    const Tessellation t(2, 0.75, 2.0, n);  // 16 cells, K = 25: mostly dense
    const Graph H = gen_min_degree_H(n, 0.3, HFamily::RandomSupergraph, 4);
    const auto a = build_hamilton(pts, t, H);
    const auto b = build_hamilton(pts, t, H);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a.certificate->order == b.certificate->order);
    CHECK(a.certificate->prov == b.certificate->prov);
}

TEST_CASE("fuzz: success implies an independently checked cycle") {
    SplitMix64 rng(31337);
    int successes = 0;
    for (int it = 0; it < 40; ++it) {
        const int n = 30 + static_cast<int>(rng.next_below(150));
        const int d = 1 + static_cast<int>(rng.next_below(2));
        const double r = 0.15 + 0.5 * rng.next_double();
        const double alpha = 0.15 + 0.25 * rng.next_double();
        const auto fam = static_cast<HFamily>(rng.next_below(3));
        const auto pts = sample_positions(n, d, rng.next_u64());
        const Graph H = gen_min_degree_H(n, alpha, fam, rng.next_u64());
        const Tessellation t(d, r, 2.0, n);
        const auto out = build_hamilton(pts, t, H);
        if (out.ok()) {
            ++successes;
            CHECK(check_against_graphs(*out.certificate, H, build_rgg(pts, r, 2.0)));
        } else {
            CHECK(out.failure.has_value());
            CHECK_FALSE(out.certificate.has_value());
        }
    }
    CHECK(successes > 0);  // the regime is easy enough that some must succeed
}

TEST_CASE("implicit views and explicit H give identical certificates") {
    const int n = 300;
    const double alpha = 0.22;
    const auto pts = sample_positions(n, 2, 55);
    const Tessellation t(2, 1.0, 2.0, n);  // 9 cells, K ~ 33
    const auto via_view = build_hamilton(pts, t, BlownUpCycleView(n, alpha));
    const auto via_graph = build_hamilton(pts, t, gen_min_degree_H(n, alpha, HFamily::BlownUpCycle, 0));
    REQUIRE(via_view.ok() == via_graph.ok());
    if (via_view.ok()) {
        CHECK(via_view.certificate->order == via_graph.certificate->order);
        CHECK(via_view.certificate->prov == via_graph.certificate->prov);
    }
}
