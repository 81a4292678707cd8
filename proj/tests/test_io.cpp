#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "geopert/builder.hpp"
#include "geopert/families.hpp"
#include "geopert/io.hpp"
#include "geopert/rgg.hpp"

using namespace geopert;

TEST_CASE("positions round-trip exactly") {
    const auto pts = sample_positions(200, 3, 5);
    std::stringstream ss;
    write_positions(ss, pts);
    CHECK(read_positions(ss) == pts);  // 17 significant digits: bit-exact

    std::stringstream empty("0 2\n");
    CHECK_THROWS_AS(read_positions(empty), std::runtime_error);
    std::stringstream trunc("2 2\n0.5 0.5\n");
    CHECK_THROWS_AS(read_positions(trunc), std::runtime_error);
    CHECK_THROWS_AS(write_positions(ss, {}), std::invalid_argument);
}

TEST_CASE("graph file round-trip and format") {
    const Graph g = gen_min_degree_H(50, 0.2, HFamily::RandomSupergraph, 8);
    std::stringstream ss;
    write_graph(ss, g);
    int n, m;
    ss >> n >> m;
    CHECK(n == 50);
    CHECK(m == g.edge_count());
    ss.seekg(0);
    const Graph back = read_graph(ss);
    CHECK(back.n() == g.n());
    CHECK(back.edges() == g.edges());

    // Edgeless graphs survive too.
    std::stringstream ss2;
    write_graph(ss2, Graph(3));
    CHECK(read_graph(ss2).edge_count() == 0);

    std::stringstream bad("5 2\n0 1\n");
    CHECK_THROWS_AS(read_graph(bad), std::runtime_error);
    std::stringstream loop("3 1\n2 2\n");
    CHECK_THROWS_AS(read_graph(loop), std::invalid_argument);
}

TEST_CASE("certificate round-trip and validation") {
    const auto pts = sample_positions(40, 2, 6);
    const Tessellation t(2, 10.0, 2.0, 40);
    const auto out = build_hamilton(pts, t, Graph(40));
    REQUIRE(out.ok());

    std::stringstream ss;
    write_certificate(ss, *out.certificate);
    const auto back = read_certificate(ss);
    CHECK(back.order == out.certificate->order);
    CHECK(back.prov == out.certificate->prov);

    // Edge lines must match the declared cycle order.
    std::stringstream bad("3\n0 1 2\n0 1 G\n1 2 G\n0 2 G\n");
    CHECK_THROWS_AS(read_certificate(bad), std::runtime_error);
    std::stringstream badtag("3\n0 1 2\n0 1 X\n1 2 G\n2 0 G\n");
    CHECK_THROWS_AS(read_certificate(badtag), std::runtime_error);
    std::stringstream good("3\n0 1 2\n0 1 G\n1 2 H\n2 0 G\n");
    const auto c = read_certificate(good);
    CHECK(c.order == std::vector<int>{0, 1, 2});
    CHECK(c.prov == std::vector<EdgeProv>{EdgeProv::G, EdgeProv::H, EdgeProv::G});
}
