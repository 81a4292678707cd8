// Plain-text file formats:
//   positions:   "n d"  then n lines of d space-separated coordinates
//   graph:       "n m"  then m lines "u v" with u < v, lexicographically sorted
//   certificate: "n", the cycle order on one line, then n lines "u v P"
//                with P in {H, G} giving provenance per cyclic edge
// Doubles are written with 17 significant digits so read(write(x)) == x.
#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "geopert/builder.hpp"
#include "geopert/geometry.hpp"
#include "geopert/graph.hpp"

namespace geopert {

inline void write_positions(std::ostream& os, const std::vector<Point>& pts) {
    if (pts.empty()) throw std::invalid_argument("write_positions: empty");
    char buf[40];
    os << pts.size() << ' ' << pts[0].size() << '\n';
    for (const auto& pt : pts) {
        for (size_t i = 0; i < pt.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", pt[i]);
            os << (i ? " " : "") << buf;
        }
        os << '\n';
    }
}

inline std::vector<Point> read_positions(std::istream& is) {
    int64_t n = 0, d = 0;
    if (!(is >> n >> d) || n < 1 || d < 1) throw std::runtime_error("positions file: bad header");
    std::vector<Point> pts(n, Point(d));
    for (int64_t v = 0; v < n; ++v)
        for (int64_t i = 0; i < d; ++i)
            if (!(is >> pts[v][i])) throw std::runtime_error("positions file: truncated");
    return pts;
}

inline void write_graph(std::ostream& os, const Graph& g) {
    const auto es = g.edges();
    os << g.n() << ' ' << es.size() << '\n';
    for (auto [u, v] : es) os << u << ' ' << v << '\n';
}

inline Graph read_graph(std::istream& is) {
    int64_t n = 0, m = 0;
    if (!(is >> n >> m) || n < 0 || m < 0) throw std::runtime_error("graph file: bad header");
    Graph g(static_cast<int>(n));
    for (int64_t i = 0; i < m; ++i) {
        int u, v;
        if (!(is >> u >> v)) throw std::runtime_error("graph file: truncated");
        g.add_edge(u, v);
    }
    g.finalize();
    return g;
}

inline void write_certificate(std::ostream& os, const CycleCertificate& cert) {
    const auto n = cert.order.size();
    os << n << '\n';
    for (size_t i = 0; i < n; ++i) os << (i ? " " : "") << cert.order[i];
    os << '\n';
    for (size_t i = 0; i < n; ++i)
        os << cert.order[i] << ' ' << cert.order[(i + 1) % n] << ' '
           << (cert.prov[i] == EdgeProv::H ? 'H' : 'G') << '\n';
}

inline CycleCertificate read_certificate(std::istream& is) {
    int64_t n = 0;
    if (!(is >> n) || n < 1) throw std::runtime_error("certificate file: bad header");
    CycleCertificate cert;
    cert.order.resize(n);
    cert.prov.resize(n);
    for (auto& v : cert.order)
        if (!(is >> v)) throw std::runtime_error("certificate file: truncated order");
    for (int64_t i = 0; i < n; ++i) {
        int u, v;
        std::string tag;
        if (!(is >> u >> v >> tag) || (tag != "H" && tag != "G"))
            throw std::runtime_error("certificate file: bad edge line");
        if (u != cert.order[i] || v != cert.order[(i + 1) % n])
            throw std::runtime_error("certificate file: edge line does not match cycle order");
        cert.prov[i] = (tag == "H") ? EdgeProv::H : EdgeProv::G;
    }
    return cert;
}

}  // namespace geopert
