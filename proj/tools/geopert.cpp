// Command-line driver. Thin and single-threaded: every subcommand parses
// flags, calls one library entry point, and serializes the result.
//
// Exit codes: 0 success, 1 verification/build failure, 2 usage or I/O error.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "geopert/builder.hpp"
#include "geopert/classify.hpp"
#include "geopert/experiments.hpp"
#include "geopert/families.hpp"
#include "geopert/geometry.hpp"
#include "geopert/graph.hpp"
#include "geopert/io.hpp"
#include "geopert/oracle.hpp"
#include "geopert/rgg.hpp"
#include "geopert/rng.hpp"

using nlohmann::json;

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

// Writes to the path when given, stdout otherwise.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        auto f = open_out(out_path);
        f << text;
    }
}

double resolve_radius(std::optional<double> r, std::optional<double> C, int n, int d) {
    if (r.has_value() == C.has_value())
        throw CLI::ValidationError("radius", "give exactly one of --r and --C");
    if (r) return *r;
    return std::pow(*C / static_cast<double>(n), 1.0 / d);
}

json failure_json(const geopert::BuildOutcome& out) {
    const auto& f = *out.failure;
    return json{{"stage", geopert::fail_stage_name(f.stage)},
                {"detail", f.detail},
                {"witness_cells", f.witness_cells},
                {"witness_vertices", f.witness_vertices},
                {"sparse_cells", out.stats.sparse_cells},
                {"gamma_components", out.stats.gamma_components}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamilton cycles in randomly perturbed random geometric graphs"};
    app.require_subcommand(1);

    int n = 1000, d = 2, trials = 20;
    double p = 2.0, alpha = 0.3;
    std::optional<double> C_opt, r_opt;
    std::vector<double> C_grid;
    double c_small = 0.0;
    uint64_t seed = 0;
    std::string family = "blown-up-cycle";
    std::string in_path, out_path, points_path, h_path, cells_out, format = "csv";
    bool run_builder = false, timings = false;

    auto add_common = [&](CLI::App* cmd, bool with_d = true) {
        cmd->add_option("--n", n, "number of vertices")->capture_default_str();
        if (with_d) cmd->add_option("--d", d, "dimension")->capture_default_str();
        cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    };
    auto add_radius = [&](CLI::App* cmd) {
        cmd->add_option("--p", p, "l_p norm exponent (inf allowed)")->capture_default_str();
        cmd->add_option("--C", C_opt, "radius constant, r = (C/n)^(1/d)");
        cmd->add_option("--r", r_opt, "radius (overrides --C)");
    };

    auto* genh = app.add_subcommand("gen-h", "generate a dense graph H and write it as a graph file");
    add_common(genh, false);
    genh->add_option("--alpha", alpha, "minimum-degree fraction")->capture_default_str();
    genh->add_option("--family", family, "random-supergraph | blown-up-cycle | bipartite")->capture_default_str();
    genh->add_option("--out", out_path, "output path (default stdout)");

    auto* genp = app.add_subcommand("gen-points", "sample uniform positions in [0,1]^d");
    add_common(genp);
    genp->add_option("--out", out_path, "output path (default stdout)");

    auto* genr = app.add_subcommand("gen-rgg", "build the random geometric graph of a positions file");
    genr->add_option("--in", in_path, "positions file")->required();
    add_radius(genr);
    genr->add_option("--out", out_path, "output path (default stdout)");

    auto* build = app.add_subcommand("build", "construct a Hamilton cycle certificate (or a JSON failure report)");
    add_common(build);
    build->add_option("--alpha", alpha, "minimum-degree fraction")->capture_default_str();
    build->add_option("--family", family, "H family when generating")->capture_default_str();
    build->add_option("--points", points_path, "positions file (generated from --seed when omitted)");
    build->add_option("--h-graph", h_path, "H graph file (generated from --family when omitted)");
    add_radius(build);
    build->add_option("--out", out_path, "certificate / failure report path (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "check a certificate against positions and H");
    verify_cmd->add_option("--in", in_path, "certificate file")->required();
    verify_cmd->add_option("--points", points_path, "positions file")->required();
    verify_cmd->add_option("--h-graph", h_path, "H graph file")->required();
    add_radius(verify_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle", "exact Hamiltonicity of a graph file (n <= 20)");
    oracle_cmd->add_option("--in", in_path, "graph file")->required();

    auto* census = app.add_subcommand("census", "cell census and claims report against the tail bounds");
    add_common(census);
    census->add_option("--alpha", alpha, "minimum-degree fraction")->capture_default_str();
    census->add_option("--family", family, "H family")->capture_default_str();
    census->add_option("--C", C_opt, "radius constant, r = (C/n)^(1/d)")->required();
    census->add_option("--trials", trials, "number of trials")->capture_default_str();
    census->add_option("--out", out_path, "claims report JSON path (default stdout)");
    census->add_option("--cells-out", cells_out, "per-cell CSV for the first trial's instance");

    auto* sweep = app.add_subcommand("sweep", "success-rate sweep over the radius constant C");
    add_common(sweep);
    sweep->add_option("--alpha", alpha, "minimum-degree fraction")->capture_default_str();
    sweep->add_option("--family", family, "H family")->capture_default_str();
    sweep->add_option("--p", p, "l_p norm exponent")->capture_default_str();
    sweep->add_option("--C", C_grid, "C grid (repeatable)")->required();
    sweep->add_option("--trials", trials, "trials per grid point")->capture_default_str();
    sweep->add_option("--format", format, "csv | json")->capture_default_str();
    sweep->add_option("--out", out_path, "output path (default stdout)");
    sweep->add_flag("--timings", timings, "record wall times (breaks byte-reproducibility)");

    auto* lemma = app.add_subcommand("lemma41", "isolated-vertex counts below the counterexample radius");
    add_common(lemma);
    lemma->add_option("--alpha", alpha, "minimum-degree fraction")->capture_default_str();
    lemma->add_option("--trials", trials, "number of trials")->capture_default_str();
    lemma->add_option("--out", out_path, "report JSON path (default stdout)");

    auto* blocker = app.add_subcommand("blocker", "bipartite non-Hamiltonicity witness at a small radius");
    add_common(blocker);
    blocker->add_option("--alpha", alpha, "minimum-degree fraction")->capture_default_str();
    blocker->add_option("--c-small", c_small, "radius constant for G (default: Lemma formula on |B|)");
    blocker->add_option("--trials", trials, "number of trials")->capture_default_str();
    blocker->add_flag("--run-builder", run_builder, "also run the builder and record its failure");
    blocker->add_option("--out", out_path, "report JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*genh) {
            std::ostringstream os;
            geopert::write_graph(os, geopert::gen_min_degree_H(n, alpha, geopert::family_from_name(family), seed));
            emit(out_path, os.str());
        } else if (*genp) {
            std::ostringstream os;
            geopert::write_positions(os, geopert::sample_positions(n, d, seed));
            emit(out_path, os.str());
        } else if (*genr) {
            auto f = open_in(in_path);
            const auto pts = geopert::read_positions(f);
            const double r = resolve_radius(r_opt, C_opt, static_cast<int>(pts.size()),
                                            static_cast<int>(pts[0].size()));
            std::ostringstream os;
            geopert::write_graph(os, geopert::build_rgg(pts, r, p));
            emit(out_path, os.str());
        } else if (*build) {
            std::vector<geopert::Point> pts;
            if (points_path.empty()) {
                pts = geopert::sample_positions(n, d, seed);
            } else {
                auto f = open_in(points_path);
                pts = geopert::read_positions(f);
            }
            const int bn = static_cast<int>(pts.size());
            const int bd = static_cast<int>(pts[0].size());
            const double r = resolve_radius(r_opt, C_opt, bn, bd);
            const geopert::Tessellation tess(bd, r, p, bn);
            geopert::BuildOutcome out;
            if (h_path.empty()) {
                const auto fam = geopert::family_from_name(family);
                // Structured families run against their constant-space views.
                if (fam == geopert::HFamily::BlownUpCycle)
                    out = geopert::build_hamilton(pts, tess, geopert::BlownUpCycleView(bn, alpha));
                else if (fam == geopert::HFamily::Bipartite)
                    out = geopert::build_hamilton(pts, tess, geopert::BipartiteView(bn, alpha));
                else
                    out = geopert::build_hamilton(
                        pts, tess, geopert::gen_min_degree_H(bn, alpha, fam, geopert::derive_seed(seed, 11, 0)));
            } else {
                auto f = open_in(h_path);
                out = geopert::build_hamilton(pts, tess, geopert::read_graph(f));
            }
            if (out.ok()) {
                std::ostringstream os;
                geopert::write_certificate(os, *out.certificate);
                emit(out_path, os.str());
            } else {
                emit(out_path, failure_json(out).dump(2) + "\n");
                return 1;
            }
        } else if (*verify_cmd) {
            auto fc = open_in(in_path);
            auto fp = open_in(points_path);
            auto fh = open_in(h_path);
            const auto cert = geopert::read_certificate(fc);
            const auto pts = geopert::read_positions(fp);
            const auto H = geopert::read_graph(fh);
            const double r = resolve_radius(r_opt, C_opt, static_cast<int>(pts.size()),
                                            static_cast<int>(pts[0].size()));
            if (!geopert::verify(cert, pts, r, p, H)) {
                std::cout << "INVALID\n";
                return 1;
            }
            std::cout << "OK\n";
        } else if (*oracle_cmd) {
            auto f = open_in(in_path);
            const auto res = geopert::exact_hamilton(geopert::read_graph(f));
            json j{{"hamiltonian", res.hamiltonian}};
            if (res.cycle) j["cycle"] = *res.cycle;
            std::cout << j.dump(2) << "\n";
        } else if (*census) {
            const auto fam = geopert::family_from_name(family);
            const auto rep = geopert::claims_census(n, d, alpha, *C_opt, trials, seed, fam);
            json jt = json::array();
            for (const auto& t : rep.trials)
                jt.push_back({{"seed", t.seed},
                              {"sparse_count", t.sparse_count},
                              {"gamma_components", t.gamma_components},
                              {"pairs_sampled", t.pairs_sampled},
                              {"pairs_within_bound", t.pairs_within_bound},
                              {"max_unlinked", t.max_unlinked}});
            json j{{"n", rep.n},
                   {"d", rep.d},
                   {"alpha", rep.alpha},
                   {"C", rep.C},
                   {"K", rep.K},
                   {"bounds",
                    {{"sparse", rep.bounds.sparse_bound},
                     {"unlinked", rep.bounds.unlinked_bound},
                     {"components", rep.bounds.component_bound},
                     {"forbidden_budget", rep.bounds.forbidden_budget}}},
                   {"frac_sparse_ok", rep.frac_sparse_ok},
                   {"frac_components_ok", rep.frac_components_ok},
                   {"frac_pairs_ok", rep.frac_pairs_ok},
                   {"trials", jt}};
            emit(out_path, j.dump(2) + "\n");
            if (!cells_out.empty()) {
                // Per-cell census of the first trial's instance.
                const double r = std::pow(*C_opt / static_cast<double>(n), 1.0 / d);
                const geopert::Tessellation tess(d, r, 2.0, n);
                const auto pts = geopert::sample_positions(n, d, geopert::derive_seed(seed, 0, 0));
                const auto cls = geopert::classify_cells(pts, tess);
                auto fo = open_out(cells_out);
                fo << "cell,occupants,class\n";
                for (int64_t c = 0; c < tess.cell_count(); ++c) {
                    const auto k = cls.occupants[c].size();
                    const char* cl = cls.is_dense[c] ? "dense" : (k == 0 ? "c0" : (k == 1 ? "c1" : "c2"));
                    fo << c << ',' << k << ',' << cl << '\n';
                }
            }
        } else if (*sweep) {
            geopert::SweepConfig cfg;
            cfg.n = n;
            cfg.d = d;
            cfg.p = p;
            cfg.alpha = alpha;
            cfg.C_grid = C_grid;
            cfg.trials = trials;
            cfg.master_seed = seed;
            cfg.family = geopert::family_from_name(family);
            cfg.record_timings = timings;
            const auto res = geopert::sweep_success(cfg);
            if (format == "csv") {
                emit(out_path, geopert::sweep_records_csv(res));
            } else if (format == "json") {
                json rows = json::array();
                for (const auto& row : res.rows)
                    rows.push_back({{"C", row.C},
                                    {"success_rate", row.success_rate},
                                    {"mean_sparse", row.mean_sparse},
                                    {"mean_components", row.mean_components}});
                emit(out_path, json{{"rows", rows}}.dump(2) + "\n");
            } else {
                throw CLI::ValidationError("--format", "expected csv or json");
            }
        } else if (*lemma) {
            const auto rep = geopert::check_lemma41(n, alpha, d, trials, seed);
            json j{{"n", rep.n},         {"d", rep.d},
                   {"alpha", rep.alpha}, {"radius", rep.radius},
                   {"threshold", rep.threshold}, {"isolated_counts", rep.isolated_counts},
                   {"pass_fraction", rep.pass_fraction}};
            emit(out_path, j.dump(2) + "\n");
        } else if (*blocker) {
            const int b = n - static_cast<int>(std::floor(alpha * n));
            const double cs =
                c_small > 0.0
                    ? c_small
                    : static_cast<double>(n) *
                          std::pow(geopert::lemma_counterexample_radius(b, alpha, d), d);
            const auto rep = geopert::check_bipartite_blocker(n, alpha, cs, d, trials, seed, run_builder);
            json jt = json::array();
            for (const auto& t : rep.trials)
                jt.push_back({{"seed", t.seed},
                              {"isolated_in_B", t.isolated_in_B},
                              {"certified", t.certified},
                              {"builder_failed", t.builder_failed}});
            json j{{"n", rep.n},
                   {"d", rep.d},
                   {"alpha", rep.alpha},
                   {"c_small", rep.c_small},
                   {"radius", rep.radius},
                   {"part_b", rep.part_b},
                   {"certified_fraction", rep.certified_fraction},
                   {"trials", jt}};
            emit(out_path, j.dump(2) + "\n");
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
