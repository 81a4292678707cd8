// Monte Carlo harness: success-rate sweeps over the radius constant C
// (r = (C/n)^(1/d)), the sparse/unlinked/component census against the
// analytic tail bounds, the isolated-vertex counterexample experiments, and
// builder-vs-oracle cross validation at tiny n.
//
// Seed derivation is fixed and documented: trial seed =
// derive_seed(master_seed, grid_index, trial_index), so any single trial can
// be re-run in isolation. Aggregates are pure folds over the trial records.
#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "geopert/builder.hpp"
#include "geopert/classify.hpp"
#include "geopert/families.hpp"
#include "geopert/geometry.hpp"
#include "geopert/graph.hpp"
#include "geopert/oracle.hpp"
#include "geopert/rgg.hpp"
#include "geopert/rng.hpp"

namespace geopert {

struct SweepConfig {
    int n = 0;
    int d = 2;
    double p = 2.0;
    double alpha = 0.3;
    std::vector<double> C_grid;  // nonempty, ascending
    int trials = 1;
    uint64_t master_seed = 0;
    HFamily family = HFamily::BlownUpCycle;
    // Wall times are machine noise; they are recorded only on request so the
    // default CSV is byte-reproducible.
    bool record_timings = false;
};

struct TrialRecord {
    uint64_t seed = 0;
    double C = 0.0;
    bool success = false;
    std::string failure_stage;  // empty on success
    int64_t sparse_count = 0;
    int64_t gamma_components = 0;
    double wall_time = 0.0;  // seconds; 0 unless timings were requested
};

struct SweepRow {
    double C = 0.0;
    double success_rate = 0.0;
    double mean_sparse = 0.0;
    double mean_components = 0.0;
};

struct SweepResult {
    SweepConfig config;
    std::vector<TrialRecord> records;
    std::vector<SweepRow> rows;
};

namespace detail {

// One build at radius (C/n)^(1/d) against the family's implicit view where
// one exists; the binomial family is materialized per trial.
inline BuildOutcome run_family_trial(int n, int d, double p, double alpha, double C, HFamily family,
                                     uint64_t seed) {
    const double r = std::pow(C / static_cast<double>(n), 1.0 / d);
    const Tessellation tess(d, r, p, n);
    const auto positions = sample_positions(n, d, seed);
    switch (family) {
        case HFamily::BlownUpCycle:
            return build_hamilton(positions, tess, BlownUpCycleView(n, alpha));
        case HFamily::Bipartite:
            return build_hamilton(positions, tess, BipartiteView(n, alpha));
        case HFamily::RandomSupergraph: {
            const Graph H = gen_min_degree_H(n, alpha, family, derive_seed(seed, 11, 0));
            return build_hamilton(positions, tess, H);
        }
    }
    throw std::logic_error("run_family_trial: bad family");
}

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline SweepResult sweep_success(const SweepConfig& cfg) {
    if (cfg.trials < 1 || cfg.C_grid.empty() || cfg.n < 1)
        throw std::invalid_argument("sweep_success: invalid config");
    SweepResult res;
    res.config = cfg;
    for (size_t ci = 0; ci < cfg.C_grid.size(); ++ci) {
        const double C = cfg.C_grid[ci];
        SweepRow row{C, 0.0, 0.0, 0.0};
        for (int t = 0; t < cfg.trials; ++t) {
            TrialRecord rec;
            rec.seed = derive_seed(cfg.master_seed, ci, t);
            rec.C = C;
            const auto t0 = std::chrono::steady_clock::now();
            const BuildOutcome out =
                detail::run_family_trial(cfg.n, cfg.d, cfg.p, cfg.alpha, C, cfg.family, rec.seed);
            if (cfg.record_timings)
                rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            rec.success = out.ok();
            if (!rec.success) rec.failure_stage = fail_stage_name(out.failure->stage);
            rec.sparse_count = out.stats.sparse_cells;
            rec.gamma_components = out.stats.gamma_components;
            row.success_rate += rec.success ? 1.0 : 0.0;
            row.mean_sparse += static_cast<double>(rec.sparse_count);
            row.mean_components += static_cast<double>(rec.gamma_components);
            res.records.push_back(std::move(rec));
        }
        row.success_rate /= cfg.trials;
        row.mean_sparse /= cfg.trials;
        row.mean_components /= cfg.trials;
        res.rows.push_back(row);
    }
    return res;
}

inline std::string sweep_records_csv(const SweepResult& res) {
    std::string out = "seed,C,success,failure_stage,sparse_count,gamma_components,wall_time\n";
    for (const auto& r : res.records) {
        out += std::to_string(r.seed) + ',' + detail::fmt_double(r.C) + ',' + (r.success ? "1" : "0") + ',' +
               r.failure_stage + ',' + std::to_string(r.sparse_count) + ',' + std::to_string(r.gamma_components) +
               ',' + detail::fmt_double(r.wall_time) + '\n';
    }
    return out;
}

// --- isolated-vertex experiments ------------------------------------------

inline int64_t count_isolated(const Graph& g) {
    int64_t c = 0;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) ++c;
    return c;
}

// Unit-ball volume V_d = pi^(d/2) / Gamma(d/2 + 1); V_1 = 2, V_2 = pi.
inline double unit_ball_volume(int d) {
    return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

// Radius (-log(3 alpha / 2) / (2 V_d n))^(1/d): below it the RGG keeps at
// least 4 alpha n / 3 isolated vertices with high probability.
inline double lemma_counterexample_radius(int64_t n, double alpha, int d) {
    if (!(alpha > 0.0) || 3.0 * alpha / 2.0 >= 1.0 || n < 1 || d < 1)
        throw std::invalid_argument("lemma_counterexample_radius: need 3*alpha/2 < 1, n >= 1, d >= 1");
    return std::pow(-std::log(3.0 * alpha / 2.0) / (2.0 * unit_ball_volume(d) * static_cast<double>(n)),
                    1.0 / d);
}

struct Lemma41Report {
    int64_t n = 0;
    int d = 0;
    double alpha = 0.0;
    double radius = 0.0;
    double threshold = 0.0;  // 4 alpha n / 3
    std::vector<int64_t> isolated_counts;
    double pass_fraction = 0.0;  // fraction of trials with count >= threshold
};

inline Lemma41Report check_lemma41(int n, double alpha, int d, int trials, uint64_t master_seed) {
    Lemma41Report rep;
    rep.n = n;
    rep.d = d;
    rep.alpha = alpha;
    rep.radius = lemma_counterexample_radius(n, alpha, d);
    rep.threshold = 4.0 * alpha * n / 3.0;
    int pass = 0;
    for (int t = 0; t < trials; ++t) {
        const auto positions = sample_positions(n, d, derive_seed(master_seed, 0, t));
        const int64_t iso = count_isolated(build_rgg(positions, rep.radius, 2.0));
        rep.isolated_counts.push_back(iso);
        if (static_cast<double>(iso) >= rep.threshold) ++pass;
    }
    rep.pass_fraction = trials > 0 ? static_cast<double>(pass) / trials : 0.0;
    return rep;
}

struct BlockerTrial {
    uint64_t seed = 0;
    int64_t isolated_in_B = 0;
    bool certified = false;   // isolated-in-B count exceeds alpha n
    int builder_failed = -1;  // 1/0 when the consistency build ran, -1 otherwise
};

struct BlockerReport {
    int n = 0, d = 0;
    double alpha = 0.0, c_small = 0.0, radius = 0.0;
    int64_t part_b = 0;
    std::vector<BlockerTrial> trials;
    double certified_fraction = 0.0;
};

// Bipartite H = K_{A,B} with |A| = floor(alpha n): when G[B] keeps more than
// alpha n isolated vertices, no Hamilton cycle exists. Each certified trial
// carries its witness count; with run_builder the builder is also run on the
// full instance and must fail.
inline BlockerReport check_bipartite_blocker(int n, double alpha, double c_small, int d, int trials,
                                             uint64_t master_seed, bool run_builder = false) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("check_bipartite_blocker: alpha out of (0, 1/2)");
    BlockerReport rep;
    rep.n = n;
    rep.d = d;
    rep.alpha = alpha;
    rep.c_small = c_small;
    rep.radius = std::pow(c_small / static_cast<double>(n), 1.0 / d);
    const int a = static_cast<int>(std::floor(alpha * n));
    rep.part_b = n - a;
    int certified = 0;
    for (int t = 0; t < trials; ++t) {
        BlockerTrial tr;
        tr.seed = derive_seed(master_seed, 0, t);
        const auto positions = sample_positions(n, d, tr.seed);
        const std::vector<Point> b_positions(positions.begin() + a, positions.end());
        tr.isolated_in_B = count_isolated(build_rgg(b_positions, rep.radius, 2.0));
        tr.certified = static_cast<double>(tr.isolated_in_B) > alpha * n;
        if (tr.certified) ++certified;
        if (run_builder) {
            const Tessellation tess(d, rep.radius, 2.0, n);
            tr.builder_failed = build_hamilton(positions, tess, BipartiteView(n, alpha)).ok() ? 0 : 1;
        }
        rep.trials.push_back(tr);
    }
    rep.certified_fraction = trials > 0 ? static_cast<double>(certified) / trials : 0.0;
    return rep;
}

// --- census against the tail bounds ---------------------------------------

struct CensusTrial {
    uint64_t seed = 0;
    int64_t sparse_count = 0;
    int64_t gamma_components = 0;
    int64_t pairs_sampled = 0;
    int64_t pairs_within_bound = 0;
    int64_t max_unlinked = 0;
};

struct CensusReport {
    int n = 0, d = 0;
    double alpha = 0.0, C = 0.0, K = 0.0;
    ClaimBounds bounds{};
    std::vector<CensusTrial> trials;
    double frac_sparse_ok = 0.0;      // trials with sparse count <= bound
    double frac_components_ok = 0.0;  // trials with component count <= bound
    double frac_pairs_ok = 0.0;       // trials with >= 95% of sampled pairs within bound
};

template <class HG>
CensusReport claims_census_with(int n, int d, double alpha, double C, int trials, uint64_t master_seed,
                                const HG& H, int pairs_per_trial = 100) {
    CensusReport rep;
    rep.n = n;
    rep.d = d;
    rep.alpha = alpha;
    rep.C = C;
    const double r = std::pow(C / static_cast<double>(n), 1.0 / d);
    const Tessellation tess(d, r, 2.0, n);
    rep.K = tess.K();
    rep.bounds = claim1_bounds(n, rep.K, alpha);
    int sparse_ok = 0, comp_ok = 0, pairs_ok = 0;
    for (int t = 0; t < trials; ++t) {
        CensusTrial tr;
        tr.seed = derive_seed(master_seed, 0, t);
        const auto positions = sample_positions(n, d, tr.seed);
        const auto cls = classify_cells(positions, tess);
        const auto gamma = build_gamma(cls, tess);
        tr.sparse_count = static_cast<int64_t>(cls.sparse_cells.size());
        tr.gamma_components = gamma.num_components;
        SplitMix64 pair_rng(derive_seed(tr.seed, 7, 0));
        tr.pairs_sampled = pairs_per_trial;
        for (int i = 0; i < pairs_per_trial; ++i) {
            const int u = static_cast<int>(pair_rng.next_below(n));
            const int v = static_cast<int>(pair_rng.next_below(n));
            const int64_t unl = count_unlinked(cls, u, v, H);
            tr.max_unlinked = std::max(tr.max_unlinked, unl);
            if (static_cast<double>(unl) <= rep.bounds.unlinked_bound) ++tr.pairs_within_bound;
        }
        if (static_cast<double>(tr.sparse_count) <= rep.bounds.sparse_bound) ++sparse_ok;
        if (static_cast<double>(tr.gamma_components) <= rep.bounds.component_bound) ++comp_ok;
        if (tr.pairs_within_bound >= static_cast<int64_t>(std::ceil(0.95 * pairs_per_trial))) ++pairs_ok;
        rep.trials.push_back(tr);
    }
    if (trials > 0) {
        rep.frac_sparse_ok = static_cast<double>(sparse_ok) / trials;
        rep.frac_components_ok = static_cast<double>(comp_ok) / trials;
        rep.frac_pairs_ok = static_cast<double>(pairs_ok) / trials;
    }
    return rep;
}

inline CensusReport claims_census(int n, int d, double alpha, double C, int trials, uint64_t master_seed,
                                  HFamily family = HFamily::BlownUpCycle, int pairs_per_trial = 100) {
    switch (family) {
        case HFamily::BlownUpCycle:
            return claims_census_with(n, d, alpha, C, trials, master_seed, BlownUpCycleView(n, alpha),
                                      pairs_per_trial);
        case HFamily::Bipartite:
            return claims_census_with(n, d, alpha, C, trials, master_seed, BipartiteView(n, alpha),
                                      pairs_per_trial);
        case HFamily::RandomSupergraph: {
            const Graph H = gen_min_degree_H(n, alpha, family, derive_seed(master_seed, 11, 0));
            return claims_census_with(n, d, alpha, C, trials, master_seed, H, pairs_per_trial);
        }
    }
    throw std::logic_error("claims_census: bad family");
}

// --- builder vs oracle ----------------------------------------------------

struct CrossValidationReport {
    int trials = 0;
    int builder_success = 0;
    int oracle_hamiltonian = 0;
    int builder_success_oracle_false = 0;  // must stay 0
    int verify_failures = 0;               // must stay 0
};

// Random tiny instances: the builder may fail (it is not complete at small
// n), but a returned certificate must verify and the union graph must be
// Hamiltonian per the exact oracle.
inline CrossValidationReport cross_validate(int n, int trials, uint64_t master_seed) {
    if (n > 20) throw std::invalid_argument("cross_validate: n too large for the exact oracle");
    CrossValidationReport rep;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const uint64_t seed = derive_seed(master_seed, 0, t);
        SplitMix64 rng(seed);
        const double alpha = 0.1 + 0.35 * rng.next_double();
        const double r = 0.15 + 1.1 * rng.next_double();
        const double ps[3] = {1.0, 2.0, kInf};
        const double p = ps[rng.next_below(3)];
        const auto family = static_cast<HFamily>(rng.next_below(3));
        const Graph H = gen_min_degree_H(n, alpha, family, derive_seed(seed, 3, 0));
        const auto positions = sample_positions(n, static_cast<int>(1 + rng.next_below(3)),
                                                derive_seed(seed, 5, 0));
        const int d = static_cast<int>(positions[0].size());
        const Tessellation tess(d, r, p, n);
        const Graph G = build_rgg(positions, r, p);
        const auto out = build_hamilton(positions, tess, H);
        const auto oracle = exact_hamilton(union_graph(H, G));
        if (oracle.hamiltonian) ++rep.oracle_hamiltonian;
        if (out.ok()) {
            ++rep.builder_success;
            if (!verify(*out.certificate, positions, r, p, H)) ++rep.verify_failures;
            if (!oracle.hamiltonian) ++rep.builder_success_oracle_false;
        }
    }
    return rep;
}

}  // namespace geopert
