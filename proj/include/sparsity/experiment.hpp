#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsity/fields.hpp"
#include "sparsity/hypergraph.hpp"
#include "sparsity/matroid.hpp"

namespace sparsity {

// Cells are (n, k, ell) combinations at a fixed edge size d; each cell runs
// `trials` random edge-subsets of the complete ground multiset and
// cross-validates the linear rank against the counting oracle.
struct ExperimentConfig {
    int n_min = 3;
    int n_max = 5;
    int d = 2;
    std::vector<std::pair<int, int>> kl;  // (k, ell) per cell row
    int trials = 100;
    std::uint64_t base_seed = 1;
    std::uint64_t modulus = kDefaultModulus;
    int seed_trials = 3;  // rank attempts per instance before the resample allowance
    int oracle_cap = kDefaultOracleCap;

    void validate() const {
        if (n_min < 2 || n_max < n_min) throw std::invalid_argument("need 2 <= n_min <= n_max");
        if (d < 2) throw std::invalid_argument("edge size must be at least 2");
        if (n_min < d) throw std::invalid_argument("n_min below the edge size d");
        if (kl.empty()) throw std::invalid_argument("no (k,ell) cells given");
        if (trials < 0) throw std::invalid_argument("negative trial count");
        if (seed_trials < 1) throw std::invalid_argument("seed_trials must be positive");
        if (n_max > std::min(oracle_cap, kMaxOracleCap))
            throw std::invalid_argument("cell with n=" + std::to_string(n_max) +
                                        " exceeds the oracle cap of " +
                                        std::to_string(std::min(oracle_cap, kMaxOracleCap)));
        FieldSpec{modulus}.validate();
        for (auto [k, ell] : kl) SparsityParams::uniform_params(k, ell, d);
    }
};

struct ExperimentSummary {
    long trials = 0;
    long agreements = 0;
    BigRational max_failure_bound = 0;
};

// Complete ground multiset of the (k, ell) matroid: size-i edges with
// multiplicity i*k - ell, sizes d..max_size (uniform mode uses d alone).
inline Hypergraph complete_ground(int n, const SparsityParams& p, int max_size = 0) {
    if (p.uniform) return complete_uniform(n, p.d, p.multiplicity(p.d));
    if (max_size == 0) max_size = n;
    std::vector<Hyperedge> edges;
    for (int size = p.d; size <= max_size; ++size) {
        detail::for_each_subset(n, size, [&](const std::vector<VertexId>& pick) {
            for (int c = 0; c < p.multiplicity(size); ++c) edges.emplace_back(pick);
        });
    }
    return Hypergraph(n, std::move(edges));
}

namespace detail {

inline Hypergraph random_edge_subset(const Hypergraph& ground, Rng& rng) {
    std::vector<int> keep;
    for (int e = 0; e < ground.edge_count(); ++e)
        if (rng.below(2) == 1) keep.push_back(e);
    return edge_subset(ground, keep);
}

inline std::string rational_str(const BigRational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace detail

// One JSON record per trial, then a summary line. Fully reproducible: trial t
// of the run draws everything from derive_seed(base_seed, t).
inline ExperimentSummary run_experiment(const ExperimentConfig& cfg, std::ostream& out) {
    cfg.validate();
    ExperimentSummary summary;
    std::uint64_t trial_index = 0;
    const FieldSpec spec{cfg.modulus};
    for (auto [k, ell] : cfg.kl) {
        for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
            const SparsityParams p = SparsityParams::uniform_params(k, ell, cfg.d);
            const Hypergraph ground = complete_ground(n, p);
            for (int t = 0; t < cfg.trials; ++t, ++trial_index) {
                const std::uint64_t instance_seed = derive_seed(cfg.base_seed, trial_index);
                Rng subset_rng(instance_seed);
                const Hypergraph sample = detail::random_edge_subset(ground, subset_rng);
                const MatroidReport report = with_field(spec, [&](auto field) {
                    return cross_validate(sample, p, cfg.seed_trials, field,
                                          derive_seed(instance_seed, 1), cfg.oracle_cap);
                });
                nlohmann::ordered_json rec;
                rec["n"] = n;
                rec["d"] = cfg.d;
                rec["k"] = k;
                rec["l"] = ell;
                rec["trial"] = t;
                rec["m"] = sample.edge_count();
                rec["rank_linear"] = report.rank_linear;
                rec["rank_combinatorial"] = *report.rank_combinatorial;
                rec["agree"] = report.agree;
                rec["seeds"] = report.seeds_used;
                rec["failure_bound"] = detail::rational_str(report.failure_bound);
                out << rec.dump() << '\n';
                ++summary.trials;
                if (report.agree) ++summary.agreements;
                if (report.failure_bound > summary.max_failure_bound)
                    summary.max_failure_bound = report.failure_bound;
            }
        }
    }
    nlohmann::ordered_json tail;
    nlohmann::ordered_json body;
    body["trials"] = summary.trials;
    body["agreements"] = summary.agreements;
    body["max_failure_bound"] = detail::rational_str(summary.max_failure_bound);
    tail["summary"] = std::move(body);
    out << tail.dump() << '\n';
    return summary;
}

}  // namespace sparsity
