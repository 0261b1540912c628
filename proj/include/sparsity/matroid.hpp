#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsity/fields.hpp"
#include "sparsity/hypergraph.hpp"
#include "sparsity/matrix.hpp"
#include "sparsity/oracle.hpp"
#include "sparsity/realization.hpp"

namespace sparsity {

// Answer to a matroid query, with the provenance needed to reproduce it: the
// seeds tried and the Schwartz-Zippel style bound on reporting a rank below
// the generic one.
struct MatroidReport {
    int rank_linear = 0;
    std::optional<int> rank_combinatorial;
    bool agree = false;
    std::vector<std::uint64_t> seeds_used;
    BigRational failure_bound = 0;
    std::optional<std::vector<int>> basis;
    std::optional<std::vector<int>> circuit;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["rank_linear"] = rank_linear;
        if (rank_combinatorial) {
            j["rank_combinatorial"] = *rank_combinatorial;
            j["agree"] = agree;
        }
        j["seeds"] = seeds_used;
        j["failure_bound"] = numerator(failure_bound).str() + "/" + denominator(failure_bound).str();
        if (basis) j["basis"] = *basis;
        if (circuit) j["circuit"] = *circuit;
        return j;
    }
};

inline std::vector<std::uint64_t> derive_seeds(std::uint64_t base, int count) {
    std::vector<std::uint64_t> seeds;
    seeds.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) seeds.push_back(derive_seed(base, static_cast<std::uint64_t>(i)));
    return seeds;
}

// Probability bound for under-reporting a generic rank after `trials`
// independent samples, each drawn from a set of `space` values per entry.
inline BigRational rank_failure_bound(int rows, const BigInt& space, std::size_t trials) {
    if (rows <= 0 || trials == 0) return BigRational(0);
    BigRational per_trial(BigInt(rows), space);
    if (per_trial > 1) per_trial = 1;
    BigRational out(1);
    for (std::size_t i = 0; i < trials; ++i) out *= per_trial;
    return out;
}

// Matroid rank of the edge set through the linear representation: the best
// rank over the given seeds. A random substitution can only lose rank against
// the generic value, so the result is a certified lower bound that equals the
// matroid rank with high probability.
template <class Field>
int rank_linear(const Hypergraph& g, const SparsityParams& p, const Field& field,
                const std::vector<std::uint64_t>& seeds) {
    p.validate_for(g);
    if (g.edge_count() == 0) return 0;
    const int ceiling = std::min(g.edge_count(), p.k * g.vertex_count() - p.ell);
    int best = 0;
    for (std::uint64_t seed : seeds) {
        best = std::max(best, static_cast<int>(matrix_rank(realize_kl(g, p, field, seed).matrix)));
        if (best >= ceiling) break;
    }
    return best;
}

// A subset of edges is independent iff its rows reach full rank. "independent"
// answers are certificates; "dependent" answers carry the per-seed error
// bound.
template <class Field>
bool is_independent(const Hypergraph& g, const SparsityParams& p, const std::vector<int>& idx,
                    const Field& field, const std::vector<std::uint64_t>& seeds) {
    if (idx.empty()) return true;
    const Hypergraph sub = edge_subset(g, idx);
    return rank_linear(sub, p, field, seeds) == static_cast<int>(idx.size());
}

// Greedy basis in ground-set order, keeping edges that increase the linear
// rank. The result is cross-checked against the counting oracle whenever the
// instance is small enough for it.
template <class Field>
std::vector<int> extract_basis(const Hypergraph& g, const SparsityParams& p, const Field& field,
                               const std::vector<std::uint64_t>& seeds, int cap = kDefaultOracleCap) {
    p.validate_for(g);
    std::vector<int> kept;
    for (int e = 0; e < g.edge_count(); ++e) {
        kept.push_back(e);
        if (!is_independent(g, p, kept, field, seeds)) kept.pop_back();
    }
    if (g.vertex_count() <= std::min(cap, kMaxOracleCap) && !is_sparse(edge_subset(g, kept), p, cap))
        throw std::logic_error("greedy basis is not sparse; representation contract violated");
    return kept;
}

// Inclusion-minimal dependent subset of `idx`, by single-pass deletion in
// ground-set order.
template <class Field>
std::vector<int> find_circuit(const Hypergraph& g, const SparsityParams& p, std::vector<int> idx,
                              const Field& field, const std::vector<std::uint64_t>& seeds) {
    std::sort(idx.begin(), idx.end());
    if (is_independent(g, p, idx, field, seeds))
        throw std::domain_error("edge set is independent; it contains no circuit");
    for (std::size_t i = 0; i < idx.size();) {
        std::vector<int> without = idx;
        without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
        if (!is_independent(g, p, without, field, seeds)) {
            idx = std::move(without);
        } else {
            ++i;
        }
    }
    return idx;
}

namespace detail {

template <class Field>
[[noreturn]] void report_overshoot(const Hypergraph& g, const SparsityParams& p, std::uint64_t seed,
                                   int linear, int combinatorial) {
    std::ostringstream os;
    os << "linear rank " << linear << " exceeds combinatorial rank " << combinatorial
       << "; this contradicts the representation contract. instance=" << to_json(g).dump()
       << " k=" << p.k << " ell=" << p.ell << " seed=" << seed;
    throw std::logic_error(os.str());
}

}  // namespace detail

// Runs the linear rank against the counting oracle. Retries with fresh seeds
// while the linear side trails the oracle; a persistent deficit fails loudly
// with the instance serialized, and a linear rank above the oracle aborts
// immediately since it would falsify the representation.
template <class Field>
MatroidReport cross_validate(const Hypergraph& g, const SparsityParams& p, int trials,
                             const Field& field, std::uint64_t base_seed,
                             int cap = kDefaultOracleCap) {
    const int target = matroid_rank_combinatorial(g, p, cap);
    MatroidReport report;
    report.rank_combinatorial = target;

    const int budget = std::max(trials, 1) + 5;  // base attempts plus resample allowance
    int best = 0;
    for (int i = 0; i < budget; ++i) {
        const std::uint64_t seed = derive_seed(base_seed, static_cast<std::uint64_t>(i));
        report.seeds_used.push_back(seed);
        if (g.edge_count() > 0) {
            const int r = static_cast<int>(matrix_rank(realize_kl(g, p, field, seed).matrix));
            if (r > target) detail::report_overshoot<Field>(g, p, seed, r, target);
            best = std::max(best, r);
        }
        if (best == target) break;
    }
    if (best < target) {
        std::ostringstream os;
        os << "linear rank stuck at " << best << " below combinatorial rank " << target << " after "
           << report.seeds_used.size() << " seeds. instance=" << to_json(g).dump() << " k=" << p.k
           << " ell=" << p.ell << " base_seed=" << base_seed;
        throw std::runtime_error(os.str());
    }
    report.rank_linear = best;
    report.agree = true;
    report.failure_bound = rank_failure_bound(g.edge_count(), field.sample_space(), report.seeds_used.size());
    return report;
}

}  // namespace sparsity
