#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsity/hypergraph.hpp"

namespace sparsity {

// The exhaustive checks below walk all vertex subsets; they are the ground
// truth at desk scale, not a production certifier.
inline constexpr int kDefaultOracleCap = 12;
inline constexpr int kMaxOracleCap = 20;

// Witness against (k,ell)-sparsity: a vertex set inducing more edges than the
// count bound allows.
struct SparsityViolation {
    std::vector<VertexId> vertices;
    int induced_edges = 0;  // m'
    int bound = 0;          // k*n' - ell

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["vertices"] = vertices;
        j["m_induced"] = induced_edges;
        j["bound"] = bound;
        return j;
    }
};

// One tail endpoint per hyperedge, indexed by edge.
struct Orientation {
    std::vector<VertexId> tail;
};

namespace detail {

inline void check_oracle_cap(int n, int cap) {
    const int limit = std::min(cap, kMaxOracleCap);
    if (n > limit)
        throw std::invalid_argument("exhaustive sparsity check capped at " + std::to_string(limit) +
                                    " vertices, got n=" + std::to_string(n));
}

inline std::uint32_t support_mask(const Hyperedge& e) {
    std::uint32_t m = 0;
    for (VertexId v : e.endpoints()) m |= std::uint32_t(1) << v;
    return m;
}

// counts[mask] = number of edges whose endpoints all lie in mask, via a
// subset-sum sweep over the 2^n masks.
inline std::vector<int> induced_edge_counts(const Hypergraph& g) {
    const int n = g.vertex_count();
    std::vector<int> counts(std::size_t(1) << n, 0);
    for (const Hyperedge& e : g.edges()) ++counts[support_mask(e)];
    for (int bit = 0; bit < n; ++bit)
        for (std::uint32_t mask = 0; mask < counts.size(); ++mask)
            if (mask & (std::uint32_t(1) << bit)) counts[mask] += counts[mask ^ (std::uint32_t(1) << bit)];
    return counts;
}

}  // namespace detail

// Exhaustive (k,ell)-sparsity check. Returns nullopt when every vertex subset
// inducing at least one edge satisfies m' <= k*n' - ell; otherwise the
// violating subset of minimum cardinality, ties broken by lexicographically
// smallest vertex set.
inline std::optional<SparsityViolation> find_violation(const Hypergraph& g, const SparsityParams& p,
                                                       int cap = kDefaultOracleCap) {
    p.validate_for(g);
    detail::check_oracle_cap(g.vertex_count(), cap);
    const int n = g.vertex_count();
    const auto counts = detail::induced_edge_counts(g);

    bool violated = false;
    for (std::uint32_t mask = 1; mask < counts.size() && !violated; ++mask)
        violated = counts[mask] > 0 && counts[mask] > p.k * std::popcount(mask) - p.ell;
    if (!violated) return std::nullopt;

    for (int size = 1; size <= n; ++size) {
        std::optional<SparsityViolation> found;
        detail::for_each_subset(n, size, [&](const std::vector<VertexId>& pick) {
            if (found) return;
            std::uint32_t mask = 0;
            for (VertexId v : pick) mask |= std::uint32_t(1) << v;
            const int induced = counts[mask];
            const int bound = p.k * size - p.ell;
            if (induced > 0 && induced > bound) found = SparsityViolation{pick, induced, bound};
        });
        if (found) return found;
    }
    return std::nullopt;  // unreachable
}

inline bool is_sparse(const Hypergraph& g, const SparsityParams& p, int cap = kDefaultOracleCap) {
    p.validate_for(g);
    detail::check_oracle_cap(g.vertex_count(), cap);
    const auto counts = detail::induced_edge_counts(g);
    for (std::uint32_t mask = 1; mask < counts.size(); ++mask)
        if (counts[mask] > 0 && counts[mask] > p.k * std::popcount(mask) - p.ell) return false;
    return true;
}

inline bool is_tight(const Hypergraph& g, const SparsityParams& p, int cap = kDefaultOracleCap) {
    return g.edge_count() == p.k * g.vertex_count() - p.ell && is_sparse(g, p, cap);
}

// Size of a maximum (k,ell)-sparse sub-multiset, greedy in ground-set order.
// Greedy is exact because the sparse sets form a matroid.
inline std::vector<int> max_sparse_subset(const Hypergraph& g, const SparsityParams& p,
                                          int cap = kDefaultOracleCap) {
    p.validate_for(g);
    std::vector<int> kept;
    for (int e = 0; e < g.edge_count(); ++e) {
        kept.push_back(e);
        if (!is_sparse(edge_subset(g, kept), p, cap)) kept.pop_back();
    }
    return kept;
}

inline int matroid_rank_combinatorial(const Hypergraph& g, const SparsityParams& p,
                                      int cap = kDefaultOracleCap) {
    return static_cast<int>(max_sparse_subset(g, p, cap).size());
}

namespace detail {

// Kuhn-style augmenting search on the edge/vertex incidence graph with vertex
// capacity k. assigned[v] lists the edges currently tailed at v.
struct OrientationSearch {
    const Hypergraph& g;
    int k;
    std::vector<std::vector<int>> assigned;
    std::vector<VertexId> tail;
    std::vector<bool> visited;

    explicit OrientationSearch(const Hypergraph& graph, int capacity)
        : g(graph),
          k(capacity),
          assigned(static_cast<std::size_t>(graph.vertex_count())),
          tail(static_cast<std::size_t>(graph.edge_count()), -1),
          visited(static_cast<std::size_t>(graph.vertex_count()), false) {}

    bool augment(int e) {
        for (VertexId v : g.edge(e).endpoints()) {
            auto& slot = assigned[static_cast<std::size_t>(v)];
            if (visited[static_cast<std::size_t>(v)]) continue;
            visited[static_cast<std::size_t>(v)] = true;
            if (static_cast<int>(slot.size()) < k) {
                slot.push_back(e);
                tail[static_cast<std::size_t>(e)] = v;
                return true;
            }
            for (std::size_t i = 0; i < slot.size(); ++i) {
                const int displaced = slot[i];
                if (augment(displaced)) {
                    slot[i] = e;
                    tail[static_cast<std::size_t>(e)] = v;
                    return true;
                }
            }
        }
        return false;
    }
};

}  // namespace detail

// Orientation in which every vertex is the tail of exactly k edges, when one
// exists. Requires m = k*n; by the orientation characterization such an
// orientation exists iff the hypergraph is (k,0)-sparse.
inline std::optional<Orientation> find_orientation(const Hypergraph& g, int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (g.edge_count() != k * g.vertex_count())
        throw std::invalid_argument("orientation requires m = k*n, got m=" +
                                    std::to_string(g.edge_count()) + ", k*n=" +
                                    std::to_string(k * g.vertex_count()));
    detail::OrientationSearch search(g, k);
    for (int e = 0; e < g.edge_count(); ++e) {
        std::fill(search.visited.begin(), search.visited.end(), false);
        if (!search.augment(e)) return std::nullopt;
    }
    return Orientation{std::move(search.tail)};
}

namespace detail {

inline void check_graded_args(const Hypergraph& g, const Grading& grading, int k,
                              const std::vector<int>& ells) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (ells.size() != grading.depth())
        throw std::invalid_argument("grading depth " + std::to_string(grading.depth()) +
                                    " does not match " + std::to_string(ells.size()) + " counts");
    for (std::size_t i = 0; i < ells.size(); ++i) {
        if (ells[i] < 0) throw std::invalid_argument("graded counts must be non-negative");
        for (int e : grading.level(i))
            if (g.edge(e).size() * k - ells[i] < 1)
                throw std::invalid_argument("level " + std::to_string(i) + " count " +
                                            std::to_string(ells[i]) + " outside matroidal range for an edge of size " +
                                            std::to_string(g.edge(e).size()));
    }
}

}  // namespace detail

// True iff for every level i the edges of that level form a (k, ells[i])-sparse
// sub-hypergraph.
inline bool graded_is_sparse(const Hypergraph& g, const Grading& grading, int k,
                             const std::vector<int>& ells, int cap = kDefaultOracleCap) {
    detail::check_graded_args(g, grading, k, ells);
    for (std::size_t i = 0; i < grading.depth(); ++i) {
        const Hypergraph level = edge_subset(g, grading.level(i));
        if (!is_sparse(level, SparsityParams{k, ells[i], std::max(2, level.min_edge_size()), false}, cap))
            return false;
    }
    return true;
}

// Greedy rank with graded sparsity as the independence oracle.
inline int graded_rank_combinatorial(const Hypergraph& g, const Grading& grading, int k,
                                     const std::vector<int>& ells, int cap = kDefaultOracleCap) {
    detail::check_graded_args(g, grading, k, ells);
    std::vector<int> kept;
    for (int e = 0; e < g.edge_count(); ++e) {
        kept.push_back(e);
        bool ok = true;
        for (std::size_t i = 0; i < grading.depth() && ok; ++i) {
            std::vector<int> level_members;
            for (int idx : kept)
                if (i == 0 || grading.deepest_level(idx) >= static_cast<int>(i)) level_members.push_back(idx);
            const Hypergraph level = edge_subset(g, level_members);
            ok = is_sparse(level, SparsityParams{k, ells[i], std::max(2, level.min_edge_size()), false}, cap);
        }
        if (!ok) kept.pop_back();
    }
    return static_cast<int>(kept.size());
}

}  // namespace sparsity
