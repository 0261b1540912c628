#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sparsity {

using VertexId = int;  // dense indices in [0, n)

// Set of >= 2 distinct endpoints, stored sorted ascending.
class Hyperedge {
public:
    explicit Hyperedge(std::vector<VertexId> endpoints) : endpoints_(std::move(endpoints)) {
        std::sort(endpoints_.begin(), endpoints_.end());
        if (endpoints_.size() < 2) throw std::invalid_argument("hyperedge needs at least 2 endpoints");
        for (std::size_t i = 0; i + 1 < endpoints_.size(); ++i)
            if (endpoints_[i] == endpoints_[i + 1])
                throw std::invalid_argument("repeated endpoint " + std::to_string(endpoints_[i]) +
                                            " in hyperedge");
        if (endpoints_.front() < 0) throw std::invalid_argument("negative endpoint in hyperedge");
    }

    const std::vector<VertexId>& endpoints() const { return endpoints_; }
    int size() const { return static_cast<int>(endpoints_.size()); }
    bool contains(VertexId v) const {
        return std::binary_search(endpoints_.begin(), endpoints_.end(), v);
    }

    bool operator==(const Hyperedge& other) const { return endpoints_ == other.endpoints_; }

private:
    std::vector<VertexId> endpoints_;
};

// Vertex count plus an ordered multiset of hyperedges. The edge order is the
// ground-set order: row i of any realization corresponds to edge i. Immutable
// after construction.
class Hypergraph {
public:
    Hypergraph(int n, std::vector<Hyperedge> edges) : n_(n), edges_(std::move(edges)) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        for (const Hyperedge& e : edges_)
            if (e.endpoints().back() >= n_)
                throw std::invalid_argument("endpoint " + std::to_string(e.endpoints().back()) +
                                            " out of range for n=" + std::to_string(n_));
    }

    Hypergraph(int n, const std::vector<std::vector<VertexId>>& edge_sets)
        : Hypergraph(n, to_edges(edge_sets)) {}

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Hyperedge& edge(int i) const { return edges_.at(static_cast<std::size_t>(i)); }
    const std::vector<Hyperedge>& edges() const { return edges_; }

    bool is_uniform(int d) const {
        return std::all_of(edges_.begin(), edges_.end(),
                           [d](const Hyperedge& e) { return e.size() == d; });
    }

    int min_edge_size() const {
        int s = 0;
        for (const Hyperedge& e : edges_) s = (s == 0) ? e.size() : std::min(s, e.size());
        return s;
    }

private:
    static std::vector<Hyperedge> to_edges(const std::vector<std::vector<VertexId>>& sets) {
        std::vector<Hyperedge> edges;
        edges.reserve(sets.size());
        for (const auto& s : sets) edges.emplace_back(s);
        return edges;
    }

    int n_;
    std::vector<Hyperedge> edges_;
};

namespace detail {

template <class Fn>
void for_each_subset(int n, int d, Fn&& fn) {
    std::vector<VertexId> pick(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(pick);
        int i = d - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - d + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace detail

// Every d-subset of [0, n), `multiplicity` consecutive copies each, subsets in
// lexicographic order.
inline Hypergraph complete_uniform(int n, int d, int multiplicity) {
    if (d < 2) throw std::invalid_argument("edge size must be at least 2");
    if (n < d) throw std::invalid_argument("n must be at least the edge size d");
    if (multiplicity < 1) throw std::invalid_argument("multiplicity must be positive");
    std::vector<Hyperedge> edges;
    detail::for_each_subset(n, d, [&](const std::vector<VertexId>& pick) {
        for (int c = 0; c < multiplicity; ++c) edges.emplace_back(pick);
    });
    return Hypergraph(n, std::move(edges));
}

// Ground multiset in which every d-subset appears d*k times, for each size d
// in [2, max_size]. The infinite family is truncated at max_size.
inline Hypergraph complete_plus(int n, int k, int max_size) {
    if (n < 2) throw std::invalid_argument("need at least 2 vertices");
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (max_size > n) throw std::invalid_argument("max_size exceeds vertex count");
    if (max_size < 2) throw std::invalid_argument("max_size must be at least 2");
    std::vector<Hyperedge> edges;
    for (int d = 2; d <= max_size; ++d) {
        detail::for_each_subset(n, d, [&](const std::vector<VertexId>& pick) {
            for (int c = 0; c < d * k; ++c) edges.emplace_back(pick);
        });
    }
    return Hypergraph(n, std::move(edges));
}

struct InducedSubgraph {
    Hypergraph graph;
    std::vector<int> edge_indices;     // new row -> original edge index
    std::vector<VertexId> vertex_map;  // new vertex -> original vertex
};

// Keeps exactly the edges with all endpoints inside `vertices`; surviving
// edges hold their relative order and vertices are re-indexed densely.
inline InducedSubgraph induced_subgraph(const Hypergraph& g, const std::vector<VertexId>& vertices) {
    std::set<VertexId> keep;
    for (VertexId v : vertices) {
        if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
        keep.insert(v);
    }
    std::vector<VertexId> ordered(keep.begin(), keep.end());
    std::vector<int> dense(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < ordered.size(); ++i)
        dense[static_cast<std::size_t>(ordered[i])] = static_cast<int>(i);

    std::vector<Hyperedge> edges;
    std::vector<int> edge_indices;
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto& eps = g.edge(i).endpoints();
        if (!std::all_of(eps.begin(), eps.end(), [&](VertexId v) { return keep.count(v) > 0; }))
            continue;
        std::vector<VertexId> mapped;
        mapped.reserve(eps.size());
        for (VertexId v : eps) mapped.push_back(dense[static_cast<std::size_t>(v)]);
        edges.emplace_back(std::move(mapped));
        edge_indices.push_back(i);
    }
    return InducedSubgraph{Hypergraph(static_cast<int>(ordered.size()), std::move(edges)),
                           std::move(edge_indices), std::move(ordered)};
}

// Same vertex set, only the selected edges, in their original relative order.
inline Hypergraph edge_subset(const Hypergraph& g, const std::vector<int>& indices) {
    std::vector<Hyperedge> edges;
    edges.reserve(indices.size());
    for (int i : indices) {
        if (i < 0 || i >= g.edge_count()) throw std::out_of_range("edge index out of range");
        edges.push_back(g.edge(i));
    }
    return Hypergraph(g.vertex_count(), std::move(edges));
}

// Counting parameters (k, ell) with the edge-size mode: uniform of size d, or
// non-uniform where d is the minimum admissible size. Matroidal range is
// 0 <= ell <= dk-1, equivalently every edge of size i needs i*k - ell >= 1.
struct SparsityParams {
    int k = 1;
    int ell = 0;
    int d = 2;
    bool uniform = true;

    static SparsityParams uniform_params(int k, int ell, int d) {
        SparsityParams p{k, ell, d, true};
        p.validate();
        return p;
    }

    static SparsityParams non_uniform(int k, int ell) {
        SparsityParams p{k, ell, 2, false};
        if (k < 1) throw std::invalid_argument("k must be positive");
        if (ell < 0) throw std::invalid_argument("ell must be non-negative");
        p.d = std::max(2, (ell + k) / k);  // smallest d with d*k - ell >= 1
        return p;
    }

    void validate() const {
        if (k < 1) throw std::invalid_argument("k must be positive");
        if (ell < 0) throw std::invalid_argument("ell must be non-negative");
        if (uniform) {
            if (d < 2) throw std::invalid_argument("edge size must be at least 2");
            if (ell > d * k - 1)
                throw std::invalid_argument("ell=" + std::to_string(ell) + " outside matroidal range [0," +
                                            std::to_string(d * k - 1) + "] for k=" + std::to_string(k) +
                                            ", d=" + std::to_string(d));
        }
    }

    // Ground multiset multiplicity of an edge with `size` endpoints.
    int multiplicity(int size) const { return size * k - ell; }

    void validate_for(const Hypergraph& g) const {
        validate();
        for (const Hyperedge& e : g.edges()) {
            if (uniform && e.size() != d)
                throw std::invalid_argument("edge of size " + std::to_string(e.size()) +
                                            " in a hypergraph declared " + std::to_string(d) + "-uniform");
            if (e.size() * k - ell < 1)
                throw std::invalid_argument("edge of size " + std::to_string(e.size()) +
                                            " violates size*k - ell >= 1 for k=" + std::to_string(k) +
                                            ", ell=" + std::to_string(ell));
        }
    }
};

// Strictly decreasing sequence of edge-index sets over a host hypergraph;
// level 0 contains every edge.
class Grading {
public:
    Grading(int edge_count, std::vector<std::vector<int>> levels) : levels_(std::move(levels)) {
        if (levels_.empty()) throw std::invalid_argument("grading needs at least one level");
        for (auto& level : levels_) {
            std::sort(level.begin(), level.end());
            if (std::adjacent_find(level.begin(), level.end()) != level.end())
                throw std::invalid_argument("duplicate edge index in grading level");
            for (int i : level)
                if (i < 0 || i >= edge_count) throw std::invalid_argument("grading index out of range");
        }
        if (static_cast<int>(levels_[0].size()) != edge_count)
            throw std::invalid_argument("first grading level must contain every edge");
        for (std::size_t i = 1; i < levels_.size(); ++i) {
            if (levels_[i].size() >= levels_[i - 1].size() ||
                !std::includes(levels_[i - 1].begin(), levels_[i - 1].end(), levels_[i].begin(),
                               levels_[i].end()))
                throw std::invalid_argument("grading levels must strictly decrease");
        }
        deepest_.assign(static_cast<std::size_t>(edge_count), 0);
        for (std::size_t lvl = 1; lvl < levels_.size(); ++lvl)
            for (int e : levels_[lvl]) deepest_[static_cast<std::size_t>(e)] = static_cast<int>(lvl);
    }

    std::size_t depth() const { return levels_.size(); }
    const std::vector<int>& level(std::size_t i) const { return levels_.at(i); }
    int deepest_level(int edge) const { return deepest_.at(static_cast<std::size_t>(edge)); }

private:
    std::vector<std::vector<int>> levels_;
    std::vector<int> deepest_;
};

// Interchange format: {"n": <int>, "edges": [[<int>,...], ...]}, edges in
// ground-set order with endpoints ascending.
inline nlohmann::ordered_json to_json(const Hypergraph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.vertex_count();
    auto edges = nlohmann::ordered_json::array();
    for (const Hyperedge& e : g.edges()) edges.push_back(e.endpoints());
    j["edges"] = std::move(edges);
    return j;
}

inline Hypergraph hypergraph_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    std::vector<std::vector<VertexId>> edges;
    for (const auto& e : j.at("edges")) edges.push_back(e.get<std::vector<VertexId>>());
    return Hypergraph(n, edges);
}

}  // namespace sparsity
