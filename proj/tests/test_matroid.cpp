#include <catch_amalgamated.hpp>

#include <numeric>

#include "sparsity/matroid.hpp"

using namespace sparsity;

namespace {

const SparsityParams p232 = SparsityParams::uniform_params(2, 3, 2);
const PrimeField field{};

std::vector<std::uint64_t> seeds3(std::uint64_t base = 0) { return derive_seeds(base, 3); }

}  // namespace

TEST_CASE("linear rank on fixed instances") {
    CHECK(rank_linear(complete_uniform(4, 2, 1), p232, field, seeds3()) == 5);
    CHECK(rank_linear(Hypergraph(3, {{0, 1}, {1, 2}, {0, 2}}), p232, field, seeds3()) == 3);

    // dk - ell = 1: one copy of {0,1} is already tight on its two vertices
    const Hypergraph parallel4(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
    CHECK(rank_linear(parallel4, p232, field, seeds3()) == 1);

    CHECK(rank_linear(Hypergraph(5, std::vector<Hyperedge>{}), p232, field, seeds3()) == 0);
}

TEST_CASE("independence queries certify sparsity") {
    const auto k4 = complete_uniform(4, 2, 1);
    std::vector<int> all(6);
    std::iota(all.begin(), all.end(), 0);

    CHECK_FALSE(is_independent(k4, p232, all, field, seeds3()));
    CHECK(is_independent(k4, p232, {}, field, seeds3()));
    for (int skip = 0; skip < 6; ++skip) {
        std::vector<int> five;
        for (int e = 0; e < 6; ++e)
            if (e != skip) five.push_back(e);
        CHECK(is_independent(k4, p232, five, field, seeds3()));
        CHECK(is_sparse(edge_subset(k4, five), p232));  // oracle agrees
    }
}

TEST_CASE("greedy basis extraction") {
    const auto k4 = complete_uniform(4, 2, 1);
    CHECK(extract_basis(k4, p232, field, seeds3()) == std::vector<int>{0, 1, 2, 3, 4});

    const Hypergraph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(extract_basis(tri, p232, field, seeds3()) == std::vector<int>{0, 1, 2});

    CHECK(extract_basis(Hypergraph(4, std::vector<Hyperedge>{}), p232, field, seeds3()).empty());

    const auto basis = extract_basis(complete_uniform(5, 2, 1), p232, field, seeds3());
    CHECK(basis.size() == 7);  // 2*5 - 3
    CHECK(is_sparse(edge_subset(complete_uniform(5, 2, 1), basis), p232));
}

TEST_CASE("k4 is a circuit of the (2,3) matroid") {
    const auto k4 = complete_uniform(4, 2, 1);
    std::vector<int> all(6);
    std::iota(all.begin(), all.end(), 0);
    CHECK(find_circuit(k4, p232, all, field, seeds3()) == all);

    CHECK_THROWS_AS(find_circuit(k4, p232, {0, 1, 2}, field, seeds3()), std::domain_error);
}

TEST_CASE("parallel copies form the expected circuit") {
    // dk - ell + 1 copies of one edge: the copies themselves are the circuit
    const SparsityParams p(SparsityParams::uniform_params(2, 2, 2));  // dk - ell = 2
    const Hypergraph g(3, {{0, 1}, {0, 1}, {0, 1}, {1, 2}});
    const auto circuit = find_circuit(g, p, {0, 1, 2, 3}, field, seeds3());
    CHECK(circuit == std::vector<int>{0, 1, 2});

    // minimality: dropping any member leaves an independent set
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        std::vector<int> smaller = circuit;
        smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
        CHECK(is_independent(g, p, smaller, field, seeds3()));
    }
}

TEST_CASE("cross validation agrees with the oracle") {
    const auto report = cross_validate(complete_uniform(4, 3, 5),
                                       SparsityParams::uniform_params(2, 1, 3), 3, field, 11);
    CHECK(report.rank_linear == 7);  // min(20, 2*4 - 1)
    CHECK(report.rank_combinatorial == 7);
    CHECK(report.agree);
    CHECK_FALSE(report.seeds_used.empty());
    CHECK(report.failure_bound < BigRational(1, 1000000));

    const auto empty = cross_validate(Hypergraph(4, std::vector<Hyperedge>{}), p232, 3, field, 1);
    CHECK(empty.rank_linear == 0);
    CHECK(empty.agree);
    CHECK(empty.failure_bound == 0);
}

TEST_CASE("cross validation enforces the oracle cap") {
    std::vector<std::vector<VertexId>> edges{{0, 13}};
    CHECK_THROWS_AS(cross_validate(Hypergraph(14, edges), p232, 3, field, 1),
                    std::invalid_argument);
}

TEST_CASE("matroid reports serialize with fixed key order") {
    MatroidReport report;
    report.rank_linear = 5;
    report.rank_combinatorial = 5;
    report.agree = true;
    report.seeds_used = {1, 2};
    report.failure_bound = BigRational(3, 7);
    report.basis = std::vector<int>{0, 1};
    CHECK(report.to_json().dump() ==
          R"({"rank_linear":5,"rank_combinatorial":5,"agree":true,"seeds":[1,2],"failure_bound":"3/7","basis":[0,1]})");

    MatroidReport minimal;
    minimal.seeds_used = {9};
    CHECK(minimal.to_json().dump() == R"({"rank_linear":0,"seeds":[9],"failure_bound":"0/1"})");
}

TEST_CASE("failure bounds shrink with retries") {
    const BigInt space = BigInt(1) << 61;
    CHECK(rank_failure_bound(0, space, 3) == 0);
    CHECK(rank_failure_bound(10, space, 0) == 0);
    const auto one = rank_failure_bound(20, space, 1);
    const auto two = rank_failure_bound(20, space, 2);
    CHECK(one == BigRational(20, space));
    CHECK(two == one * one);
    CHECK(rank_failure_bound(5, BigInt(2), 1) == 1);  // clamped at certainty
}

TEST_CASE("rationals cross-validate too") {
    const RationalField fq;
    const auto report = cross_validate(Hypergraph(3, {{0, 1}, {1, 2}, {0, 2}}), p232, 3, fq, 5);
    CHECK(report.rank_linear == 3);
    CHECK(report.agree);
}
