#include <catch_amalgamated.hpp>

#include <sstream>

#include "sparsity/matroid.hpp"
#include "sparsity/oracle.hpp"
#include "sparsity/realization.hpp"

using namespace sparsity;

namespace {

const SparsityParams p232 = SparsityParams::uniform_params(2, 3, 2);

Hypergraph triangle() { return Hypergraph(3, {{0, 1}, {1, 2}, {0, 2}}); }

template <class Field>
std::string export_string(const Matrix<Field>& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

}  // namespace

TEST_CASE("support pattern layout") {
    const auto pattern = build_pattern(triangle(), 2);
    CHECK(pattern.columns == 6);
    REQUIRE(pattern.row_columns.size() == 3);
    for (const auto& cols : pattern.row_columns) CHECK(cols.size() == 4);
    CHECK(pattern.row_columns[0] == std::vector<int>{0, 1, 2, 3});  // edge {0,1}
    CHECK(pattern.row_columns[1] == std::vector<int>{2, 3, 4, 5});  // edge {1,2}

    const Hypergraph one_triple(4, {{0, 2, 3}});
    CHECK(build_pattern(one_triple, 1).row_columns[0] == std::vector<int>{0, 2, 3});

    CHECK(build_pattern(Hypergraph(3, std::vector<Hyperedge>{}), 2).row_columns.empty());
}

TEST_CASE("random k0 realizations hit full rank exactly when orientable") {
    const PrimeField f;
    const Hypergraph cycle4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    bool full = false;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto r = realize_k0(cycle4, 1, f, seed);
        CHECK(verify_pattern(r, cycle4, 1));
        full = full || matrix_rank(r.matrix) == 4;
    }
    CHECK(full);

    // doubled triangle edge + isolated vertex: 4 rows live in 3 vertex columns,
    // so every seed is rank deficient
    const Hypergraph crowded(4, {{0, 1}, {0, 1}, {1, 2}, {0, 2}});
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        CHECK(matrix_rank(realize_k0(crowded, 1, f, seed).matrix) <= 3);

    const auto empty = realize_k0(Hypergraph(3, std::vector<Hyperedge>{}), 2, f, 1);
    CHECK(empty.matrix.rows() == 0);
    CHECK(empty.matrix.cols() == 6);
    CHECK(matrix_rank(empty.matrix) == 0);
}

TEST_CASE("identity specialization is a permutation matrix") {
    const PrimeField f;
    const Hypergraph cycle4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const auto o = find_orientation(cycle4, 1);
    REQUIRE(o.has_value());
    const auto r = specialize_identity(cycle4, 1, *o, f);
    CHECK(matrix_rank(r.matrix) == 4);
    for (std::size_t row = 0; row < 4; ++row) {
        int nonzero = 0;
        for (std::size_t c = 0; c < 4; ++c)
            if (!f.is_zero(r.matrix(row, c))) ++nonzero;
        CHECK(nonzero == 1);
    }
    CHECK(verify_pattern(r, cycle4, 1));

    const Hypergraph tri_pendant(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    const auto o2 = find_orientation(tri_pendant, 1);
    REQUIRE(o2.has_value());
    CHECK(matrix_rank(specialize_identity(tri_pendant, 1, *o2, f).matrix) == 4);

    const Hypergraph parallel2(2, {{0, 1}, {0, 1}});
    const auto o3 = find_orientation(parallel2, 1);
    REQUIRE(o3.has_value());
    const auto perm = specialize_identity(parallel2, 1, *o3, f);
    CHECK(matrix_rank(perm.matrix) == 2);

    Orientation bad{{0, 0}};  // vertex 0 tails both edges with k = 1
    CHECK_THROWS_AS(specialize_identity(parallel2, 1, bad, f), std::invalid_argument);
    Orientation not_endpoint{{1, 3}};
    CHECK_THROWS_AS(specialize_identity(Hypergraph(4, {{0, 1}, {2, 3}}),
                                        1, not_endpoint, f),
                    std::invalid_argument);
}

TEMPLATE_TEST_CASE("general realizations annihilate their constraints", "", PrimeField,
                   RationalField) {
    const TestType f{};
    const auto tri = triangle();
    const auto r = realize_kl(tri, p232, f, 5);
    CHECK(r.matrix.rows() == 3);
    CHECK(r.matrix.cols() == 6);
    CHECK(r.constraints.rows() == 6);
    CHECK(r.constraints.cols() == 3);
    CHECK(verify_pattern(r, tri, 2));

    const auto product = multiply(r.matrix, r.constraints);
    for (std::size_t i = 0; i < product.rows(); ++i)
        for (std::size_t j = 0; j < product.cols(); ++j) CHECK(f.is_zero(product(i, j)));

    bool full = false;
    for (std::uint64_t seed = 0; seed < 3; ++seed)
        full = full || matrix_rank(realize_kl(tri, p232, f, seed).matrix) == 3;
    CHECK(full);  // the triangle is (2,3)-tight
}

TEST_CASE("k4 realizations are rank deficient at 5") {
    const PrimeField f;
    const auto k4 = complete_uniform(4, 2, 1);
    bool reached = false;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto rank = matrix_rank(realize_kl(k4, p232, f, seed).matrix);
        CHECK(rank <= 5);  // six rows cannot be independent
        reached = reached || rank == 5;
    }
    CHECK(reached);
}

TEST_CASE("single edge against three constraints has a one-dimensional solution") {
    const PrimeField f;
    const Hypergraph one_edge(2, {{0, 1}});
    const auto r = realize_kl(one_edge, p232, f, 9);
    CHECK(r.matrix.rows() == 1);
    CHECK(r.matrix.cols() == 4);
    CHECK(matrix_rank(r.matrix) == 1);
    CHECK(verify_pattern(r, one_edge, 2));
    // the local kernel of a generic 4x3 block is exactly one-dimensional
    CHECK(nullspace(r.constraints.transposed()).cols() == 1);
}

TEST_CASE("ell = 0 realizations coincide with the k0 builder") {
    const PrimeField f;
    const auto tri = triangle();
    const auto a = realize_kl(tri, SparsityParams::uniform_params(2, 0, 2), f, 33);
    const auto b = realize_k0(tri, 2, f, 33);
    CHECK(a.matrix == b.matrix);
    CHECK(a.constraints.cols() == 0);
    CHECK(verify_pattern(a, tri, 2));
}

TEST_CASE("same seed reproduces the realization bit for bit") {
    const PrimeField f;
    const auto k4 = complete_uniform(4, 2, 1);
    const auto a = realize_kl(k4, p232, f, 1234);
    const auto b = realize_kl(k4, p232, f, 1234);
    CHECK(export_string(a.matrix) == export_string(b.matrix));
    CHECK(export_string(a.constraints) == export_string(b.constraints));
    const auto c = realize_kl(k4, p232, f, 1235);
    CHECK(export_string(a.matrix) != export_string(c.matrix));
}

TEST_CASE("verify_pattern catches corruption") {
    const PrimeField f;
    const auto tri = triangle();
    auto r = realize_kl(tri, p232, f, 2);
    REQUIRE(verify_pattern(r, tri, 2));

    auto corrupted = r;
    corrupted.matrix(0, 4) = f.one();  // column 4 belongs to vertex 2, not edge {0,1}
    CHECK_FALSE(verify_pattern(corrupted, tri, 2));

    auto broken_kernel = r;
    for (int col : r.pattern.row_columns[0])
        broken_kernel.matrix(0, static_cast<std::size_t>(col)) = f.one();
    CHECK_FALSE(verify_pattern(broken_kernel, tri, 2));

    CHECK_THROWS_AS(verify_pattern(r, complete_uniform(4, 2, 1), 2), std::invalid_argument);
}

TEST_CASE("graded realizations respect per-level constraints") {
    const PrimeField f;
    const auto tri = triangle();
    const Grading grading(3, {{0, 1, 2}, {1}});  // edge {1,2} sits deeper

    const auto r = realize_graded(tri, grading, 2, {2, 3}, f, 77);
    CHECK(r.row_constraints == std::vector<int>{2, 3, 2});
    CHECK(verify_pattern(r, tri, 2));

    // every row annihilates the first two constraint columns
    Matrix<PrimeField> first_two(f, 6, 2);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 2; ++j) first_two(i, j) = r.constraints(i, j);
    const auto product = multiply(r.matrix, first_two);
    for (std::size_t i = 0; i < product.rows(); ++i)
        for (std::size_t j = 0; j < product.cols(); ++j) CHECK(f.is_zero(product(i, j)));

    // rank agrees with the graded greedy oracle
    const int oracle = graded_rank_combinatorial(tri, grading, 2, {2, 3});
    bool matched = false;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const int rank =
            static_cast<int>(matrix_rank(realize_graded(tri, grading, 2, {2, 3}, f, seed).matrix));
        CHECK(rank <= oracle);
        matched = matched || rank == oracle;
    }
    CHECK(matched);

    CHECK_THROWS_AS(realize_graded(tri, grading, 2, {3, 2}, f, 1), std::invalid_argument);
}

TEST_CASE("depth-one graded realization matches the uniform builder contract") {
    const PrimeField f;
    const auto tri = triangle();
    const Grading trivial(3, {{0, 1, 2}});
    const auto graded = realize_graded(tri, trivial, 2, {3}, f, 4);
    CHECK(graded.row_constraints == std::vector<int>{3, 3, 3});
    CHECK(verify_pattern(graded, tri, 2));
    const auto product = multiply(graded.matrix, graded.constraints);
    for (std::size_t i = 0; i < product.rows(); ++i)
        for (std::size_t j = 0; j < product.cols(); ++j) CHECK(f.is_zero(product(i, j)));
}

TEST_CASE("subgraph overflow forces dependence for every seed") {
    const PrimeField f;
    // 2 vertices, 2 copies of {0,1} under (2,3,2): bound is 1
    const Hypergraph doubled(2, {{0, 1}, {0, 1}});
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        CHECK(matrix_rank(realize_kl(doubled, p232, f, seed).matrix) <= 1);
}

TEST_CASE("non-uniform realizations") {
    const PrimeField f;
    const Hypergraph mixed(4, {{0, 1}, {0, 2, 3}, {1, 2, 3}});
    const auto p = SparsityParams::non_uniform(2, 3);
    const auto r = realize_kl(mixed, p, f, 21);
    CHECK(r.matrix.cols() == 8);
    CHECK(verify_pattern(r, mixed, 2));
    CHECK(r.pattern.row_columns[0].size() == 4);
    CHECK(r.pattern.row_columns[1].size() == 6);
}
