// Builds the complete graph K4, checks (2,3)-sparsity, and prints a rank-5
// realization together with the matroid report.

#include <iostream>

#include "sparsity/sparsity.hpp"

int main() {
    using namespace sparsity;

    const Hypergraph k4 = complete_uniform(4, 2, 1);
    const SparsityParams p = SparsityParams::uniform_params(2, 3, 2);

    std::cout << "K4 as JSON: " << to_json(k4).dump() << "\n";
    if (const auto violation = find_violation(k4, p)) {
        std::cout << "not (2,3)-sparse, witness: " << violation->to_json().dump() << "\n";
    }

    const PrimeField field;
    const auto realization = realize_kl(k4, p, field, /*seed=*/7);
    std::cout << "realization (rows = edges, 8 columns = 2 per vertex):\n";
    write_matrix(std::cout, realization.matrix);

    const MatroidReport report = cross_validate(k4, p, 3, field, 7);
    std::cout << "report: " << report.to_json().dump() << "\n";
    return 0;
}
