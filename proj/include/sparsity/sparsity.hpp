#pragma once

#include "sparsity/experiment.hpp"
#include "sparsity/fields.hpp"
#include "sparsity/hypergraph.hpp"
#include "sparsity/matrix.hpp"
#include "sparsity/matroid.hpp"
#include "sparsity/oracle.hpp"
#include "sparsity/realization.hpp"
#include "sparsity/rng.hpp"
