#pragma once

#include "ctxbench/dataset.hpp"
#include "ctxbench/rng.hpp"

namespace ctxbench::balance {

struct BalanceConfig {
    std::size_t k_neighbors = 5;  // clamped to class-size-1 for tiny classes
};

// SMOTE oversampling to the majority count. Original rows are kept verbatim
// and first; each synthetic row is x + u*(xn - x) for a same-class neighbor
// xn among the k nearest, u in [0,1). Interpolation covers every column,
// one-hot groups included, so balanced data may hold fractional values.
Dataset smote(const Dataset& d, const BalanceConfig& cfg, Rng rng);

// Seeded uniform partition; train gets floor(n * train_fraction) rows.
std::pair<Dataset, Dataset> split(const Dataset& d, double train_fraction, Rng rng);

// Leave-one-user-out: test is every row of held_out, train is the rest.
std::pair<Dataset, Dataset> split_by_user(const Dataset& d, UserId held_out);

}  // namespace ctxbench::balance
