#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "storyline/model.hpp"

namespace storyline {

// Exact Unary Bin Packing: partition `items` into `bins` groups, each
// summing to exactly `capacity`.
struct EubpInstance {
    std::vector<int> items;
    int bins = 0;
    int capacity = 0;
};

struct EubpResult {
    bool accepted = false;
    // On accept, assignment[b] lists the item indices packed into bin b.
    std::vector<std::vector<int>> assignment;
};

struct OracleResult {
    bool accepted = false;
    std::optional<int> min_lcn;  // empty if no valid extension exists at all
    std::optional<Layout> witness;
};

struct OracleSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exhaustive reference solver: enumerates every sequence of full orders
// extending the fixed layout, subject to contiguity and meeting protection,
// and reports the minimum achievable local crossing number. Refuses
// instances beyond small guard rails (total characters or horizon > 6).
OracleResult brute_force_solve(const ExtensionProblem& problem);

// Exhaustive EUBP solver (recursive bin filling). Refuses n > 12.
EubpResult brute_force_eubp(const EubpInstance& instance);

}  // namespace storyline
