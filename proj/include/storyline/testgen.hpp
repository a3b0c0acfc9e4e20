#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "storyline/model.hpp"

namespace storyline::testgen {

struct GeneratorLimits {
    int max_characters = 4;
    int max_horizon = 5;
    int max_new = 2;
    int max_chi = 3;
};

// Draws a small valid extension problem: a random instance, a random fixed
// subset, and a valid fixed layout found by backtracking with lcn <= chi.
// Returns nothing when the draw could not be completed (caller retries).
std::optional<ExtensionProblem> random_problem(std::mt19937& rng,
                                               const GeneratorLimits& limits = {});

// Convenience wrapper that retries until a problem materializes.
ExtensionProblem random_problem_retrying(std::mt19937& rng, const GeneratorLimits& limits = {});

}  // namespace storyline::testgen
