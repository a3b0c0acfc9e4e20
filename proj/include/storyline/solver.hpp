#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "storyline/model.hpp"

namespace storyline {

// Slot i lies between the fixed characters at positions i-1 and i of the
// fixed order; slot 0 is above the topmost, slot |O_t| below the bottommost.
struct Placement {
    std::map<CharacterId, int> slot_of;
    std::vector<CharacterId> intra_order;  // new characters, top to bottom

    bool operator==(const Placement&) const = default;
};

struct DPState {
    int time = 0;
    Placement placement;
    std::map<CharacterId, int> budgets;  // crossings strictly before `time`, all actives
    std::shared_ptr<const DPState> predecessor;
};

struct SolveOptions {
    bool dominance_prune = true;
    // Discards states whose budget plus the crossings still forced by the
    // fixed layout exceeds chi. Sound; exposed for differential testing.
    bool suffix_prune = true;
};

struct SolveResult {
    bool accepted = false;
    std::optional<Layout> witness;
    std::uint64_t states_stored = 0;
    std::uint64_t transitions_tried = 0;
};

// All placements of the new active characters at instant t whose induced
// total order keeps every meeting active at t contiguous. Canonically sorted
// by the induced total order (lexicographic in character ids).
std::vector<Placement> enumerate_placements(const ExtensionProblem& problem, int t);

// Full top-to-bottom order at t induced by a placement over the fixed order.
std::vector<CharacterId> placement_order(const std::vector<CharacterId>& fixed_order,
                                         const Placement& placement);

// Single DP step from a feasible state at t-1 to a candidate placement at t.
// Empty result means the transition is infeasible (a budget would exceed chi
// or a protected meeting member would be crossed).
std::optional<DPState> transition(const ExtensionProblem& problem, const DPState& prev,
                                  const Placement& placement, int t);

// Removes every state that shares its placement with another state whose
// budget vector is componentwise <=. Decisions of solve are unaffected.
std::vector<DPState> dominance_prune(std::vector<DPState> layer);

// Decides the extension problem and, on acceptance, produces a witness
// layout that restricts to the fixed layout and respects the budget.
// Throws std::invalid_argument if the problem fails validation.
SolveResult solve(const ExtensionProblem& problem, const SolveOptions& options = {});

// Smallest chi for which the problem (with its budget replaced) is accepted,
// or nothing if no valid extension exists at all.
std::optional<int> minimum_chi(const ExtensionProblem& problem, const SolveOptions& options = {});

}  // namespace storyline
