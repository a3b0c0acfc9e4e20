#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "storyline/model.hpp"
#include "storyline/oracle.hpp"

namespace storyline {

struct GadgetParams {
    int delta = 2;
    int chi = 0;
    int k = 0;
};

struct ReductionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One vertical row of the generated fixed layout: a leader and (optionally)
// a saturator partner weaving around it inside [sat_begin, sat_end].
struct WeaveRow {
    CharacterId leader;
    CharacterId partner;  // empty if the row carries no saturator
    int sat_begin = 0;
    int sat_end = 0;
    bool partner_above = false;  // partner starts above the leader
};

struct GadgetFragment {
    std::vector<CharacterId> characters;
    std::vector<Meeting> meetings;
    std::vector<WeaveRow> rows;  // top to bottom
    std::map<int, std::vector<CharacterId>> orders;
    int first_instant = 0;
    int last_instant = 0;
};

GadgetParams reduction_params(const EubpInstance& instance);

// s-saturator anchored at b_star: partner character `leading + "_bar"`,
// meetings at b_star..b_star+s, and s crossings between the two curves.
// With solo_anchor the anchor meeting holds only the partner, for leaders
// that are already busy at b_star.
GadgetFragment build_saturator(int s, int b_star, const CharacterId& leading,
                               bool partner_above = false, bool solo_anchor = false);

// c-channel whose meeting run starts at b_star (meetings b_star..b_star+c,
// alternating top/bottom partner). The attached saturators sit in the
// chi+1 instants right before the run. Boundary saturators are optional so
// stacked channels can share boundary characters without doubling them.
GadgetFragment build_channel(int c, const GadgetParams& params, int b_star,
                             const CharacterId& central, const CharacterId& top,
                             const CharacterId& bottom, bool attach_top_saturator = true,
                             bool attach_bottom_saturator = true);

// x-column: 2k-1 stacked channels sharing boundaries, capacity delta*x for
// every channel except the middle one, which gets x. Run starts at b_star.
GadgetFragment build_column(int x, const GadgetParams& params, int b_star,
                            const std::string& prefix);

// Full hardness instance for an EUBP input. Throws ReductionError if the
// items do not sum to bins*capacity or if some item exceeds the bin
// capacity (then the EUBP instance is trivially infeasible and the gadget
// capacities would not fit the budget).
ExtensionProblem reduce(const EubpInstance& instance);

}  // namespace storyline
