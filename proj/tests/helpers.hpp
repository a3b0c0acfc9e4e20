#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "storyline/model.hpp"

namespace storyline::test {

inline Meeting meet(std::vector<CharacterId> members, int begin, int end) {
    std::sort(members.begin(), members.end());
    return Meeting{std::move(members), begin, end};
}

inline StorylineInstance instance_of(std::vector<Meeting> meetings) {
    StorylineInstance instance;
    std::set<CharacterId> chars;
    for (const Meeting& m : meetings) chars.insert(m.members.begin(), m.members.end());
    instance.characters.assign(chars.begin(), chars.end());
    instance.meetings = std::move(meetings);
    return instance;
}

inline Layout layout_of(std::vector<std::vector<CharacterId>> orders) {
    Layout layout;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        layout.orders[static_cast<int>(i) + 1] = std::move(orders[i]);
    }
    return layout;
}

}  // namespace storyline::test
