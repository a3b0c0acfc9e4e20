#include "storyline/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace storyline {

bool ValidationReport::has(const std::string& code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
}

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    for (const Violation& v : violations) {
        out << v.code << ": " << v.detail << "\n";
    }
    return out.str();
}

namespace {

void add(ValidationReport& report, std::string code, std::string detail) {
    report.violations.push_back({std::move(code), std::move(detail)});
}

bool has_duplicates(const std::vector<CharacterId>& ids) {
    std::unordered_set<CharacterId> seen;
    for (const auto& id : ids) {
        if (!seen.insert(id).second) return true;
    }
    return false;
}

}  // namespace

int horizon(const StorylineInstance& instance) {
    int tau = 0;
    for (const Meeting& m : instance.meetings) {
        tau = std::max(tau, m.end);
    }
    return tau;
}

std::map<CharacterId, Lifespan> derive_lifespans(const StorylineInstance& instance) {
    std::map<CharacterId, Lifespan> spans;
    for (const Meeting& m : instance.meetings) {
        for (const CharacterId& c : m.members) {
            auto it = spans.find(c);
            if (it == spans.end()) {
                spans.emplace(c, Lifespan{m.begin, m.end});
            } else {
                it->second.first = std::min(it->second.first, m.begin);
                it->second.last = std::max(it->second.last, m.end);
            }
        }
    }
    for (const CharacterId& c : instance.characters) {
        if (!spans.count(c)) {
            throw std::invalid_argument("character '" + c + "' participates in no meeting");
        }
    }
    return spans;
}

std::vector<CharacterId> active_set(const StorylineInstance& instance, int t) {
    if (t < 1 || t > horizon(instance)) {
        throw std::out_of_range("time instant " + std::to_string(t) + " out of range");
    }
    auto spans = derive_lifespans(instance);
    std::vector<CharacterId> active;
    for (const auto& [c, span] : spans) {
        if (span.contains(t)) active.push_back(c);
    }
    return active;  // map iteration is already sorted
}

ValidationReport validate_instance(const StorylineInstance& instance, bool require_time_origin) {
    ValidationReport report;
    if (has_duplicates(instance.characters)) {
        add(report, "DUPLICATE_CHARACTER", "character list contains duplicates");
    }
    std::unordered_set<CharacterId> known(instance.characters.begin(), instance.characters.end());
    for (const CharacterId& c : instance.characters) {
        if (c.empty()) add(report, "EMPTY_CHARACTER_ID", "empty character id");
    }

    for (std::size_t i = 0; i < instance.meetings.size(); ++i) {
        const Meeting& m = instance.meetings[i];
        const std::string where = "meeting #" + std::to_string(i);
        if (m.members.empty()) add(report, "EMPTY_MEMBERS", where + " has no members");
        if (has_duplicates(m.members)) {
            add(report, "DUPLICATE_MEMBER", where + " lists a member twice");
        }
        if (m.begin > m.end) {
            add(report, "MEETING_TIME_ORDER",
                where + " has begin " + std::to_string(m.begin) + " > end " + std::to_string(m.end));
        }
        if (m.begin < 1) add(report, "MEETING_TIME_ORDER", where + " begins before instant 1");
        for (const CharacterId& c : m.members) {
            if (!known.count(c)) add(report, "UNKNOWN_CHARACTER", where + " references '" + c + "'");
        }
    }
    if (!report.ok()) return report;  // later checks assume structural sanity

    // No character may sit in two distinct meetings active at the same instant.
    std::unordered_map<CharacterId, std::vector<std::pair<int, int>>> busy;
    for (const Meeting& m : instance.meetings) {
        for (const CharacterId& c : m.members) busy[c].emplace_back(m.begin, m.end);
    }
    for (auto& [c, intervals] : busy) {
        std::sort(intervals.begin(), intervals.end());
        for (std::size_t i = 1; i < intervals.size(); ++i) {
            if (intervals[i].first <= intervals[i - 1].second) {
                add(report, "MEETING_OVERLAP",
                    "character '" + c + "' is in two meetings active at instant " +
                        std::to_string(intervals[i].first));
            }
        }
    }

    for (const CharacterId& c : instance.characters) {
        if (!busy.count(c)) {
            add(report, "CHARACTER_NO_MEETING", "character '" + c + "' participates in no meeting");
        }
    }
    if (report.has("CHARACTER_NO_MEETING")) return report;

    if (require_time_origin && !instance.characters.empty()) {
        auto spans = derive_lifespans(instance);
        int min_first = horizon(instance);
        for (const auto& [c, span] : spans) min_first = std::min(min_first, span.first);
        if (min_first != 1) {
            add(report, "TIME_ORIGIN",
                "minimum lifespan start is " + std::to_string(min_first) + ", expected 1");
        }
    }
    return report;
}

StorylineInstance induced_sub_storyline(const StorylineInstance& instance,
                                        const std::vector<CharacterId>& subset) {
    std::set<CharacterId> sub(subset.begin(), subset.end());
    std::set<CharacterId> known(instance.characters.begin(), instance.characters.end());
    for (const CharacterId& c : sub) {
        if (!known.count(c)) {
            throw std::invalid_argument("subset character '" + c + "' not in instance");
        }
    }
    StorylineInstance result;
    result.characters.assign(sub.begin(), sub.end());
    std::set<CharacterId> covered;
    for (const Meeting& m : instance.meetings) {
        Meeting restricted;
        restricted.begin = m.begin;
        restricted.end = m.end;
        for (const CharacterId& c : m.members) {
            if (sub.count(c)) restricted.members.push_back(c);
        }
        if (!restricted.members.empty()) {
            covered.insert(restricted.members.begin(), restricted.members.end());
            result.meetings.push_back(std::move(restricted));
        }
    }
    for (const CharacterId& c : sub) {
        if (!covered.count(c)) {
            throw std::invalid_argument("character '" + c + "' would lose all meetings");
        }
    }
    return result;
}

std::map<CharacterId, int> strip_crossings(const std::vector<CharacterId>& before,
                                           const std::vector<CharacterId>& after) {
    if (has_duplicates(before) || has_duplicates(after)) {
        throw std::invalid_argument("order contains a duplicate character");
    }
    std::unordered_map<CharacterId, int> pos_after;
    for (std::size_t i = 0; i < after.size(); ++i) pos_after[after[i]] = static_cast<int>(i);

    std::vector<const CharacterId*> common;
    for (const CharacterId& c : before) {
        if (pos_after.count(c)) common.push_back(&c);
    }
    std::map<CharacterId, int> counts;
    for (const CharacterId* c : common) counts[*c] = 0;
    for (std::size_t i = 0; i < common.size(); ++i) {
        for (std::size_t j = i + 1; j < common.size(); ++j) {
            if (pos_after[*common[i]] > pos_after[*common[j]]) {
                ++counts[*common[i]];
                ++counts[*common[j]];
            }
        }
    }
    return counts;
}

namespace {

const std::vector<CharacterId>& order_at(const Layout& layout, int t) {
    static const std::vector<CharacterId> empty;
    auto it = layout.orders.find(t);
    return it == layout.orders.end() ? empty : it->second;
}

}  // namespace

std::map<CharacterId, int> crossings_per_character(const StorylineInstance& instance,
                                                   const Layout& layout) {
    ValidationReport report = validate_layout(instance, layout);
    // Crossing totals are only meaningful on per-instant permutations of the
    // active sets; contiguity violations do not prevent counting.
    for (const Violation& v : report.violations) {
        if (v.code == "NOT_PERMUTATION" || v.code == "MISSING_INSTANT") {
            throw std::invalid_argument("invalid layout: " + v.code + " (" + v.detail + ")");
        }
    }
    std::map<CharacterId, int> totals;
    for (const CharacterId& c : instance.characters) totals[c] = 0;
    const int tau = horizon(instance);
    for (int t = 2; t <= tau; ++t) {
        for (const auto& [c, n] : strip_crossings(order_at(layout, t - 1), order_at(layout, t))) {
            totals[c] += n;
        }
    }
    return totals;
}

int local_crossing_number(const StorylineInstance& instance, const Layout& layout) {
    int lcn = 0;
    for (const auto& [c, n] : crossings_per_character(instance, layout)) lcn = std::max(lcn, n);
    return lcn;
}

bool meetings_contiguous_at(const StorylineInstance& instance, int t,
                            const std::vector<CharacterId>& order) {
    std::unordered_map<CharacterId, int> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    for (const Meeting& m : instance.meetings) {
        if (m.begin > t || m.end < t) continue;
        int lo = static_cast<int>(order.size());
        int hi = -1;
        for (const CharacterId& c : m.members) {
            auto it = pos.find(c);
            if (it == pos.end()) return false;
            lo = std::min(lo, it->second);
            hi = std::max(hi, it->second);
        }
        if (hi - lo + 1 != static_cast<int>(m.members.size())) return false;
    }
    return true;
}

ValidationReport validate_layout(const StorylineInstance& instance, const Layout& layout) {
    ValidationReport report;
    std::map<CharacterId, Lifespan> spans;
    try {
        spans = derive_lifespans(instance);
    } catch (const std::invalid_argument& e) {
        add(report, "INVALID_INSTANCE", e.what());
        return report;
    }
    const int tau = horizon(instance);

    for (const auto& [t, order] : layout.orders) {
        if ((t < 1 || t > tau) && !order.empty()) {
            add(report, "EXTRANEOUS_ORDER", "order given at out-of-range instant " + std::to_string(t));
        }
    }

    // Sweep active characters and meetings forward; scanning every meeting at
    // every instant would be quadratic for long instances.
    std::vector<std::vector<int>> meetings_starting(tau + 2);
    for (std::size_t i = 0; i < instance.meetings.size(); ++i) {
        const Meeting& m = instance.meetings[i];
        if (m.begin >= 1 && m.begin <= tau) meetings_starting[m.begin].push_back((int)i);
    }
    std::vector<std::vector<const CharacterId*>> chars_starting(tau + 2);
    for (const auto& [c, span] : spans) {
        if (span.first >= 1 && span.first <= tau) chars_starting[span.first].push_back(&c);
    }
    std::vector<const CharacterId*> active_chars;
    std::vector<int> active_meetings;
    bool structure_ok = true;

    for (int t = 1; t <= tau; ++t) {
        for (const CharacterId* c : chars_starting[t]) active_chars.push_back(c);
        std::erase_if(active_chars, [&](const CharacterId* c) { return spans.at(*c).last < t; });
        for (int m : meetings_starting[t]) active_meetings.push_back(m);
        std::erase_if(active_meetings, [&](int m) { return instance.meetings[m].end < t; });

        const std::vector<CharacterId>& order = order_at(layout, t);
        if (order.empty() && !active_chars.empty()) {
            add(report, "MISSING_INSTANT", "no order at instant " + std::to_string(t));
            structure_ok = false;
            continue;
        }
        std::vector<CharacterId> active;
        for (const CharacterId* c : active_chars) active.push_back(*c);
        std::sort(active.begin(), active.end());
        std::vector<CharacterId> sorted_order = order;
        std::sort(sorted_order.begin(), sorted_order.end());
        if (sorted_order != active) {
            add(report, "NOT_PERMUTATION",
                "order at instant " + std::to_string(t) + " is not a permutation of the active set");
            structure_ok = false;
            continue;
        }
        std::unordered_map<CharacterId, int> pos;
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
        for (int mi : active_meetings) {
            const Meeting& m = instance.meetings[mi];
            int lo = static_cast<int>(order.size()), hi = -1;
            for (const CharacterId& c : m.members) {
                lo = std::min(lo, pos.at(c));
                hi = std::max(hi, pos.at(c));
            }
            if (hi - lo + 1 != static_cast<int>(m.members.size())) {
                add(report, "CONTIGUITY",
                    "meeting beginning at " + std::to_string(m.begin) +
                        " is not contiguous at instant " + std::to_string(t));
            }
        }
    }
    if (!structure_ok || !report.ok()) return report;

    // Meeting protection: a strip (t-1, t) lying fully inside [b, e] may not
    // contain a crossing that involves a meeting member.
    active_meetings.clear();
    for (int t = 2; t <= tau; ++t) {
        for (int m : meetings_starting[t - 1]) active_meetings.push_back(m);
        std::erase_if(active_meetings, [&](int m) { return instance.meetings[m].end < t; });
        if (active_meetings.empty()) continue;
        auto counts = strip_crossings(order_at(layout, t - 1), order_at(layout, t));
        for (int mi : active_meetings) {
            for (const CharacterId& c : instance.meetings[mi].members) {
                auto it = counts.find(c);
                if (it != counts.end() && it->second > 0) {
                    add(report, "MEETING_CROSSED",
                        "member '" + c + "' crossed in strip (" + std::to_string(t - 1) + "," +
                            std::to_string(t) + ") during a meeting");
                }
            }
        }
    }
    return report;
}

ValidationReport validate_extension_problem(const ExtensionProblem& problem) {
    ValidationReport report;
    std::set<CharacterId> known(problem.full.characters.begin(), problem.full.characters.end());
    for (const CharacterId& c : problem.fixed_characters) {
        if (!known.count(c)) {
            add(report, "FIXED_NOT_SUBSET", "fixed character '" + c + "' not in the instance");
        }
    }
    if (problem.chi < 0) add(report, "NEGATIVE_CHI", "chi must be non-negative");
    ValidationReport inst = validate_instance(problem.full);
    report.violations.insert(report.violations.end(), inst.violations.begin(), inst.violations.end());
    if (!report.ok()) return report;

    StorylineInstance sub;
    try {
        sub = induced_sub_storyline(problem.full, problem.fixed_characters);
    } catch (const std::invalid_argument& e) {
        add(report, "INVALID_SUBSET", e.what());
        return report;
    }
    ValidationReport sub_report = validate_instance(sub, /*require_time_origin=*/false);
    report.violations.insert(report.violations.end(), sub_report.violations.begin(),
                             sub_report.violations.end());
    ValidationReport layout_report = validate_layout(sub, problem.fixed_layout);
    report.violations.insert(report.violations.end(), layout_report.violations.begin(),
                             layout_report.violations.end());
    if (!report.ok()) return report;

    if (local_crossing_number(sub, problem.fixed_layout) > problem.chi) {
        add(report, "CHI_EXCEEDED", "fixed layout already exceeds the crossing budget");
    }
    return report;
}

ProblemStats stats(const ExtensionProblem& problem) {
    ProblemStats s;
    s.n = static_cast<int>(problem.fixed_characters.size());
    s.k = static_cast<int>(problem.full.characters.size()) - s.n;
    s.tau = horizon(problem.full);

    std::set<CharacterId> fixed(problem.fixed_characters.begin(), problem.fixed_characters.end());
    // A meeting survives into the sub-storyline unchanged iff it contains no
    // new character; mu counts the remainder, i.e. |M \ M'|.
    for (const Meeting& m : problem.full.meetings) {
        bool has_new = std::any_of(m.members.begin(), m.members.end(),
                                   [&](const CharacterId& c) { return !fixed.count(c); });
        if (has_new) ++s.mu;
    }

    auto spans = derive_lifespans(problem.full);
    for (int t = 1; t <= s.tau; ++t) {
        int active = 0;
        for (const auto& [c, span] : spans) {
            if (span.contains(t)) ++active;
        }
        s.sigma = std::max(s.sigma, active);
    }
    return s;
}

Layout restrict_layout(const Layout& layout, const std::vector<CharacterId>& chars) {
    std::set<CharacterId> keep(chars.begin(), chars.end());
    Layout result;
    for (const auto& [t, order] : layout.orders) {
        std::vector<CharacterId> filtered;
        for (const CharacterId& c : order) {
            if (keep.count(c)) filtered.push_back(c);
        }
        if (!filtered.empty()) result.orders[t] = std::move(filtered);
    }
    return result;
}

std::vector<CharacterId> new_characters(const ExtensionProblem& problem) {
    std::set<CharacterId> fixed(problem.fixed_characters.begin(), problem.fixed_characters.end());
    std::vector<CharacterId> result;
    for (const CharacterId& c : problem.full.characters) {
        if (!fixed.count(c)) result.push_back(c);
    }
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace storyline
