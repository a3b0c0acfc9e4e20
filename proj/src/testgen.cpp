#include "storyline/testgen.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace storyline::testgen {

namespace {

// Backtracking search for a valid layout of `instance` with lcn <= chi,
// trying instant orders in a randomized sequence.
bool find_layout(const StorylineInstance& instance, int chi, std::mt19937& rng, int t, int tau,
                 const std::map<CharacterId, Lifespan>& spans, Layout& layout,
                 std::map<CharacterId, int>& counts) {
    if (t > tau) return true;
    std::vector<CharacterId> active;
    for (const auto& [c, span] : spans) {
        if (span.contains(t)) active.push_back(c);
    }
    if (active.empty()) return find_layout(instance, chi, rng, t + 1, tau, spans, layout, counts);

    std::vector<std::vector<CharacterId>> candidates;
    std::sort(active.begin(), active.end());
    do {
        candidates.push_back(active);
    } while (std::next_permutation(active.begin(), active.end()));
    std::shuffle(candidates.begin(), candidates.end(), rng);

    auto prev = layout.orders.find(t - 1);
    for (const auto& order : candidates) {
        if (!meetings_contiguous_at(instance, t, order)) continue;
        std::map<CharacterId, int> delta;
        if (prev != layout.orders.end()) {
            delta = strip_crossings(prev->second, order);
            bool blocked = false;
            for (const Meeting& m : instance.meetings) {
                if (m.begin <= t - 1 && t <= m.end) {
                    for (const CharacterId& c : m.members) {
                        auto it = delta.find(c);
                        if (it != delta.end() && it->second > 0) blocked = true;
                    }
                }
            }
            if (blocked) continue;
        }
        bool within = true;
        for (const auto& [c, n] : delta) {
            if (counts[c] + n > chi) within = false;
        }
        if (!within) continue;
        for (const auto& [c, n] : delta) counts[c] += n;
        layout.orders[t] = order;
        if (find_layout(instance, chi, rng, t + 1, tau, spans, layout, counts)) return true;
        layout.orders.erase(t);
        for (const auto& [c, n] : delta) counts[c] -= n;
    }
    return false;
}

}  // namespace

std::optional<ExtensionProblem> random_problem(std::mt19937& rng, const GeneratorLimits& limits) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    const int total = pick(1, limits.max_characters);
    const int tau = pick(1, limits.max_horizon);
    const int chi = pick(0, limits.max_chi);
    const int k = pick(0, std::min(limits.max_new, total));

    std::vector<CharacterId> chars;
    for (int i = 1; i <= total; ++i) chars.push_back("c" + std::to_string(i));

    StorylineInstance instance;
    instance.characters = chars;

    auto overlaps = [&](const Meeting& candidate) {
        for (const Meeting& m : instance.meetings) {
            if (candidate.begin > m.end || m.begin > candidate.end) continue;
            for (const CharacterId& c : candidate.members) {
                if (std::find(m.members.begin(), m.members.end(), c) != m.members.end()) {
                    return true;
                }
            }
        }
        return false;
    };

    const int attempts = pick(total, total + 3);
    for (int i = 0; i < attempts; ++i) {
        Meeting m;
        m.begin = pick(1, tau);
        m.end = std::min(tau, m.begin + pick(0, 1));
        std::vector<CharacterId> pool = chars;
        std::shuffle(pool.begin(), pool.end(), rng);
        int size = pick(1, std::max(1, static_cast<int>(pool.size()) / 2 + 1));
        m.members.assign(pool.begin(), pool.begin() + size);
        std::sort(m.members.begin(), m.members.end());
        if (!overlaps(m)) instance.meetings.push_back(std::move(m));
    }
    // Every character needs at least one meeting; give strays a solo one.
    for (const CharacterId& c : chars) {
        bool covered = std::any_of(instance.meetings.begin(), instance.meetings.end(),
                                   [&](const Meeting& m) {
                                       return std::find(m.members.begin(), m.members.end(), c) !=
                                              m.members.end();
                                   });
        if (!covered) {
            Meeting solo{{c}, 0, 0};
            solo.begin = solo.end = pick(1, tau);
            if (!overlaps(solo)) instance.meetings.push_back(std::move(solo));
        }
    }

    int min_begin = tau + 1;
    for (const Meeting& m : instance.meetings) min_begin = std::min(min_begin, m.begin);
    for (Meeting& m : instance.meetings) {
        m.begin -= min_begin - 1;
        m.end -= min_begin - 1;
    }
    if (!validate_instance(instance).ok()) return std::nullopt;

    std::shuffle(chars.begin(), chars.end(), rng);
    ExtensionProblem problem;
    problem.full = instance;
    problem.chi = chi;
    problem.fixed_characters.assign(chars.begin() + k, chars.end());
    std::sort(problem.fixed_characters.begin(), problem.fixed_characters.end());

    StorylineInstance sub;
    try {
        sub = induced_sub_storyline(instance, problem.fixed_characters);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    auto spans = derive_lifespans(sub);
    std::map<CharacterId, int> counts;
    Layout layout;
    if (!sub.characters.empty() &&
        !find_layout(sub, chi, rng, 1, horizon(sub), spans, layout, counts)) {
        return std::nullopt;
    }
    problem.fixed_layout = layout;
    if (!validate_extension_problem(problem).ok()) return std::nullopt;
    return problem;
}

ExtensionProblem random_problem_retrying(std::mt19937& rng, const GeneratorLimits& limits) {
    for (;;) {
        if (auto p = random_problem(rng, limits)) return *p;
    }
}

}  // namespace storyline::testgen
