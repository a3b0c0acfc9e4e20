#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "storyline/model.hpp"

using namespace storyline;
using namespace storyline::test;

TEST_CASE("lifespans from meetings") {
    auto inst = instance_of({meet({"a"}, 3, 5)});
    // The instance alone violates the time-origin convention, but lifespan
    // derivation itself is oblivious to it.
    auto spans = derive_lifespans(inst);
    CHECK(spans.at("a") == Lifespan{3, 5});

    inst = instance_of({meet({"a"}, 1, 1), meet({"a"}, 4, 6)});
    CHECK(derive_lifespans(inst).at("a") == Lifespan{1, 6});

    auto shifted = instance_of({meet({"a"}, 2, 3)});
    CHECK(validate_instance(shifted).has("TIME_ORIGIN"));

    StorylineInstance lonely;
    lonely.characters = {"a"};
    CHECK_THROWS_AS(derive_lifespans(lonely), std::invalid_argument);
}

TEST_CASE("active sets") {
    auto inst = instance_of({meet({"a"}, 1, 2), meet({"b"}, 2, 4), meet({"c"}, 1, 1)});
    CHECK(active_set(inst, 1) == std::vector<CharacterId>{"a", "c"});
    CHECK(active_set(inst, 2) == std::vector<CharacterId>{"a", "b"});
    CHECK(active_set(inst, 4) == std::vector<CharacterId>{"b"});
    CHECK_THROWS_AS(active_set(inst, 0), std::out_of_range);
    CHECK_THROWS_AS(active_set(inst, 5), std::out_of_range);

    // |active_set| never exceeds sigma by definition.
    int sigma = 0;
    for (int t = 1; t <= horizon(inst); ++t) {
        sigma = std::max(sigma, static_cast<int>(active_set(inst, t).size()));
    }
    CHECK(sigma == 2);
}

TEST_CASE("instance validation") {
    auto overlap = instance_of({meet({"a", "b"}, 1, 2), meet({"a", "c"}, 2, 3)});
    CHECK(validate_instance(overlap).has("MEETING_OVERLAP"));

    auto fine = instance_of({meet({"a", "b"}, 1, 1), meet({"a", "c"}, 2, 2)});
    CHECK(validate_instance(fine).ok());

    auto uncovered = fine;
    uncovered.characters.push_back("d");
    CHECK(validate_instance(uncovered).has("CHARACTER_NO_MEETING"));

    auto backwards = instance_of({meet({"a"}, 3, 1)});
    CHECK(validate_instance(backwards).has("MEETING_TIME_ORDER"));

    auto stranger = instance_of({meet({"a"}, 1, 1)});
    stranger.meetings.push_back(meet({"z"}, 1, 1));
    CHECK(validate_instance(stranger).has("UNKNOWN_CHARACTER"));
}

TEST_CASE("induced sub-storylines") {
    auto inst = instance_of({meet({"a", "n"}, 2, 2), meet({"a"}, 1, 1), meet({"n"}, 1, 1)});

    CHECK(induced_sub_storyline(inst, inst.characters) == inst);

    auto empty = induced_sub_storyline(inst, {});
    CHECK(empty.characters.empty());
    CHECK(empty.meetings.empty());

    auto just_a = induced_sub_storyline(inst, {"a"});
    REQUIRE(just_a.meetings.size() == 2);
    CHECK(just_a.meetings[0] == meet({"a"}, 2, 2));

    CHECK_THROWS_AS(induced_sub_storyline(inst, {"q"}), std::invalid_argument);

    // Idempotence.
    CHECK(induced_sub_storyline(just_a, just_a.characters) == just_a);

    // Losing every meeting is an error, not a silent drop.
    auto pair_only = instance_of({meet({"a", "b"}, 1, 1)});
    CHECK_NOTHROW(induced_sub_storyline(pair_only, {"b"}));
}

TEST_CASE("strip crossings") {
    auto c = strip_crossings({"a", "b"}, {"b", "a"});
    CHECK(c == std::map<CharacterId, int>{{"a", 1}, {"b", 1}});

    c = strip_crossings({"a", "b", "c"}, {"c", "b", "a"});
    CHECK(c == std::map<CharacterId, int>{{"a", 2}, {"b", 2}, {"c", 2}});

    c = strip_crossings({"a", "x"}, {"a", "y"});
    CHECK(c == std::map<CharacterId, int>{{"a", 0}});

    CHECK_THROWS_AS(strip_crossings({"a", "a"}, {"a"}), std::invalid_argument);
}

TEST_CASE("strip crossing properties on random permutations") {
    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        int n = std::uniform_int_distribution<int>(0, 8)(rng);
        std::vector<CharacterId> before, after;
        for (int i = 0; i < n; ++i) before.push_back(std::string(1, char('a' + i)));
        after = before;
        std::shuffle(before.begin(), before.end(), rng);
        std::shuffle(after.begin(), after.end(), rng);

        auto forward = strip_crossings(before, after);
        auto backward = strip_crossings(after, before);
        CHECK(forward == backward);  // symmetry

        int sum = 0;
        for (const auto& [c, v] : forward) sum += v;
        CHECK(sum % 2 == 0);  // each crossing counted twice

        // Independent pairwise count.
        std::map<CharacterId, int> naive;
        auto pos = [&](const std::vector<CharacterId>& order, const CharacterId& c) {
            return static_cast<int>(std::find(order.begin(), order.end(), c) - order.begin());
        };
        for (int i = 0; i < n; ++i) naive[before[i]] = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                int d1 = pos(before, before[i]) - pos(before, before[j]);
                int d2 = pos(after, before[i]) - pos(after, before[j]);
                if ((d1 < 0) != (d2 < 0)) {
                    ++naive[before[i]];
                    ++naive[before[j]];
                }
            }
        }
        CHECK(forward == naive);
    }
}

TEST_CASE("crossing totals and local crossing number") {
    auto inst = instance_of({meet({"a"}, 1, 3), meet({"b"}, 1, 3)});
    auto same = layout_of({{"a", "b"}, {"a", "b"}, {"a", "b"}});
    CHECK(local_crossing_number(inst, same) == 0);

    auto wiggle = layout_of({{"a", "b"}, {"b", "a"}, {"a", "b"}});
    auto totals = crossings_per_character(inst, wiggle);
    CHECK(totals == std::map<CharacterId, int>{{"a", 2}, {"b", 2}});
    CHECK(local_crossing_number(inst, wiggle) == 2);

    Layout missing = same;
    missing.orders.erase(2);
    CHECK_THROWS_AS(crossings_per_character(inst, missing), std::invalid_argument);
}

TEST_CASE("time reversal leaves crossing totals unchanged") {
    auto inst = instance_of({meet({"a"}, 1, 4), meet({"b"}, 1, 4), meet({"c"}, 2, 3)});
    auto layout = layout_of({{"a", "b"}, {"b", "c", "a"}, {"c", "a", "b"}, {"a", "b"}});
    const int tau = horizon(inst);

    StorylineInstance reversed = inst;
    for (Meeting& m : reversed.meetings) {
        int b = tau + 1 - m.end, e = tau + 1 - m.begin;
        m.begin = b;
        m.end = e;
    }
    Layout mirrored;
    for (const auto& [t, order] : layout.orders) mirrored.orders[tau + 1 - t] = order;

    CHECK(crossings_per_character(inst, layout) == crossings_per_character(reversed, mirrored));
}

TEST_CASE("layout validation") {
    auto inst = instance_of({meet({"a", "c"}, 2, 2), meet({"a"}, 1, 1), meet({"b"}, 1, 1),
                             meet({"b"}, 2, 2), meet({"c"}, 1, 1)});
    auto split = layout_of({{"a", "b", "c"}, {"a", "b", "c"}});
    CHECK(validate_layout(inst, split).has("CONTIGUITY"));

    auto fixed = layout_of({{"a", "b", "c"}, {"a", "c", "b"}});
    CHECK(validate_layout(inst, fixed).ok());

    // Property (ii): a member crossed strictly inside the meeting interval.
    auto guarded = instance_of({meet({"a", "b"}, 1, 3), meet({"x"}, 1, 3)});
    auto crossing = layout_of({{"x", "a", "b"}, {"a", "b", "x"}, {"a", "b", "x"}});
    CHECK(validate_layout(guarded, crossing).has("MEETING_CROSSED"));

    // Zero-duration meetings only demand contiguity at their instant.
    auto instant = instance_of({meet({"a", "b"}, 2, 2), meet({"a"}, 1, 1), meet({"b"}, 1, 1),
                                meet({"x"}, 1, 1), meet({"x"}, 2, 2)});
    auto passing = layout_of({{"a", "x", "b"}, {"a", "b", "x"}});
    CHECK(validate_layout(instant, passing).ok());

    auto bad_perm = layout_of({{"a", "b"}, {"a", "x", "b"}});
    CHECK(validate_layout(guarded, bad_perm).has("NOT_PERMUTATION"));
}

TEST_CASE("extension problem validation") {
    ExtensionProblem problem;
    problem.full = instance_of({meet({"a", "b"}, 1, 1), meet({"a", "b"}, 2, 2)});
    problem.chi = 0;
    problem.fixed_characters = {"a", "b"};
    problem.fixed_layout = layout_of({{"a", "b"}, {"b", "a"}});
    // The fixed pair crosses between the meetings; lcn is 1.
    CHECK(validate_extension_problem(problem).has("CHI_EXCEEDED"));
    problem.chi = 1;
    CHECK(validate_extension_problem(problem).ok());

    ExtensionProblem incomplete = problem;
    incomplete.fixed_layout.orders[2] = {"a"};
    CHECK_FALSE(validate_extension_problem(incomplete).ok());

    ExtensionProblem foreign = problem;
    foreign.fixed_characters.push_back("q");
    CHECK(validate_extension_problem(foreign).has("FIXED_NOT_SUBSET"));
}

TEST_CASE("problem statistics") {
    ExtensionProblem problem;
    problem.full = instance_of({meet({"a", "b"}, 1, 1), meet({"n"}, 1, 1), meet({"a", "n"}, 2, 2),
                                meet({"b"}, 2, 2)});
    problem.chi = 1;
    problem.fixed_characters = {"a", "b"};
    problem.fixed_layout = layout_of({{"a", "b"}, {"a", "b"}});
    ProblemStats s = stats(problem);
    CHECK(s.n == 2);
    CHECK(s.k == 1);
    CHECK(s.tau == 2);
    CHECK(s.mu == 2);  // the meetings touching n
    CHECK(s.sigma == 3);

    ExtensionProblem everything = problem;
    everything.fixed_characters = {"a", "b", "n"};
    everything.fixed_layout = layout_of({{"a", "b", "n"}, {"n", "a", "b"}});
    ProblemStats s2 = stats(everything);
    CHECK(s2.k == 0);
    CHECK(s2.mu == 0);
}

TEST_CASE("layout restriction and new characters") {
    ExtensionProblem problem;
    problem.full = instance_of({meet({"a", "n"}, 1, 1), meet({"a"}, 2, 2), meet({"n"}, 2, 2)});
    problem.fixed_characters = {"a"};
    CHECK(new_characters(problem) == std::vector<CharacterId>{"n"});

    auto full = layout_of({{"n", "a"}, {"a", "n"}});
    auto restricted = restrict_layout(full, {"a"});
    CHECK(restricted.orders.at(1) == std::vector<CharacterId>{"a"});
    CHECK(restricted.orders.at(2) == std::vector<CharacterId>{"a"});
}
