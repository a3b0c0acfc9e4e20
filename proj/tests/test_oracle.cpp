#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "storyline/oracle.hpp"

using namespace storyline;
using namespace storyline::test;

namespace {

// Second, independent EUBP strategy: try every assignment of items to bins.
bool eubp_by_coloring(const EubpInstance& e) {
    const int n = static_cast<int>(e.items.size());
    std::vector<int> color(n, 0);
    for (;;) {
        std::vector<int> load(e.bins, 0);
        for (int i = 0; i < n; ++i) load[color[i]] += e.items[i];
        if (std::all_of(load.begin(), load.end(), [&](int l) { return l == e.capacity; })) {
            return true;
        }
        int i = 0;
        while (i < n && ++color[i] == e.bins) color[i++] = 0;
        if (i == n) return false;
    }
}

}  // namespace

TEST_CASE("oracle on k=0 problems") {
    ExtensionProblem problem;
    problem.full = instance_of({meet({"a", "b"}, 1, 1), meet({"a", "b"}, 2, 2)});
    problem.chi = 1;
    problem.fixed_characters = {"a", "b"};
    problem.fixed_layout = layout_of({{"a", "b"}, {"b", "a"}});
    auto result = brute_force_solve(problem);
    CHECK(result.accepted);
    CHECK(result.min_lcn == 1);  // exactly the fixed layout's lcn
    CHECK(*result.witness == problem.fixed_layout);
}

TEST_CASE("oracle finds the forced minimum") {
    ExtensionProblem problem;
    problem.full = instance_of({meet({"a", "b"}, 1, 1), meet({"a", "b"}, 3, 3),
                                meet({"n", "c"}, 1, 1), meet({"n", "d"}, 3, 3)});
    problem.chi = 3;
    problem.fixed_characters = {"a", "b", "c", "d"};
    Layout fixed;
    fixed.orders[1] = {"c", "a", "b"};
    fixed.orders[2] = {"a", "b"};
    fixed.orders[3] = {"a", "b", "d"};
    problem.fixed_layout = fixed;

    auto result = brute_force_solve(problem);
    CHECK(result.min_lcn == 2);
    CHECK(result.accepted);
    CHECK(validate_layout(problem.full, *result.witness).ok());
    CHECK(local_crossing_number(problem.full, *result.witness) == 2);
}

TEST_CASE("oracle reports when no valid sequence exists at all") {
    // n starts above the protected pair a,b and must end below it, but the
    // pair's meeting spans the whole horizon: every descent would cross a
    // protected member, so no chi helps.
    ExtensionProblem problem;
    problem.full = instance_of({meet({"a", "b"}, 1, 3), meet({"n", "c"}, 1, 1),
                                meet({"n", "d"}, 3, 3)});
    problem.chi = 5;
    problem.fixed_characters = {"a", "b", "c", "d"};
    Layout fixed;
    fixed.orders[1] = {"c", "a", "b"};
    fixed.orders[2] = {"a", "b"};
    fixed.orders[3] = {"a", "b", "d"};
    problem.fixed_layout = fixed;
    auto result = brute_force_solve(problem);
    CHECK_FALSE(result.accepted);
    CHECK_FALSE(result.min_lcn.has_value());
}

TEST_CASE("oracle guard rails") {
    std::vector<Meeting> meetings;
    for (int i = 0; i < 7; ++i) {
        meetings.push_back(meet({"c" + std::to_string(i)}, 1, 1));
    }
    ExtensionProblem big;
    big.full = instance_of(meetings);
    big.chi = 0;
    CHECK_THROWS_AS(brute_force_solve(big), OracleSizeError);

    ExtensionProblem deep;
    deep.full = instance_of({meet({"a"}, 1, 1), meet({"a"}, 7, 7)});
    deep.chi = 0;
    CHECK_THROWS_AS(brute_force_solve(deep), OracleSizeError);

    EubpInstance wide;
    wide.items.assign(13, 1);
    wide.bins = 13;
    wide.capacity = 1;
    CHECK_THROWS_AS(brute_force_eubp(wide), OracleSizeError);
}

TEST_CASE("brute force EUBP") {
    EubpInstance sample{{2, 3, 5, 4}, 2, 7};
    auto result = brute_force_eubp(sample);
    REQUIRE(result.accepted);
    REQUIRE(result.assignment.size() == 2);
    for (const auto& bin : result.assignment) {
        int sum = 0;
        for (int idx : bin) sum += sample.items[idx];
        CHECK(sum == 7);
    }

    CHECK_FALSE(brute_force_eubp({{3, 1}, 2, 2}).accepted);   // oversize item
    CHECK_FALSE(brute_force_eubp({{1, 1, 1}, 2, 1}).accepted);  // sum mismatch
    CHECK(brute_force_eubp({{1}, 1, 1}).accepted);
}

TEST_CASE("EUBP strategies agree") {
    std::mt19937 rng(3);
    for (int round = 0; round < 300; ++round) {
        EubpInstance e;
        int n = std::uniform_int_distribution<int>(1, 8)(rng);
        for (int i = 0; i < n; ++i) {
            e.items.push_back(std::uniform_int_distribution<int>(1, 4)(rng));
        }
        e.bins = std::uniform_int_distribution<int>(1, 3)(rng);
        int sum = std::accumulate(e.items.begin(), e.items.end(), 0);
        if (sum % e.bins == 0) {
            e.capacity = sum / e.bins;
        } else {
            e.capacity = std::uniform_int_distribution<int>(1, 6)(rng);
        }
        CHECK(brute_force_eubp(e).accepted == eubp_by_coloring(e));
    }
}

TEST_CASE("oracle minimum is monotone under added meetings") {
    ExtensionProblem base;
    base.full = instance_of({meet({"a"}, 1, 1), meet({"a"}, 3, 3), meet({"b"}, 1, 1),
                             meet({"b"}, 3, 3), meet({"n", "a"}, 2, 2)});
    base.chi = 3;
    base.fixed_characters = {"a", "b"};
    base.fixed_layout = layout_of({{"a", "b"}, {"b", "a"}, {"a", "b"}});

    auto loose = brute_force_solve(base);
    REQUIRE(loose.min_lcn.has_value());

    ExtensionProblem tight = base;
    tight.full.meetings.push_back(meet({"n"}, 3, 3));
    std::sort(tight.full.meetings.begin(), tight.full.meetings.end(),
              [](const Meeting& x, const Meeting& y) { return x.begin < y.begin; });
    auto strict = brute_force_solve(tight);
    if (strict.min_lcn) CHECK(*strict.min_lcn >= *loose.min_lcn);
}
