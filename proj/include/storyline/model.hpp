#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace storyline {

using CharacterId = std::string;

// A meeting is a set of characters together with a closed time interval
// [begin, end]. Members are kept sorted and unique.
struct Meeting {
    std::vector<CharacterId> members;
    int begin = 0;
    int end = 0;

    bool operator==(const Meeting&) const = default;
};

struct StorylineInstance {
    std::vector<CharacterId> characters;  // sorted, unique
    std::vector<Meeting> meetings;

    bool operator==(const StorylineInstance&) const = default;
};

// Interval between a character's first meeting begin and last meeting end.
struct Lifespan {
    int first = 0;
    int last = 0;

    bool contains(int t) const { return first <= t && t <= last; }
    bool operator==(const Lifespan&) const = default;
};

// Vertical character orders per time instant, position 0 is topmost.
// Instants with no active character may be absent.
struct Layout {
    std::map<int, std::vector<CharacterId>> orders;

    bool operator==(const Layout&) const = default;
};

// An extension problem: the full instance, a crossing budget, the fixed
// character subset and the fixed layout of the induced sub-storyline.
struct ExtensionProblem {
    StorylineInstance full;
    int chi = 0;
    std::vector<CharacterId> fixed_characters;  // sorted, unique
    Layout fixed_layout;

    bool operator==(const ExtensionProblem&) const = default;
};

struct Violation {
    std::string code;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(const std::string& code) const;
    std::string to_string() const;
};

struct ProblemStats {
    int n = 0;      // fixed characters
    int k = 0;      // new characters
    int tau = 0;    // time instants
    int mu = 0;     // meetings not inherited unchanged by the sub-storyline
    int sigma = 0;  // max active characters at any instant
};

// Largest lifespan end over all characters (0 for an empty instance).
int horizon(const StorylineInstance& instance);

// Throws std::invalid_argument if some character participates in no meeting.
std::map<CharacterId, Lifespan> derive_lifespans(const StorylineInstance& instance);

// Characters whose lifespan contains t, sorted by id.
// Throws std::out_of_range unless 1 <= t <= horizon.
std::vector<CharacterId> active_set(const StorylineInstance& instance, int t);

// Structural checks on the instance. With require_time_origin, the minimum
// lifespan start must be exactly 1; induced sub-storylines may legitimately
// start later, so callers validating those pass false.
ValidationReport validate_instance(const StorylineInstance& instance,
                                   bool require_time_origin = true);

// Restriction to `subset`: every meeting intersecting the subset survives
// with its members intersected. Throws std::invalid_argument if the subset
// is not contained in the instance's characters or if a subset character
// would be left without any meeting.
StorylineInstance induced_sub_storyline(const StorylineInstance& instance,
                                        const std::vector<CharacterId>& subset);

// Per-character crossing counts between two consecutive vertical orders.
// Only characters present in both orders get an entry; a pair crosses iff
// its relative order differs. Throws std::invalid_argument on duplicates.
std::map<CharacterId, int> strip_crossings(const std::vector<CharacterId>& before,
                                           const std::vector<CharacterId>& after);

// Total crossings per character over all strips of the layout.
// Throws std::invalid_argument if the layout does not cover the instance.
std::map<CharacterId, int> crossings_per_character(const StorylineInstance& instance,
                                                   const Layout& layout);

// Maximum entry of crossings_per_character (0 if there are no characters).
int local_crossing_number(const StorylineInstance& instance, const Layout& layout);

// Checks that every order is a permutation of the active set, that meeting
// members are contiguous while the meeting is active, and that no strip
// fully inside a meeting's interval has a crossing involving a member.
ValidationReport validate_layout(const StorylineInstance& instance, const Layout& layout);

ValidationReport validate_extension_problem(const ExtensionProblem& problem);

ProblemStats stats(const ExtensionProblem& problem);

// Orders filtered to the given characters; instants left empty are dropped.
Layout restrict_layout(const Layout& layout, const std::vector<CharacterId>& chars);

// C \ C', sorted.
std::vector<CharacterId> new_characters(const ExtensionProblem& problem);

// True if all members of every meeting active at the instant occupy
// consecutive positions in `order`.
bool meetings_contiguous_at(const StorylineInstance& instance, int t,
                            const std::vector<CharacterId>& order);

}  // namespace storyline
