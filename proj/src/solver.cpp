#include "storyline/solver.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "storyline/detail/orders.hpp"

namespace storyline {

namespace {

std::vector<CharacterId> fixed_order_at(const ExtensionProblem& problem, int t) {
    auto it = problem.fixed_layout.orders.find(t);
    if (it == problem.fixed_layout.orders.end()) return {};
    return it->second;
}

Placement placement_from_order(const std::vector<CharacterId>& rho,
                               const std::set<CharacterId>& fixed) {
    Placement p;
    int slot = 0;
    for (const CharacterId& c : rho) {
        if (fixed.count(c)) {
            ++slot;
        } else {
            p.slot_of[c] = slot;
            p.intra_order.push_back(c);
        }
    }
    return p;
}

}  // namespace

std::vector<CharacterId> placement_order(const std::vector<CharacterId>& fixed_order,
                                         const Placement& placement) {
    // Bucket the new characters per slot, then splice the buckets between
    // the fixed characters.
    std::vector<std::vector<CharacterId>> buckets(fixed_order.size() + 1);
    for (const CharacterId& c : placement.intra_order) {
        auto it = placement.slot_of.find(c);
        if (it == placement.slot_of.end() || it->second < 0 ||
            it->second > static_cast<int>(fixed_order.size())) {
            throw std::invalid_argument("placement slot for '" + c + "' is inconsistent");
        }
        buckets[it->second].push_back(c);
    }
    std::vector<CharacterId> rho;
    for (std::size_t i = 0; i <= fixed_order.size(); ++i) {
        for (const CharacterId& c : buckets[i]) rho.push_back(c);
        if (i < fixed_order.size()) rho.push_back(fixed_order[i]);
    }
    return rho;
}

std::vector<Placement> enumerate_placements(const ExtensionProblem& problem, int t) {
    std::set<CharacterId> fixed(problem.fixed_characters.begin(), problem.fixed_characters.end());
    std::vector<CharacterId> active = active_set(problem.full, t);
    std::vector<CharacterId> newcomers;
    for (const CharacterId& c : active) {
        if (!fixed.count(c)) newcomers.push_back(c);
    }
    std::vector<CharacterId> pi = fixed_order_at(problem, t);

    std::vector<Placement> placements;
    for (const auto& rho : detail::extend_order(pi, newcomers)) {
        if (meetings_contiguous_at(problem.full, t, rho)) {
            placements.push_back(placement_from_order(rho, fixed));
        }
    }
    return placements;  // extend_order output is already sorted by rho
}

std::optional<DPState> transition(const ExtensionProblem& problem, const DPState& prev,
                                  const Placement& placement, int t) {
    if (t != prev.time + 1) {
        throw std::invalid_argument("transition target must be the next instant");
    }
    std::vector<CharacterId> rho_prev =
        placement_order(fixed_order_at(problem, t - 1), prev.placement);
    std::vector<CharacterId> rho = placement_order(fixed_order_at(problem, t), placement);
    auto counts = strip_crossings(rho_prev, rho);

    for (const Meeting& m : problem.full.meetings) {
        if (m.begin <= t - 1 && t <= m.end) {
            for (const CharacterId& c : m.members) {
                auto it = counts.find(c);
                if (it != counts.end() && it->second > 0) return std::nullopt;
            }
        }
    }

    DPState next;
    next.time = t;
    next.placement = placement;
    next.predecessor = std::make_shared<DPState>(prev);
    for (const CharacterId& c : rho) {
        auto it = counts.find(c);
        int budget = 0;
        if (prev.budgets.count(c)) {
            budget = prev.budgets.at(c) + (it == counts.end() ? 0 : it->second);
        }
        if (budget > problem.chi) return std::nullopt;
        next.budgets[c] = budget;
    }
    return next;
}

std::vector<DPState> dominance_prune(std::vector<DPState> layer) {
    std::vector<bool> dead(layer.size(), false);
    for (std::size_t i = 0; i < layer.size(); ++i) {
        for (std::size_t j = 0; j < layer.size(); ++j) {
            if (i == j || dead[i] || dead[j]) continue;
            if (layer[i].placement == layer[j].placement &&
                layer[i].budgets != layer[j].budgets) {
                bool dominates = true;
                for (const auto& [c, b] : layer[i].budgets) {
                    if (b > layer[j].budgets.at(c)) {
                        dominates = false;
                        break;
                    }
                }
                if (dominates) dead[j] = true;
            }
        }
    }
    std::vector<DPState> kept;
    for (std::size_t i = 0; i < layer.size(); ++i) {
        if (!dead[i]) kept.push_back(std::move(layer[i]));
    }
    return kept;
}

// ---------------------------------------------------------------------------
// Layer-by-layer engine. Characters are interned (sorted ids, so index order
// equals id order); states live in a pool so witness chains of arbitrary
// length tear down without recursion.

namespace {

struct Node {
    int time = 0;
    std::vector<int> rho;
    const Node* parent = nullptr;
};

using Budgets = std::vector<std::int32_t>;
using LayerKey = std::pair<int, Budgets>;  // (placement index, budgets in rho order)

struct TransEdge {
    bool computed = false;
    bool valid = false;
    std::vector<std::int32_t> cr;  // per position of the target rho
    std::vector<int> src;          // position in source rho, -1 if starting at t
};

class Engine {
public:
    Engine(const ExtensionProblem& problem, const SolveOptions& options)
        : prob_(problem), opts_(options), chi_(problem.chi) {
        ids_ = prob_.full.characters;
        std::sort(ids_.begin(), ids_.end());
        for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = static_cast<int>(i);
        fixed_.assign(ids_.size(), false);
        for (const CharacterId& c : prob_.fixed_characters) fixed_[index_.at(c)] = true;

        tau_ = horizon(prob_.full);
        auto spans = derive_lifespans(prob_.full);
        span_.resize(ids_.size());
        for (const auto& [c, s] : spans) span_[index_.at(c)] = s;

        starting_at_.assign(tau_ + 2, {});
        for (std::size_t i = 0; i < ids_.size(); ++i) starting_at_[span_[i].first].push_back((int)i);

        meetings_.reserve(prob_.full.meetings.size());
        meetings_starting_at_.assign(tau_ + 2, {});
        for (const Meeting& m : prob_.full.meetings) {
            MeetingIdx mi;
            mi.begin = m.begin;
            mi.end = m.end;
            for (const CharacterId& c : m.members) mi.members.push_back(index_.at(c));
            meetings_starting_at_[m.begin].push_back(static_cast<int>(meetings_.size()));
            meetings_.push_back(std::move(mi));
        }

        build_fixed_orders_and_suffix();
    }

    SolveResult run() {
        SolveResult result;
        std::map<LayerKey, Node*> layer;
        std::vector<std::vector<int>> placements;
        std::vector<std::vector<int>> prev_placements;

        std::vector<int> active;
        std::vector<int> active_meetings;

        for (int t = 1; t <= tau_; ++t) {
            // Sweep the active character set and meeting set forward.
            for (int c : starting_at_[t]) active.push_back(c);
            std::erase_if(active, [&](int c) { return span_[c].last < t; });
            std::sort(active.begin(), active.end());
            for (int m : meetings_starting_at_[t]) active_meetings.push_back(m);
            std::erase_if(active_meetings, [&](int m) { return meetings_[m].end < t; });

            prev_placements = std::move(placements);
            placements = enumerate_layer_placements(t, active, active_meetings);
            if (placements.empty()) return result;  // no feasible order at t

            std::map<LayerKey, Node*> next;
            if (t == 1) {
                for (int p = 0; p < static_cast<int>(placements.size()); ++p) {
                    Budgets zero(placements[p].size(), 0);
                    if (opts_.suffix_prune && !suffix_ok(t, placements[p], zero)) continue;
                    insert_state(next, t, p, placements[p], std::move(zero), nullptr, result);
                }
            } else {
                expand(t, layer, prev_placements, placements, active_meetings, next, result);
            }
            if (opts_.dominance_prune) prune_layer(next);
            layer = std::move(next);
            if (layer.empty()) return result;
        }

        if (tau_ == 0) {
            result.accepted = true;  // no time instants, nothing to draw
            result.witness = Layout{};
            return result;
        }
        result.accepted = true;
        result.witness = reconstruct(layer.begin()->second);
        return result;
    }

private:
    struct MeetingIdx {
        std::vector<int> members;
        int begin = 0;
        int end = 0;
    };

    void build_fixed_orders_and_suffix() {
        pi_.assign(tau_ + 2, {});
        for (const auto& [t, order] : prob_.fixed_layout.orders) {
            if (t < 1 || t > tau_) continue;
            for (const CharacterId& c : order) pi_[t].push_back(index_.at(c));
        }
        // Crossings still forced by the fixed layout strictly after time t.
        suffix_.assign(tau_ + 2, std::vector<std::int32_t>(ids_.size(), 0));
        for (int t = tau_ - 1; t >= 1; --t) {
            suffix_[t] = suffix_[t + 1];
            std::vector<int> pos(ids_.size(), -1);
            for (std::size_t i = 0; i < pi_[t + 1].size(); ++i) pos[pi_[t + 1][i]] = (int)i;
            const auto& before = pi_[t];
            for (std::size_t i = 0; i < before.size(); ++i) {
                if (pos[before[i]] < 0) continue;
                for (std::size_t j = i + 1; j < before.size(); ++j) {
                    if (pos[before[j]] < 0) continue;
                    if (pos[before[i]] > pos[before[j]]) {
                        ++suffix_[t][before[i]];
                        ++suffix_[t][before[j]];
                    }
                }
            }
        }
    }

    std::vector<std::vector<int>> enumerate_layer_placements(int t, const std::vector<int>& active,
                                                             const std::vector<int>& active_meetings) {
        std::vector<int> newcomers;
        for (int c : active) {
            if (!fixed_[c]) newcomers.push_back(c);
        }
        std::vector<std::vector<int>> candidates = detail::extend_order(pi_[t], newcomers);
        std::vector<std::vector<int>> kept;
        std::vector<int> pos(ids_.size(), -1);
        for (auto& rho : candidates) {
            for (std::size_t i = 0; i < rho.size(); ++i) pos[rho[i]] = static_cast<int>(i);
            bool ok = true;
            for (int m : active_meetings) {
                int lo = static_cast<int>(rho.size()), hi = -1;
                for (int c : meetings_[m].members) {
                    lo = std::min(lo, pos[c]);
                    hi = std::max(hi, pos[c]);
                }
                if (hi - lo + 1 != static_cast<int>(meetings_[m].members.size())) {
                    ok = false;
                    break;
                }
            }
            for (int c : rho) pos[c] = -1;
            if (ok) kept.push_back(std::move(rho));
        }
        return kept;
    }

    bool suffix_ok(int t, const std::vector<int>& rho, const Budgets& budgets) const {
        for (std::size_t i = 0; i < rho.size(); ++i) {
            if (budgets[i] + suffix_[t][rho[i]] > chi_) return false;
        }
        return true;
    }

    void insert_state(std::map<LayerKey, Node*>& layer, int t, int p, const std::vector<int>& rho,
                      Budgets budgets, const Node* parent, SolveResult& result) {
        LayerKey key{p, std::move(budgets)};
        auto it = layer.find(key);
        if (it != layer.end()) return;  // canonical first insertion wins
        pool_.push_back(Node{t, rho, parent});
        layer.emplace(std::move(key), &pool_.back());
        ++result.states_stored;
    }

    void expand(int t, const std::map<LayerKey, Node*>& layer,
                const std::vector<std::vector<int>>& prev_placements,
                const std::vector<std::vector<int>>& placements,
                const std::vector<int>& active_meetings, std::map<LayerKey, Node*>& next,
                SolveResult& result) {
        // Characters protected in the strip (t-1, t): members of meetings
        // spanning both endpoints.
        std::vector<char> protected_char(ids_.size(), 0);
        for (int m : active_meetings) {
            if (meetings_[m].begin <= t - 1) {
                for (int c : meetings_[m].members) protected_char[c] = 1;
            }
        }

        std::unordered_map<int, std::vector<TransEdge>> cache;
        std::vector<int> pos_prev(ids_.size(), -1);

        for (const auto& [key, node] : layer) {
            const int pp = key.first;
            auto& row = cache[pp];
            if (row.empty()) row.resize(placements.size());
            const auto& rho_prev = prev_placements[pp];

            for (int cp = 0; cp < static_cast<int>(placements.size()); ++cp) {
                TransEdge& edge = row[cp];
                if (!edge.computed) {
                    compute_edge(rho_prev, placements[cp], protected_char, pos_prev, edge);
                }
                ++result.transitions_tried;
                if (!edge.valid) continue;

                const auto& rho = placements[cp];
                Budgets budgets(rho.size());
                bool ok = true;
                for (std::size_t i = 0; i < rho.size(); ++i) {
                    std::int32_t b = edge.src[i] >= 0 ? key.second[edge.src[i]] + edge.cr[i] : 0;
                    if (b > chi_ ||
                        (opts_.suffix_prune && b + suffix_[t][rho[i]] > chi_)) {
                        ok = false;
                        break;
                    }
                    budgets[i] = b;
                }
                if (ok) insert_state(next, t, cp, rho, std::move(budgets), node, result);
            }
        }
    }

    void compute_edge(const std::vector<int>& rho_prev, const std::vector<int>& rho,
                      const std::vector<char>& protected_char, std::vector<int>& pos_prev,
                      TransEdge& edge) const {
        edge.computed = true;
        for (std::size_t i = 0; i < rho_prev.size(); ++i) pos_prev[rho_prev[i]] = (int)i;
        edge.cr.assign(rho.size(), 0);
        edge.src.assign(rho.size(), -1);
        edge.valid = true;
        std::vector<int> common;  // positions in rho of characters alive in both
        for (std::size_t i = 0; i < rho.size(); ++i) {
            edge.src[i] = pos_prev[rho[i]];
            if (edge.src[i] >= 0) common.push_back(static_cast<int>(i));
        }
        for (std::size_t a = 0; a < common.size() && edge.valid; ++a) {
            for (std::size_t b = a + 1; b < common.size(); ++b) {
                int ia = common[a], ib = common[b];
                if (pos_prev[rho[ia]] > pos_prev[rho[ib]]) {
                    if (protected_char[rho[ia]] || protected_char[rho[ib]]) {
                        edge.valid = false;
                        break;
                    }
                    ++edge.cr[ia];
                    ++edge.cr[ib];
                }
            }
        }
        for (std::size_t i = 0; i < rho_prev.size(); ++i) pos_prev[rho_prev[i]] = -1;
    }

    void prune_layer(std::map<LayerKey, Node*>& layer) {
        auto group_begin = layer.begin();
        std::vector<std::map<LayerKey, Node*>::iterator> doomed;
        while (group_begin != layer.end()) {
            auto group_end = group_begin;
            std::vector<std::map<LayerKey, Node*>::iterator> group;
            while (group_end != layer.end() && group_end->first.first == group_begin->first.first) {
                group.push_back(group_end);
                ++group_end;
            }
            for (auto i : group) {
                for (auto j : group) {
                    if (i == j) continue;
                    const Budgets& a = i->first.second;
                    const Budgets& b = j->first.second;
                    bool dominates = a != b;
                    for (std::size_t x = 0; dominates && x < a.size(); ++x) {
                        if (a[x] > b[x]) dominates = false;
                    }
                    if (dominates) doomed.push_back(j);
                }
            }
            group_begin = group_end;
        }
        std::sort(doomed.begin(), doomed.end(),
                  [](auto a, auto b) { return a->first < b->first; });
        doomed.erase(std::unique(doomed.begin(), doomed.end()), doomed.end());
        for (auto it : doomed) layer.erase(it);
    }

    Layout reconstruct(const Node* node) const {
        Layout layout;
        for (const Node* cur = node; cur != nullptr; cur = cur->parent) {
            std::vector<CharacterId> order;
            order.reserve(cur->rho.size());
            for (int c : cur->rho) order.push_back(ids_[c]);
            if (!order.empty()) layout.orders[cur->time] = std::move(order);
        }
        return layout;
    }

    const ExtensionProblem& prob_;
    SolveOptions opts_;
    int chi_ = 0;
    int tau_ = 0;
    std::vector<CharacterId> ids_;
    std::unordered_map<CharacterId, int> index_;
    std::vector<char> fixed_;
    std::vector<Lifespan> span_;
    std::vector<std::vector<int>> starting_at_;
    std::vector<MeetingIdx> meetings_;
    std::vector<std::vector<int>> meetings_starting_at_;
    std::vector<std::vector<int>> pi_;
    std::vector<std::vector<std::int32_t>> suffix_;
    std::deque<Node> pool_;
};

}  // namespace

SolveResult solve(const ExtensionProblem& problem, const SolveOptions& options) {
    ValidationReport report = validate_extension_problem(problem);
    if (!report.ok()) {
        throw std::invalid_argument("invalid extension problem:\n" + report.to_string());
    }
    Engine engine(problem, options);
    return engine.run();
}

std::optional<int> minimum_chi(const ExtensionProblem& problem, const SolveOptions& options) {
    StorylineInstance sub = induced_sub_storyline(problem.full, problem.fixed_characters);
    int lower = local_crossing_number(sub, problem.fixed_layout);

    auto spans = derive_lifespans(problem.full);
    int tau = horizon(problem.full);
    int sigma = 0;
    for (int t = 1; t <= tau; ++t) {
        int active = 0;
        for (const auto& [c, s] : spans) {
            if (s.contains(t)) ++active;
        }
        sigma = std::max(sigma, active);
    }
    // No character can cross more than sigma-1 others per strip.
    const int upper = std::max(lower, (tau > 0 ? tau - 1 : 0) * std::max(0, sigma - 1));

    for (int chi = lower; chi <= upper; ++chi) {
        ExtensionProblem attempt = problem;
        attempt.chi = chi;
        if (solve(attempt, options).accepted) return chi;
    }
    return std::nullopt;
}

}  // namespace storyline
