#include "storyline/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "storyline/detail/orders.hpp"

namespace storyline {

namespace {

constexpr int kMaxCharacters = 6;
constexpr int kMaxHorizon = 6;
constexpr int kMaxEubpItems = 12;

struct Search {
    const ExtensionProblem& prob;
    int tau;
    std::set<CharacterId> fixed;
    std::map<CharacterId, Lifespan> spans;
    std::vector<std::vector<std::vector<CharacterId>>> orders_at;  // candidates per t

    std::vector<std::vector<CharacterId>> chosen;
    std::map<CharacterId, int> counts;
    std::optional<int> best;
    Layout best_layout;

    explicit Search(const ExtensionProblem& p) : prob(p), tau(horizon(p.full)) {
        fixed.insert(p.fixed_characters.begin(), p.fixed_characters.end());
        spans = derive_lifespans(p.full);
        orders_at.resize(tau + 1);
        for (int t = 1; t <= tau; ++t) {
            std::vector<CharacterId> pi;
            auto it = p.fixed_layout.orders.find(t);
            if (it != p.fixed_layout.orders.end()) pi = it->second;
            std::vector<CharacterId> newcomers;
            for (const auto& [c, span] : spans) {
                if (span.contains(t) && !fixed.count(c)) newcomers.push_back(c);
            }
            for (auto& rho : detail::extend_order(pi, newcomers)) {
                if (meetings_contiguous_at(prob.full, t, rho)) {
                    orders_at[t].push_back(std::move(rho));
                }
            }
        }
    }

    int current_max() const {
        int m = 0;
        for (const auto& [c, n] : counts) m = std::max(m, n);
        return m;
    }

    bool strip_allowed(int t, const std::vector<CharacterId>& prev,
                       const std::vector<CharacterId>& cur,
                       std::map<CharacterId, int>& delta) const {
        delta = strip_crossings(prev, cur);
        for (const Meeting& m : prob.full.meetings) {
            if (m.begin <= t - 1 && t <= m.end) {
                for (const CharacterId& c : m.members) {
                    auto it = delta.find(c);
                    if (it != delta.end() && it->second > 0) return false;
                }
            }
        }
        return true;
    }

    void descend(int t) {
        if (best && current_max() >= *best) return;  // cannot improve the minimum
        if (t > tau) {
            int value = current_max();
            if (!best || value < *best) {
                best = value;
                best_layout = Layout{};
                for (int i = 1; i <= tau; ++i) {
                    if (!chosen[i].empty()) best_layout.orders[i] = chosen[i];
                }
            }
            return;
        }
        for (const auto& rho : orders_at[t]) {
            std::map<CharacterId, int> delta;
            if (t > 1 && !strip_allowed(t, chosen[t - 1], rho, delta)) continue;
            for (const auto& [c, n] : delta) counts[c] += n;
            chosen[t] = rho;
            descend(t + 1);
            chosen[t].clear();
            for (const auto& [c, n] : delta) counts[c] -= n;
        }
    }
};

}  // namespace

OracleResult brute_force_solve(const ExtensionProblem& problem) {
    if (static_cast<int>(problem.full.characters.size()) > kMaxCharacters ||
        horizon(problem.full) > kMaxHorizon) {
        throw OracleSizeError("instance exceeds the brute-force guard rails");
    }
    ValidationReport report = validate_extension_problem(problem);
    if (!report.ok()) {
        throw std::invalid_argument("invalid extension problem:\n" + report.to_string());
    }

    Search search(problem);
    search.chosen.resize(search.tau + 1);
    for (const CharacterId& c : problem.full.characters) search.counts[c] = 0;
    search.descend(1);

    OracleResult result;
    result.min_lcn = search.best;
    if (search.best) {
        result.accepted = *search.best <= problem.chi;
        result.witness = search.best_layout;
    }
    return result;
}

namespace {

bool fill_bins(const std::vector<int>& items, const std::vector<int>& order, std::size_t next,
               std::vector<int>& load, std::vector<std::vector<int>>& bins, int capacity) {
    if (next == order.size()) {
        return std::all_of(load.begin(), load.end(), [&](int l) { return l == capacity; });
    }
    int item = items[order[next]];
    for (std::size_t b = 0; b < load.size(); ++b) {
        if (load[b] + item > capacity) continue;
        load[b] += item;
        bins[b].push_back(order[next]);
        if (fill_bins(items, order, next + 1, load, bins, capacity)) return true;
        bins[b].pop_back();
        load[b] -= item;
        if (load[b] == 0) break;  // empty bins are interchangeable
    }
    return false;
}

}  // namespace

EubpResult brute_force_eubp(const EubpInstance& instance) {
    if (static_cast<int>(instance.items.size()) > kMaxEubpItems) {
        throw OracleSizeError("too many items for the brute-force EUBP solver");
    }
    if (instance.bins < 1 || instance.capacity < 1) {
        throw std::invalid_argument("bin count and capacity must be positive");
    }
    for (int x : instance.items) {
        if (x < 1) throw std::invalid_argument("items must be positive");
    }
    EubpResult result;
    long long sum = std::accumulate(instance.items.begin(), instance.items.end(), 0LL);
    if (sum != static_cast<long long>(instance.bins) * instance.capacity) {
        return result;  // necessary condition: items must sum to K*B
    }

    std::vector<int> order(instance.items.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return instance.items[a] > instance.items[b]; });

    std::vector<int> load(instance.bins, 0);
    std::vector<std::vector<int>> bins(instance.bins);
    if (fill_bins(instance.items, order, 0, load, bins, instance.capacity)) {
        result.accepted = true;
        result.assignment = std::move(bins);
    }
    return result;
}

}  // namespace storyline
