#include "storyline/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace storyline {

namespace {

std::map<CharacterId, Lifespan> lifespans_of(const std::vector<Meeting>& meetings) {
    std::map<CharacterId, Lifespan> spans;
    for (const Meeting& m : meetings) {
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
    return spans;
}

std::map<int, std::vector<CharacterId>> weave_orders(const std::vector<WeaveRow>& rows,
                                                     const std::map<CharacterId, Lifespan>& spans,
                                                     int t_lo, int t_hi) {
    std::map<int, std::vector<CharacterId>> orders;
    for (int t = t_lo; t <= t_hi; ++t) {
        std::vector<CharacterId> order;
        for (const WeaveRow& row : rows) {
            auto ls = spans.find(row.leader);
            bool leader_alive = ls != spans.end() && ls->second.contains(t);
            bool partner_alive = false;
            if (!row.partner.empty()) {
                auto ps = spans.find(row.partner);
                partner_alive = ps != spans.end() && ps->second.contains(t);
            }
            if (leader_alive && partner_alive) {
                bool base = (t - row.sat_begin) % 2 == 0;
                bool partner_first = row.partner_above ? base : !base;
                if (partner_first) {
                    order.push_back(row.partner);
                    order.push_back(row.leader);
                } else {
                    order.push_back(row.leader);
                    order.push_back(row.partner);
                }
            } else if (leader_alive) {
                order.push_back(row.leader);
            } else if (partner_alive) {
                order.push_back(row.partner);
            }
        }
        if (!order.empty()) orders[t] = std::move(order);
    }
    return orders;
}

void finalize(GadgetFragment& fragment) {
    std::set<CharacterId> chars;
    int lo = 0, hi = 0;
    bool any = false;
    for (const Meeting& m : fragment.meetings) {
        chars.insert(m.members.begin(), m.members.end());
        lo = any ? std::min(lo, m.begin) : m.begin;
        hi = any ? std::max(hi, m.end) : m.end;
        any = true;
    }
    fragment.characters.assign(chars.begin(), chars.end());
    fragment.first_instant = lo;
    fragment.last_instant = hi;
    fragment.orders = weave_orders(fragment.rows, lifespans_of(fragment.meetings), lo, hi);
}

}  // namespace

GadgetParams reduction_params(const EubpInstance& instance) {
    GadgetParams params;
    params.delta = 2;
    params.k = instance.bins;
    params.chi = instance.capacity + params.delta * instance.capacity * (instance.bins - 1);
    return params;
}

GadgetFragment build_saturator(int s, int b_star, const CharacterId& leading, bool partner_above,
                               bool solo_anchor) {
    if (s < 0) throw std::invalid_argument("saturator size must be non-negative");
    GadgetFragment fragment;
    CharacterId partner = leading + "_bar";
    if (solo_anchor) {
        fragment.meetings.push_back({{partner}, b_star, b_star});
    } else {
        fragment.meetings.push_back({{leading, partner}, b_star, b_star});
    }
    for (int i = 1; i <= s; ++i) {
        fragment.meetings.push_back({{leading, partner}, b_star + i, b_star + i});
    }
    for (Meeting& m : fragment.meetings) std::sort(m.members.begin(), m.members.end());
    fragment.rows.push_back({leading, partner, b_star, b_star + s, partner_above});
    finalize(fragment);
    return fragment;
}

GadgetFragment build_channel(int c, const GadgetParams& params, int b_star,
                             const CharacterId& central, const CharacterId& top,
                             const CharacterId& bottom, bool attach_top_saturator,
                             bool attach_bottom_saturator) {
    if (c < 1) throw std::invalid_argument("channel capacity must be at least 1");
    if (c > params.chi) {
        throw ReductionError("channel capacity " + std::to_string(c) +
                             " exceeds the crossing budget " + std::to_string(params.chi));
    }
    GadgetFragment fragment;
    const int sat_start = b_star - params.chi - 1;

    auto attach = [&](const CharacterId& leader, int s) {
        GadgetFragment sat = build_saturator(s, sat_start, leader);
        fragment.meetings.insert(fragment.meetings.end(), sat.meetings.begin(), sat.meetings.end());
        return sat.rows.front();
    };

    WeaveRow top_row{top, "", 0, 0, false};
    WeaveRow bottom_row{bottom, "", 0, 0, false};
    if (attach_top_saturator) top_row = attach(top, params.chi);
    WeaveRow central_row = attach(central, params.chi - c);
    if (attach_bottom_saturator) bottom_row = attach(bottom, params.chi);
    fragment.rows = {top_row, central_row, bottom_row};

    // Alternating run: even meetings pair the central with the top boundary,
    // odd ones with the bottom boundary.
    for (int i = 0; i <= c; ++i) {
        std::vector<CharacterId> members{central, i % 2 == 0 ? top : bottom};
        std::sort(members.begin(), members.end());
        fragment.meetings.push_back({std::move(members), b_star + i, b_star + i});
    }
    finalize(fragment);
    return fragment;
}

GadgetFragment build_column(int x, const GadgetParams& params, int b_star,
                            const std::string& prefix) {
    if (x < 1) throw std::invalid_argument("column value must be at least 1");
    if (params.k < 1) throw std::invalid_argument("k must be at least 1");
    const int channels = 2 * params.k - 1;

    GadgetFragment fragment;
    for (int i = 1; i <= channels; ++i) {
        const int capacity = (i == params.k) ? x : params.delta * x;
        CharacterId central = prefix + ":C" + std::to_string(i);
        CharacterId top = prefix + ":D" + std::to_string(i - 1);
        CharacterId bottom = prefix + ":D" + std::to_string(i);
        GadgetFragment channel =
            build_channel(capacity, params, b_star, central, top, bottom,
                          /*attach_top_saturator=*/i == 1, /*attach_bottom_saturator=*/true);
        fragment.meetings.insert(fragment.meetings.end(), channel.meetings.begin(),
                                 channel.meetings.end());
        if (i == 1) {
            fragment.rows.push_back(channel.rows[0]);  // shared boundary kept once
        }
        fragment.rows.push_back(channel.rows[1]);
        fragment.rows.push_back(channel.rows[2]);
    }
    finalize(fragment);
    return fragment;
}

ExtensionProblem reduce(const EubpInstance& instance) {
    const int n = static_cast<int>(instance.items.size());
    if (n < 1) throw ReductionError("at least one item is required");
    if (instance.bins < 1 || instance.capacity < 1) {
        throw ReductionError("bin count and capacity must be positive");
    }
    for (int x : instance.items) {
        if (x < 1) throw ReductionError("items must be positive integers");
    }
    long long sum = std::accumulate(instance.items.begin(), instance.items.end(), 0LL);
    if (sum != static_cast<long long>(instance.bins) * instance.capacity) {
        throw ReductionError("items must sum to bins * capacity (necessary condition)");
    }
    for (int x : instance.items) {
        if (x > instance.capacity) {
            throw ReductionError("item " + std::to_string(x) +
                                 " exceeds the bin capacity; the instance is trivially infeasible");
        }
    }

    const GadgetParams params = reduction_params(instance);
    const int chi = params.chi;
    const int k = params.k;

    ExtensionProblem problem;
    problem.chi = chi;

    std::vector<Meeting> meetings;
    std::vector<WeaveRow> rows;

    std::vector<CharacterId> news;
    for (int i = 1; i <= k; ++i) news.push_back("N" + std::to_string(i));

    // Frame: T and B meet alone at the very first and last instants; the
    // new characters join them right after M_l and just before M_r. The
    // frame saturators start at t=2 with a solo anchor so their partners
    // already flank T and B when the new characters appear.
    meetings.push_back({{"B", "T"}, 1, 1});
    {
        std::vector<CharacterId> big = news;
        big.push_back("T");
        big.push_back("B");
        std::sort(big.begin(), big.end());
        meetings.push_back({big, 2, 2});
    }
    GadgetFragment t_sat = build_saturator(chi, 2, "T", /*partner_above=*/true, /*solo_anchor=*/true);
    GadgetFragment b_sat = build_saturator(chi, 2, "B", /*partner_above=*/false, /*solo_anchor=*/true);
    meetings.insert(meetings.end(), t_sat.meetings.begin(), t_sat.meetings.end());
    meetings.insert(meetings.end(), b_sat.meetings.begin(), b_sat.meetings.end());
    rows.push_back(t_sat.rows.front());

    int anchor = chi + 3;  // first column's frame meetings
    for (int j = 1; j <= n; ++j) {
        const std::string prefix = "X" + std::to_string(j);
        const CharacterId top_boundary = prefix + ":D0";
        const CharacterId bottom_boundary = prefix + ":D" + std::to_string(2 * k - 1);
        std::vector<CharacterId> tm{"T", top_boundary};
        std::vector<CharacterId> bm{"B", bottom_boundary};
        std::sort(tm.begin(), tm.end());
        std::sort(bm.begin(), bm.end());
        meetings.push_back({tm, anchor, anchor});
        meetings.push_back({bm, anchor, anchor});

        const int run_start = anchor + chi + 2;
        GadgetFragment column = build_column(instance.items[j - 1], params, run_start, prefix);
        meetings.insert(meetings.end(), column.meetings.begin(), column.meetings.end());
        rows.insert(rows.end(), column.rows.begin(), column.rows.end());

        const int run_length = (k >= 2 ? params.delta : 1) * instance.items[j - 1];
        anchor = run_start + run_length + 1;
    }
    rows.push_back(b_sat.rows.front());

    {
        std::vector<CharacterId> big = news;
        big.push_back("T");
        big.push_back("B");
        std::sort(big.begin(), big.end());
        meetings.push_back({big, anchor, anchor});
    }
    meetings.push_back({{"B", "T"}, anchor + 1, anchor + 1});

    problem.full.meetings = std::move(meetings);
    std::set<CharacterId> chars;
    for (const Meeting& m : problem.full.meetings) {
        chars.insert(m.members.begin(), m.members.end());
    }
    problem.full.characters.assign(chars.begin(), chars.end());

    for (const CharacterId& c : problem.full.characters) {
        if (std::find(news.begin(), news.end(), c) == news.end()) {
            problem.fixed_characters.push_back(c);
        }
    }

    const int tau = anchor + 1;
    auto spans = lifespans_of(problem.full.meetings);
    for (const CharacterId& c : news) spans.erase(c);  // fixed layout only
    problem.fixed_layout.orders = weave_orders(rows, spans, 1, tau);
    return problem;
}

}  // namespace storyline
