#include "surrogate/oracle.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

namespace surrogate {

const OracleEntry *OracleTable::find(const StateKey &state) const {
    auto it = entries_.find(state);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::pair<StateKey, OracleEntry>> OracleTable::sorted() const {
    std::vector<std::pair<StateKey, OracleEntry>> out(entries_.begin(), entries_.end());
    std::sort(out.begin(), out.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    return out;
}

OracleTable dijkstra_oracle(const SearchProblem &problem, std::uint64_t state_cap) {
    OracleTable table;
    std::unordered_map<StateKey, OracleEntry, StateKeyHash> tentative;
    using Entry = std::tuple<Cost, Cost, StateKey>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

    StateKey init = problem.initial_state();
    tentative[init] = {0, 0};
    queue.push({0, 0, init});
    while (!queue.empty()) {
        auto [cost, size, state] = queue.top();
        queue.pop();
        OracleEntry current{cost, size};
        if (table.entries_.count(state) || tentative[state] != current)
            continue;
        table.entries_.emplace(state, current);
        if (problem.is_goal(state)) {
            table.goal_states_.push_back(state);
            if (!table.goal_optimum_ || current < *table.goal_optimum_)
                table.goal_optimum_ = current;
        }
        for (const OutEdge &edge : problem.expand(state)) {
            if (table.entries_.count(edge.target))
                continue;
            OracleEntry candidate{cost + edge.cost, size + 1};
            auto [it, inserted] = tentative.try_emplace(edge.target, candidate);
            if (inserted) {
                if (tentative.size() > state_cap)
                    throw OracleCapExceeded(state_cap);
            } else if (candidate < it->second) {
                it->second = candidate;
            } else {
                continue;
            }
            queue.push({candidate.cost, candidate.size, edge.target});
        }
    }
    std::sort(table.goal_states_.begin(), table.goal_states_.end());
    return table;
}

} // namespace surrogate
