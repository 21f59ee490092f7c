#ifndef SURROGATE_ORACLE_H
#define SURROGATE_ORACLE_H

#include "graph_core.h"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace surrogate {

struct OracleEntry {
    Cost cost = 0;
    Cost size = 0;

    friend bool operator==(const OracleEntry &, const OracleEntry &) = default;
    friend auto operator<=>(const OracleEntry &, const OracleEntry &) = default;
};

class OracleCapExceeded : public std::runtime_error {
public:
    explicit OracleCapExceeded(std::uint64_t cap)
        : std::runtime_error("oracle state cap of " + std::to_string(cap) + " exceeded"),
          cap_(cap) {}
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t cap_;
};

/*
  Exact (g_c*, size of the shortest cheapest path) for every reachable
  state, by uniform-cost search on the lexicographic (cost, size) pair.
*/
class OracleTable {
public:
    const OracleEntry *find(const StateKey &state) const;
    std::size_t size() const { return entries_.size(); }
    // Cheapest goal, or nullopt if no goal is reachable.
    const std::optional<OracleEntry> &goal_optimum() const { return goal_optimum_; }
    // States in ascending key order.
    std::vector<std::pair<StateKey, OracleEntry>> sorted() const;
    std::vector<StateKey> goal_states() const { return goal_states_; }

private:
    friend OracleTable dijkstra_oracle(const SearchProblem &, std::uint64_t);

    std::unordered_map<StateKey, OracleEntry, StateKeyHash> entries_;
    std::vector<StateKey> goal_states_;
    std::optional<OracleEntry> goal_optimum_;
};

// Throws OracleCapExceeded once more than state_cap states are discovered.
OracleTable dijkstra_oracle(const SearchProblem &problem, std::uint64_t state_cap);

} // namespace surrogate

#endif
