#ifndef SURROGATE_SEARCH_ENGINE_H
#define SURROGATE_SEARCH_ENGINE_H

#include "evaluators.h"
#include "graph_core.h"
#include "heuristic.h"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace surrogate {

struct SearchLimits {
    std::optional<std::uint64_t> max_expansions;
    std::optional<std::uint64_t> max_wall_ms;
    std::optional<std::uint64_t> max_nodes_in_memory;

    // Throws std::invalid_argument when a set limit is zero.
    void validate() const;
};

struct Incumbent {
    std::optional<Plan> plan;
    Cost bound_cost = kInfiniteCost;
};

struct SolutionEvent {
    Cost cost = 0;
    Cost size = 0;
    std::uint64_t expansions_at_event = 0;
    std::uint64_t wall_ms_at_event = 0;
    Plan plan;
};

struct SearchStats {
    std::uint64_t expansions = 0;
    std::uint64_t generations = 0;
    std::uint64_t duplicates_pruned = 0;
    std::uint64_t reopenings = 0;
    std::uint64_t bound_prunes = 0;
    std::uint64_t goal_tests = 0;
    std::uint64_t heuristic_calls = 0;
    std::uint64_t lookahead_invocations = 0;
    std::optional<std::uint64_t> discovery_expansions;
    std::optional<std::uint64_t> discovery_ms;
    std::optional<std::uint64_t> proof_expansions;
    std::uint64_t wall_ms = 0;

    friend bool operator==(const SearchStats &, const SearchStats &) = default;
};

enum class SearchStatus { ProvedOptimal, BudgetExhausted, ExhaustedNoSolution };

std::string to_string(SearchStatus status);
SearchStatus parse_search_status(const std::string &text);

struct SearchOutcome {
    SearchStatus status = SearchStatus::ExhaustedNoSolution;
    Incumbent incumbent;
    std::vector<SolutionEvent> events;
    SearchStats stats;
};

struct SearchConfig {
    EvaluatorConfig evaluator;
    SearchLimits limits;
    bool lookahead = false;
    // Relative plateau threshold for cost evaluators; nullopt means epsilon.
    std::optional<Rational> plateau_tau;
    // When false every reported millisecond value is 0, for byte-stable output.
    bool record_wall_clock = true;
};

using SolutionListener = std::function<void(const SolutionEvent &)>;

// ---------------------------------------------------------------- loop steps

bool bound_test(const SearchNode &n, const HeuristicValue &prune_h, const Incumbent &inc);

class ClosedMap {
public:
    struct Entry {
        Cost best_g_cost;
        Cost best_g_size;
    };

    const Entry *find(const StateKey &state) const;
    Entry &operator[](const StateKey &state) { return entries_[state]; }
    bool insert(const StateKey &state, Entry entry);
    std::size_t size() const { return entries_.size(); }

private:
    std::unordered_map<StateKey, Entry, StateKeyHash> entries_;
};

enum class DuplicateVerdict { Fresh, Prune, Reopen };

// Records or improves the closed entry of n's state.
DuplicateVerdict duplicate_test(const SearchNode &n, ClosedMap &closed);

/*
  True iff n has a parent and the evaluator's g-component did not grow.
  For COST and WCOST, increments up to plateau_increment (tau * max_cost)
  count as flat.
*/
bool plateau_detect(const SearchNode &n, const SearchNode *parent,
                    const EvaluatorConfig &cfg, const Rational &plateau_increment);

/*
  Degree of usefulness; kind distinguishes the two infinite cases:
  excluding the operator makes the state a dead end (+inf), or the
  operator itself leads to a dead end (-inf).
*/
struct Usefulness {
    enum class Kind { NegativeInfinite, Finite, PositiveInfinite };
    Kind kind = Kind::Finite;
    Cost value = 0;

    static Usefulness of(const HeuristicValue &without, const HeuristicValue &child);
    bool positive() const;

    friend bool operator==(const Usefulness &, const Usefulness &) = default;
    friend bool operator<(const Usefulness &a, const Usefulness &b) {
        if (a.kind != b.kind)
            return a.kind < b.kind;
        return a.kind == Kind::Finite && a.value < b.value;
    }
};

struct UsefulnessEntry {
    ActionId action;
    HeuristicValue without;
    HeuristicValue child;
    Usefulness usefulness;
};

struct LookaheadChoice {
    // Index into the edge list, set iff some operator has positive usefulness.
    std::optional<std::size_t> chosen;
    std::vector<UsefulnessEntry> table;
};

// Usefulness of each edge leaving state; child values come from h.
LookaheadChoice useful_lookahead(const StateKey &state, const std::vector<OutEdge> &edges,
                                 Heuristic &h, OperatorExcludingHeuristic &without);

// ------------------------------------------------------------------ search

/*
  Anytime best-first branch and bound. h orders the open list; prune_h
  feeds the bound test and must be admissible for the proof to mean
  anything. without is required when cfg.lookahead is set.
*/
SearchOutcome best_first_bnb(const SearchProblem &problem, const SearchConfig &cfg,
                             Heuristic &h, Heuristic &prune_h,
                             OperatorExcludingHeuristic *without = nullptr,
                             const SolutionListener &listener = {});

} // namespace surrogate

#endif
