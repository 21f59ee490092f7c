#ifndef SURROGATE_HEURISTIC_H
#define SURROGATE_HEURISTIC_H

#include "graph_core.h"

#include <cstdint>
#include <string>
#include <unordered_map>

namespace surrogate {

/*
  Cost-to-go and size-to-go of one state. Both are infinite together,
  which marks a dead end.
*/
struct HeuristicValue {
    Cost cost_to_go = 0;
    Cost size_to_go = 0;

    static HeuristicValue infinite() { return {kInfiniteCost, kInfiniteCost}; }
    bool is_infinite() const { return cost_to_go == kInfiniteCost; }

    friend bool operator==(const HeuristicValue &, const HeuristicValue &) = default;
};

/*
  A heuristic instance is bound to one problem and belongs to one run.
  estimate() may memoize, so it is not const.
*/
class Heuristic {
public:
    virtual ~Heuristic() = default;
    virtual HeuristicValue estimate(const StateKey &state) = 0;
    // Number of full (non-memoized) evaluations performed so far.
    virtual std::uint64_t computations() const { return 0; }
};

// h^{ō}: the heuristic recomputed with one action removed from the task.
class OperatorExcludingHeuristic {
public:
    virtual ~OperatorExcludingHeuristic() = default;
    virtual HeuristicValue estimate_without(const StateKey &state, ActionId excluded) = 0;
    virtual std::uint64_t excluding_computations() const = 0;
};

class ZeroHeuristic : public Heuristic {
public:
    HeuristicValue estimate(const StateKey &) override { return {0, 0}; }
};

// Memo per StateKey; values are bound-independent, so caching is safe.
class MemoizedHeuristic : public Heuristic {
public:
    HeuristicValue estimate(const StateKey &state) final;
    std::uint64_t computations() const final { return computations_; }

protected:
    virtual HeuristicValue compute(const StateKey &state) = 0;

private:
    std::unordered_map<StateKey, HeuristicValue, StateKeyHash> memo_;
    std::uint64_t computations_ = 0;
};

enum class HeuristicKind { Zero, Exact, HaddCost, RpCost, RpSizeCheap, RpSizeShort };

std::string to_string(HeuristicKind kind);
HeuristicKind parse_heuristic_kind(const std::string &text);

} // namespace surrogate

#endif
