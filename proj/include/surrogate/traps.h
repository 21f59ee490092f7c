#ifndef SURROGATE_TRAPS_H
#define SURROGATE_TRAPS_H

#include "graph_core.h"
#include "heuristic.h"

#include <cstdint>

namespace surrogate {

/*
  Counter of k bits driven by increment and decrement. Every step costs 1
  except the wrap-around between residue 0 and residue 2^k - 1, which costs
  expensive_cost in both directions.
*/
struct CycleTrapConfig {
    int k = 4;
    // 0 selects the default 2^{k-1}.
    Cost expensive_cost = 0;
    std::uint64_t goal_residue = 0;

    std::uint64_t modulus() const { return std::uint64_t{1} << k; }
    Cost wrap_cost() const;
    void validate() const;
};

class CycleTrap : public SearchProblem {
public:
    static constexpr ActionId kIncrement = 0;
    static constexpr ActionId kDecrement = 1;

    explicit CycleTrap(CycleTrapConfig cfg);

    StateKey initial_state() const override { return StateKey(0); }
    bool is_goal(const StateKey &state) const override;
    std::vector<OutEdge> expand(const StateKey &state) const override;
    std::optional<CostBounds> cost_bounds() const override;
    std::string action_name(ActionId action) const override;
    std::string describe() const override;

    const CycleTrapConfig &config() const { return cfg_; }

private:
    CycleTrapConfig cfg_;
};

CycleTrap cycle_trap(const CycleTrapConfig &cfg);

struct DirectionOptimum {
    Cost cost = 0;
    Cost size = 0;
    friend bool operator==(const DirectionOptimum &, const DirectionOptimum &) = default;
};

struct CycleOptima {
    DirectionOptimum clockwise;        // pure increments
    DirectionOptimum counterclockwise; // pure decrements
};

// Closed-form costs of the two direction-pure solutions from residue 0.
CycleOptima cycle_trap_optima(const CycleTrapConfig &cfg, std::uint64_t goal);

// Exact (cost, size) to the goal residue; size is that of the cheapest path.
class ExactCycleHeuristic : public Heuristic {
public:
    explicit ExactCycleHeuristic(CycleTrapConfig cfg) : cfg_(cfg) {}
    HeuristicValue estimate(const StateKey &state) override;

private:
    CycleTrapConfig cfg_;
};

/*
  Uniform branching tree with x high-cost and y low-cost labels per node.
  A node is a goal iff its path holds exactly goal_high high labels and
  goal_low low labels. Nodes at depth_cap have no children.
*/
struct BranchingTrapConfig {
    int x = 2;
    int y = 2;
    Cost high_cost = 2;
    Cost low_cost = 1;
    int goal_high = 1;
    int goal_low = 1;
    int depth_cap = 16;

    void validate() const;
};

class BranchingTrap : public SearchProblem {
public:
    explicit BranchingTrap(BranchingTrapConfig cfg);

    StateKey initial_state() const override;
    bool is_goal(const StateKey &state) const override;
    std::vector<OutEdge> expand(const StateKey &state) const override;
    std::optional<CostBounds> cost_bounds() const override;
    std::string action_name(ActionId action) const override;
    std::string describe() const override;

    const BranchingTrapConfig &config() const { return cfg_; }

    static int depth(const StateKey &state);
    static int high_count(const StateKey &state);
    static int low_count(const StateKey &state);

private:
    BranchingTrapConfig cfg_;
};

BranchingTrap branching_trap(const BranchingTrapConfig &cfg);

// Depth of an equal-mix solution of normalized cost c: 2c / (1 + eps).
Rational equal_mix_depth(const Rational &normalized_cost, const Rational &epsilon);

// Remaining (high, low) labels priced exactly; infinite once overshot.
class ExactBranchingHeuristic : public Heuristic {
public:
    explicit ExactBranchingHeuristic(BranchingTrapConfig cfg) : cfg_(cfg) {}
    HeuristicValue estimate(const StateKey &state) override;

private:
    BranchingTrapConfig cfg_;
};

} // namespace surrogate

#endif
