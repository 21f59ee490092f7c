#ifndef SURROGATE_RELAXED_PLAN_H
#define SURROGATE_RELAXED_PLAN_H

#include "grounded_task.h"
#include "heuristic.h"

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace surrogate {

/*
  Result of additive cost propagation over the delete relaxation.
  fact_cost and action_cost hold kInfiniteCost for unreached entries;
  action_cost is the summed cost of the action's preconditions.
*/
struct CostTable {
    std::vector<Cost> fact_cost;
    std::vector<Cost> action_cost;
    std::vector<ActionId> best_supporter; // kNoAction for facts of the state
    Cost goal_cost = kInfiniteCost;

    bool goal_reachable() const { return goal_cost != kInfiniteCost; }
};

struct RelaxedPlan {
    // Dependency order: executing them in this order without deletes works.
    std::vector<ActionId> actions;
    Cost total_cost = 0;
    Cost size = 0;
};

class UnreachableGoal : public std::runtime_error {
public:
    UnreachableGoal() : std::runtime_error("goal unreachable in the delete relaxation") {}
};

// Reusable buffers so repeated propagation does not allocate.
struct RelaxationScratch {
    std::vector<int> unsatisfied;
    std::vector<Cost> pre_sum;
    std::vector<std::pair<Cost, FactId>> heap;
    std::vector<char> selected;
    std::vector<char> visited;
    std::vector<std::pair<ActionId, std::size_t>> stack;
};

// Static structure of a task for repeated propagation.
class RelaxationModel {
public:
    explicit RelaxationModel(std::shared_ptr<const GroundedTask> task);

    const GroundedTask &task() const { return *task_; }

    /*
      h_add fixpoint from the given facts. unit_costs replaces every action
      cost by 1; excluded removes one action from the task.
    */
    CostTable propagate(const FactSet &state, bool unit_costs = false,
                        ActionId excluded = kNoAction) const;
    void propagate(const FactSet &state, bool unit_costs, ActionId excluded,
                   CostTable &table, RelaxationScratch &scratch) const;

    // Backchains over best supporters. Throws UnreachableGoal.
    RelaxedPlan extract(const FactSet &state, const CostTable &table) const;
    void extract(const FactSet &state, const CostTable &table, RelaxedPlan &plan,
                 RelaxationScratch &scratch) const;

private:
    std::shared_ptr<const GroundedTask> task_;
    std::vector<std::vector<ActionId>> achievers_;
    std::vector<std::vector<ActionId>> consumers_;
};

CostTable hadd_propagate(const GroundedTask &task, const FactSet &state,
                         bool unit_costs = false, ActionId excluded = kNoAction);
RelaxedPlan extract_relaxed_plan(const GroundedTask &task, const FactSet &state,
                                 const CostTable &table);

/*
  HADD_COST: (h_add goal cost, relaxed plan size)
  RP_COST, RP_SIZE_CHEAP: (relaxed plan cost, relaxed plan size) on true costs
  RP_SIZE_SHORT: the same pair for the plan extracted from a unit-cost table
*/
class RelaxedPlanHeuristic : public MemoizedHeuristic, public OperatorExcludingHeuristic {
public:
    RelaxedPlanHeuristic(std::shared_ptr<const GroundedTask> task, HeuristicKind kind);

    HeuristicValue estimate_without(const StateKey &state, ActionId excluded) override;
    std::uint64_t excluding_computations() const override { return excluding_computations_; }

    HeuristicKind kind() const { return kind_; }
    // Plan behind the heuristic value, or nullopt for dead ends.
    std::optional<RelaxedPlan> relaxed_plan(const StateKey &state,
                                            ActionId excluded = kNoAction) const;

protected:
    HeuristicValue compute(const StateKey &state) override;

private:
    HeuristicValue value_of(const StateKey &state, ActionId excluded);

    RelaxationModel model_;
    CostTable table_;
    RelaxedPlan plan_;
    RelaxationScratch scratch_;
    HeuristicKind kind_;
    std::uint64_t excluding_computations_ = 0;
};

} // namespace surrogate

#endif
