#include "surrogate/relaxed_plan.h"

#include <algorithm>
#include <functional>

namespace surrogate {

RelaxationModel::RelaxationModel(std::shared_ptr<const GroundedTask> task)
    : task_(std::move(task)),
      achievers_(task_->num_facts()),
      consumers_(task_->num_facts()) {
    task_->validate();
    for (ActionId a = 0; a < task_->num_actions(); ++a) {
        for (FactId f : task_->actions[a].add)
            achievers_[f].push_back(a);
        for (FactId f : task_->actions[a].pre)
            consumers_[f].push_back(a);
    }
}

CostTable RelaxationModel::propagate(const FactSet &state, bool unit_costs,
                                     ActionId excluded) const {
    CostTable table;
    RelaxationScratch scratch;
    propagate(state, unit_costs, excluded, table, scratch);
    return table;
}

void RelaxationModel::propagate(const FactSet &state, bool unit_costs, ActionId excluded,
                                CostTable &table, RelaxationScratch &scratch) const {
    const GroundedTask &task = *task_;
    const int num_facts = task.num_facts();
    const ActionId num_actions = task.num_actions();
    auto cost_of = [&](ActionId a) { return unit_costs ? Cost{1} : task.actions[a].cost; };

    table.fact_cost.assign(num_facts, kInfiniteCost);
    table.action_cost.assign(num_actions, kInfiniteCost);
    table.best_supporter.assign(num_facts, kNoAction);

    std::vector<std::pair<Cost, FactId>> &heap = scratch.heap;
    std::vector<int> &unsatisfied = scratch.unsatisfied;
    std::vector<Cost> &pre_sum = scratch.pre_sum;
    heap.clear();
    unsatisfied.resize(num_actions);
    pre_sum.assign(num_actions, 0);
    auto push = [&](Cost cost, FactId f) {
        heap.emplace_back(cost, f);
        std::push_heap(heap.begin(), heap.end(), std::greater<>());
    };

    auto relax_action = [&](ActionId a) {
        table.action_cost[a] = pre_sum[a];
        const Cost reach = pre_sum[a] + cost_of(a);
        for (FactId f : task.actions[a].add) {
            if (reach < table.fact_cost[f]) {
                table.fact_cost[f] = reach;
                push(reach, f);
            }
        }
    };

    for (ActionId a = 0; a < num_actions; ++a)
        unsatisfied[a] = static_cast<int>(task.actions[a].pre.size());
    for (FactId f = 0; f < num_facts; ++f)
        if (state.test(f))
            table.fact_cost[f] = 0;
    // Facts of the state settle first at cost 0 without going through the heap.
    for (ActionId a = 0; a < num_actions; ++a)
        if (a != excluded && unsatisfied[a] == 0)
            relax_action(a);
    for (FactId f = 0; f < num_facts; ++f) {
        if (table.fact_cost[f] != 0)
            continue;
        for (ActionId a : consumers_[f])
            if (a != excluded && --unsatisfied[a] == 0)
                relax_action(a);
    }

    // Every action adds at least its own cost (>= 1) to its preconditions'
    // sum, so facts settle in nondecreasing cost order as in Dijkstra.
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), std::greater<>());
        auto [cost, f] = heap.back();
        heap.pop_back();
        if (cost != table.fact_cost[f])
            continue;
        for (ActionId a : consumers_[f]) {
            if (a == excluded)
                continue;
            pre_sum[a] += cost;
            if (--unsatisfied[a] == 0)
                relax_action(a);
        }
    }

    for (FactId f = 0; f < num_facts; ++f) {
        if (table.fact_cost[f] == 0 || table.fact_cost[f] == kInfiniteCost)
            continue;
        // Ties go to the lowest action index.
        for (ActionId a : achievers_[f]) {
            if (a == excluded || table.action_cost[a] == kInfiniteCost)
                continue;
            if (table.action_cost[a] + cost_of(a) == table.fact_cost[f]) {
                table.best_supporter[f] = a;
                break;
            }
        }
    }

    table.goal_cost = 0;
    for (FactId g : task.goal) {
        if (table.fact_cost[g] == kInfiniteCost) {
            table.goal_cost = kInfiniteCost;
            break;
        }
        table.goal_cost += table.fact_cost[g];
    }
}

RelaxedPlan RelaxationModel::extract(const FactSet &state, const CostTable &table) const {
    RelaxedPlan plan;
    RelaxationScratch scratch;
    extract(state, table, plan, scratch);
    return plan;
}

void RelaxationModel::extract(const FactSet &state, const CostTable &table, RelaxedPlan &plan,
                              RelaxationScratch &scratch) const {
    if (!table.goal_reachable())
        throw UnreachableGoal();
    const GroundedTask &task = *task_;
    plan.actions.clear();
    plan.total_cost = 0;
    plan.size = 0;
    std::vector<char> &selected = scratch.selected;
    std::vector<char> &visited = scratch.visited;
    selected.assign(task.num_actions(), 0);
    visited.assign(task.num_facts(), 0);

    // Iterative post-order so each action follows its preconditions' supporters.
    auto &stack = scratch.stack;
    stack.clear();
    auto open_fact = [&](FactId f) {
        if (visited[f] || state.test(f))
            return;
        visited[f] = 1;
        ActionId a = table.best_supporter[f];
        if (a == kNoAction || selected[a])
            return;
        selected[a] = 1;
        stack.emplace_back(a, 0);
    };

    for (FactId g : task.goal) {
        open_fact(g);
        while (!stack.empty()) {
            auto &[a, next_pre] = stack.back();
            const TaskAction &action = task.actions[a];
            if (next_pre < action.pre.size()) {
                open_fact(action.pre[next_pre++]);
                continue;
            }
            plan.actions.push_back(a);
            plan.total_cost += action.cost;
            ++plan.size;
            stack.pop_back();
        }
    }
}

CostTable hadd_propagate(const GroundedTask &task, const FactSet &state, bool unit_costs,
                         ActionId excluded) {
    RelaxationModel model(std::make_shared<const GroundedTask>(task));
    return model.propagate(state, unit_costs, excluded);
}

RelaxedPlan extract_relaxed_plan(const GroundedTask &task, const FactSet &state,
                                 const CostTable &table) {
    RelaxationModel model(std::make_shared<const GroundedTask>(task));
    return model.extract(state, table);
}

RelaxedPlanHeuristic::RelaxedPlanHeuristic(std::shared_ptr<const GroundedTask> task,
                                           HeuristicKind kind)
    : model_(std::move(task)), kind_(kind) {
    if (kind != HeuristicKind::HaddCost && kind != HeuristicKind::RpCost &&
        kind != HeuristicKind::RpSizeCheap && kind != HeuristicKind::RpSizeShort)
        throw std::invalid_argument("relaxed-plan heuristic cannot be of kind " +
                                    to_string(kind));
}

std::optional<RelaxedPlan> RelaxedPlanHeuristic::relaxed_plan(const StateKey &state,
                                                              ActionId excluded) const {
    FactSet facts = FactSet::from_key(state, model_.task().num_facts());
    CostTable table =
        model_.propagate(facts, kind_ == HeuristicKind::RpSizeShort, excluded);
    if (!table.goal_reachable())
        return std::nullopt;
    return model_.extract(facts, table);
}

HeuristicValue RelaxedPlanHeuristic::value_of(const StateKey &state, ActionId excluded) {
    FactSet facts = FactSet::from_key(state, model_.task().num_facts());
    model_.propagate(facts, kind_ == HeuristicKind::RpSizeShort, excluded, table_, scratch_);
    if (!table_.goal_reachable())
        return HeuristicValue::infinite();
    model_.extract(facts, table_, plan_, scratch_);
    if (kind_ == HeuristicKind::HaddCost)
        return {table_.goal_cost, plan_.size};
    return {plan_.total_cost, plan_.size};
}

HeuristicValue RelaxedPlanHeuristic::compute(const StateKey &state) {
    return value_of(state, kNoAction);
}

HeuristicValue RelaxedPlanHeuristic::estimate_without(const StateKey &state,
                                                      ActionId excluded) {
    if (excluded < 0 || excluded >= model_.task().num_actions())
        throw std::out_of_range("excluded action out of range");
    ++excluding_computations_;
    return value_of(state, excluded);
}

} // namespace surrogate
