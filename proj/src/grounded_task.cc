#include "surrogate/grounded_task.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <unordered_set>

namespace surrogate {

namespace {
void sort_unique(std::vector<FactId> &facts) {
    std::sort(facts.begin(), facts.end());
    facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
}

bool valid_name(const std::string &name) {
    if (name.empty())
        return false;
    return std::none_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isspace(c) || c == '#';
    });
}

void check_indices(const std::vector<FactId> &facts, int num_facts,
                   const std::string &where) {
    for (FactId f : facts)
        if (f < 0 || f >= num_facts)
            throw TaskError(where + ": fact index " + std::to_string(f) + " out of range");
    if (!std::is_sorted(facts.begin(), facts.end()) ||
        std::adjacent_find(facts.begin(), facts.end()) != facts.end())
        throw TaskError(where + ": fact list not sorted and duplicate-free");
}
} // namespace

void GroundedTask::canonicalize() {
    sort_unique(init);
    sort_unique(goal);
    for (TaskAction &action : actions) {
        sort_unique(action.pre);
        sort_unique(action.add);
        sort_unique(action.del);
    }
}

void GroundedTask::validate() const {
    if (!valid_name(name))
        throw TaskError("task name must be a non-empty token");
    std::unordered_set<std::string> seen;
    for (const std::string &fact : facts) {
        if (!valid_name(fact))
            throw TaskError("fact name must be a non-empty token");
        if (!seen.insert(fact).second)
            throw TaskError("duplicate fact name '" + fact + "'");
    }
    check_indices(init, num_facts(), "init");
    check_indices(goal, num_facts(), "goal");
    seen.clear();
    for (const TaskAction &action : actions) {
        const std::string where = "action '" + action.name + "'";
        if (!valid_name(action.name))
            throw TaskError("action name must be a non-empty token");
        if (!seen.insert(action.name).second)
            throw TaskError("duplicate action name '" + action.name + "'");
        if (action.cost < 1)
            throw TaskError(where + ": cost must be >= 1");
        check_indices(action.pre, num_facts(), where + " pre");
        check_indices(action.add, num_facts(), where + " add");
        check_indices(action.del, num_facts(), where + " del");
        for (FactId f : action.add)
            if (std::binary_search(action.del.begin(), action.del.end(), f))
                throw TaskError(where + ": fact " + std::to_string(f) +
                                " both added and deleted");
    }
}

// ------------------------------------------------------------------ FactSet

FactSet::FactSet(int num_facts)
    : num_facts_(num_facts), words_((num_facts + 63) / 64, 0) {}

FactSet FactSet::from_key(const StateKey &key, int num_facts) {
    FactSet set(num_facts);
    std::copy(key.words().begin(), key.words().end(), set.words_.begin());
    return set;
}

bool FactSet::contains_all(const FactSet &other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & other.words_[i]) != other.words_[i])
            return false;
    return true;
}

void FactSet::subtract(const FactSet &other) {
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~other.words_[i];
}

void FactSet::unite(const FactSet &other) {
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= other.words_[i];
}

std::vector<FactId> FactSet::members() const {
    std::vector<FactId> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w) {
            out.push_back(static_cast<FactId>(i * 64 + std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

FactSet make_fact_set(int num_facts, const std::vector<FactId> &facts) {
    FactSet set(num_facts);
    for (FactId f : facts)
        set.set(f);
    return set;
}

// ---------------------------------------------------------- GroundedProblem

GroundedProblem::GroundedProblem(std::shared_ptr<const GroundedTask> task)
    : task_(std::move(task)) {
    task_->validate();
    const int n = task_->num_facts();
    goal_ = make_fact_set(n, task_->goal);
    for (const TaskAction &action : task_->actions) {
        pre_.push_back(make_fact_set(n, action.pre));
        add_.push_back(make_fact_set(n, action.add));
        del_.push_back(make_fact_set(n, action.del));
    }
}

StateKey GroundedProblem::initial_state() const {
    return make_fact_set(task_->num_facts(), task_->init).key();
}

bool GroundedProblem::is_goal(const StateKey &state) const {
    return facts_of(state).contains_all(goal_);
}

bool GroundedProblem::applicable(const StateKey &state, ActionId action) const {
    return facts_of(state).contains_all(pre_[action]);
}

StateKey GroundedProblem::apply(const StateKey &state, ActionId action) const {
    FactSet next = facts_of(state);
    next.subtract(del_[action]);
    next.unite(add_[action]);
    return next.key();
}

FactSet GroundedProblem::facts_of(const StateKey &state) const {
    return FactSet::from_key(state, task_->num_facts());
}

std::vector<OutEdge> GroundedProblem::expand(const StateKey &state) const {
    std::vector<OutEdge> edges;
    const FactSet current = facts_of(state);
    for (ActionId a = 0; a < task_->num_actions(); ++a) {
        if (!current.contains_all(pre_[a]))
            continue;
        FactSet next = current;
        next.subtract(del_[a]);
        next.unite(add_[a]);
        edges.push_back({a, next.key(), task_->actions[a].cost});
    }
    return edges;
}

std::optional<CostBounds> GroundedProblem::cost_bounds() const {
    if (task_->actions.empty())
        return std::nullopt;
    CostBounds bounds{kInfiniteCost, 0};
    for (const TaskAction &action : task_->actions) {
        bounds.min_edge_cost = std::min(bounds.min_edge_cost, action.cost);
        bounds.max_edge_cost = std::max(bounds.max_edge_cost, action.cost);
    }
    return bounds;
}

std::string GroundedProblem::action_name(ActionId action) const {
    return task_->actions.at(action).name;
}

std::string GroundedProblem::describe() const {
    return "task(" + task_->name + ")";
}

GroundedProblem ground_problem(std::shared_ptr<const GroundedTask> task) {
    return GroundedProblem(std::move(task));
}

bool validate_plan(const GroundedTask &task, const std::vector<ActionId> &actions) {
    const int n = task.num_facts();
    FactSet state = make_fact_set(n, task.init);
    for (ActionId a : actions) {
        if (a < 0 || a >= task.num_actions())
            return false;
        const TaskAction &action = task.actions[a];
        if (!state.contains_all(make_fact_set(n, action.pre)))
            return false;
        state.subtract(make_fact_set(n, action.del));
        state.unite(make_fact_set(n, action.add));
    }
    return state.contains_all(make_fact_set(n, task.goal));
}

} // namespace surrogate
