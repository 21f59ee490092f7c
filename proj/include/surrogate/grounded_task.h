#ifndef SURROGATE_GROUNDED_TASK_H
#define SURROGATE_GROUNDED_TASK_H

#include "graph_core.h"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace surrogate {

using FactId = int;

struct TaskAction {
    std::string name;
    Cost cost = 1;
    // Sorted, duplicate-free fact indices.
    std::vector<FactId> pre;
    std::vector<FactId> add;
    std::vector<FactId> del;

    friend bool operator==(const TaskAction &, const TaskAction &) = default;
};

// STRIPS task with positive integer action costs.
struct GroundedTask {
    std::string name;
    std::vector<std::string> facts;
    std::vector<FactId> init;
    std::vector<FactId> goal;
    std::vector<TaskAction> actions;

    int num_facts() const { return static_cast<int>(facts.size()); }
    ActionId num_actions() const { return static_cast<ActionId>(actions.size()); }

    // Sorts and deduplicates every fact list.
    void canonicalize();
    // Throws TaskError on the first violated invariant.
    void validate() const;

    friend bool operator==(const GroundedTask &, const GroundedTask &) = default;
};

class TaskError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Packed fact set; one bit per fact.
class FactSet {
public:
    FactSet() = default;
    explicit FactSet(int num_facts);
    static FactSet from_key(const StateKey &key, int num_facts);

    bool test(FactId f) const { return (words_[f >> 6] >> (f & 63)) & 1u; }
    void set(FactId f) { words_[f >> 6] |= std::uint64_t{1} << (f & 63); }
    void reset(FactId f) { words_[f >> 6] &= ~(std::uint64_t{1} << (f & 63)); }

    bool contains_all(const FactSet &other) const;
    void subtract(const FactSet &other);
    void unite(const FactSet &other);

    StateKey key() const { return StateKey(words_); }
    std::vector<FactId> members() const;

    friend bool operator==(const FactSet &, const FactSet &) = default;

private:
    int num_facts_ = 0;
    StateKey::Words words_;
};

FactSet make_fact_set(int num_facts, const std::vector<FactId> &facts);

/*
  State space of a grounded task. States are fact sets; the StateKey holds
  the packed bits themselves, so key equality is fact-set equality.
*/
class GroundedProblem : public SearchProblem {
public:
    explicit GroundedProblem(std::shared_ptr<const GroundedTask> task);

    StateKey initial_state() const override;
    bool is_goal(const StateKey &state) const override;
    std::vector<OutEdge> expand(const StateKey &state) const override;
    std::optional<CostBounds> cost_bounds() const override;
    std::string action_name(ActionId action) const override;
    std::string describe() const override;

    const GroundedTask &task() const { return *task_; }
    std::shared_ptr<const GroundedTask> shared_task() const { return task_; }

    bool applicable(const StateKey &state, ActionId action) const;
    StateKey apply(const StateKey &state, ActionId action) const;
    FactSet facts_of(const StateKey &state) const;

private:
    std::shared_ptr<const GroundedTask> task_;
    FactSet goal_;
    std::vector<FactSet> pre_;
    std::vector<FactSet> add_;
    std::vector<FactSet> del_;
};

GroundedProblem ground_problem(std::shared_ptr<const GroundedTask> task);

// True iff the plan is executable from init and ends in a goal state.
bool validate_plan(const GroundedTask &task, const std::vector<ActionId> &actions);

// Task text format.
class TaskParseError : public TaskError {
public:
    TaskParseError(int line, const std::string &message);
    int line() const { return line_; }

private:
    int line_;
};

GroundedTask parse_task(const std::string &text);
std::string serialize_task(const GroundedTask &task);
GroundedTask load_task_file(const std::string &path);

} // namespace surrogate

#endif
