#include "surrogate/search_engine.h"

#include <algorithm>
#include <chrono>
#include <queue>
#include <stdexcept>

namespace surrogate {

void SearchLimits::validate() const {
    if ((max_expansions && *max_expansions == 0) || (max_wall_ms && *max_wall_ms == 0) ||
        (max_nodes_in_memory && *max_nodes_in_memory == 0))
        throw std::invalid_argument("search limits must be positive when set");
}

std::string to_string(SearchStatus status) {
    switch (status) {
    case SearchStatus::ProvedOptimal: return "proved_optimal";
    case SearchStatus::BudgetExhausted: return "budget_exhausted";
    case SearchStatus::ExhaustedNoSolution: return "exhausted_no_solution";
    }
    return "?";
}

SearchStatus parse_search_status(const std::string &text) {
    if (text == "proved_optimal") return SearchStatus::ProvedOptimal;
    if (text == "budget_exhausted") return SearchStatus::BudgetExhausted;
    if (text == "exhausted_no_solution") return SearchStatus::ExhaustedNoSolution;
    throw std::invalid_argument("unknown search status '" + text + "'");
}

bool bound_test(const SearchNode &n, const HeuristicValue &prune_h, const Incumbent &inc) {
    if (inc.bound_cost == kInfiniteCost)
        return false;
    if (prune_h.is_infinite())
        return true;
    return n.g_cost + prune_h.cost_to_go >= inc.bound_cost;
}

const ClosedMap::Entry *ClosedMap::find(const StateKey &state) const {
    auto it = entries_.find(state);
    return it == entries_.end() ? nullptr : &it->second;
}

bool ClosedMap::insert(const StateKey &state, Entry entry) {
    return entries_.emplace(state, entry).second;
}

DuplicateVerdict duplicate_test(const SearchNode &n, ClosedMap &closed) {
    if (closed.insert(n.state, {n.g_cost, n.g_size}))
        return DuplicateVerdict::Fresh;
    ClosedMap::Entry &entry = closed[n.state];
    if (n.g_cost >= entry.best_g_cost && n.g_size >= entry.best_g_size)
        return DuplicateVerdict::Prune;
    entry.best_g_cost = std::min(entry.best_g_cost, n.g_cost);
    entry.best_g_size = std::min(entry.best_g_size, n.g_size);
    return DuplicateVerdict::Reopen;
}

bool plateau_detect(const SearchNode &n, const SearchNode *parent,
                    const EvaluatorConfig &cfg, const Rational &plateau_increment) {
    if (n.is_root() || parent == nullptr)
        return false;
    const Rational increment = g_component(n, cfg) - g_component(*parent, cfg);
    if (cfg.kind == EvaluatorKind::Cost || cfg.kind == EvaluatorKind::WeightedCost)
        return increment <= plateau_increment;
    return increment == Rational(0);
}

Usefulness Usefulness::of(const HeuristicValue &without, const HeuristicValue &child) {
    if (child.is_infinite())
        return {Kind::NegativeInfinite, 0};
    if (without.is_infinite())
        return {Kind::PositiveInfinite, 0};
    return {Kind::Finite, without.cost_to_go - child.cost_to_go};
}

bool Usefulness::positive() const {
    return kind == Kind::PositiveInfinite || (kind == Kind::Finite && value > 0);
}

LookaheadChoice useful_lookahead(const StateKey &state, const std::vector<OutEdge> &edges,
                                 Heuristic &h, OperatorExcludingHeuristic &without) {
    LookaheadChoice choice;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        UsefulnessEntry entry;
        entry.action = edges[i].action;
        entry.without = without.estimate_without(state, edges[i].action);
        entry.child = h.estimate(edges[i].target);
        entry.usefulness = Usefulness::of(entry.without, entry.child);
        if (entry.usefulness.positive() &&
            (!choice.chosen || choice.table[*choice.chosen].usefulness < entry.usefulness))
            choice.chosen = i;
        choice.table.push_back(entry);
    }
    return choice;
}

namespace {

struct OpenEntry {
    Priority priority;
    NodeId node;

    friend bool operator>(const OpenEntry &a, const OpenEntry &b) {
        return b.priority < a.priority;
    }
};

class BranchAndBound {
public:
    BranchAndBound(const SearchProblem &problem, const SearchConfig &cfg, Heuristic &h,
                   Heuristic &prune_h, OperatorExcludingHeuristic *without,
                   const SolutionListener &listener)
        : problem_(problem), cfg_(cfg), h_(h), prune_h_(prune_h), without_(without),
          listener_(listener), start_(std::chrono::steady_clock::now()) {
        cfg_.evaluator.validate();
        cfg_.limits.validate();
        std::optional<CostBounds> bounds = problem_.cost_bounds();
        if (cfg_.evaluator.kind == EvaluatorKind::Hybrid && bounds &&
            cfg_.evaluator.max_cost < bounds->max_edge_cost)
            throw std::invalid_argument(
                "hybrid max_cost " + std::to_string(cfg_.evaluator.max_cost) +
                " is below the maximum edge cost " + std::to_string(bounds->max_edge_cost));
        if (cfg_.lookahead) {
            if (!without_)
                throw std::invalid_argument(
                    "lookahead needs an operator-excluding heuristic");
            Rational tau = cfg_.plateau_tau ? *cfg_.plateau_tau : epsilon_of(problem_);
            if (tau < 0)
                throw std::invalid_argument("plateau tau must be >= 0");
            Cost max_cost = bounds ? bounds->max_edge_cost : cfg_.evaluator.max_cost;
            plateau_increment_ = tau * max_cost;
        }
    }

    SearchOutcome run() {
        NodeId root = arena_.add_root(problem_.initial_state());
        push(root, estimate(arena_[root].state));
        while (!open_.empty()) {
            if (budget_exhausted()) {
                outcome_.status = SearchStatus::BudgetExhausted;
                return finish();
            }
            NodeId id = open_.top().node;
            open_.pop();
            process(id, cfg_.lookahead);
        }
        if (outcome_.incumbent.plan) {
            outcome_.status = SearchStatus::ProvedOptimal;
            outcome_.stats.proof_expansions = stats().expansions;
        } else {
            outcome_.status = SearchStatus::ExhaustedNoSolution;
        }
        return finish();
    }

private:
    SearchStats &stats() { return outcome_.stats; }

    std::uint64_t elapsed_ms() const {
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start_)
                .count());
    }

    std::uint64_t reported_ms() const { return cfg_.record_wall_clock ? elapsed_ms() : 0; }

    bool budget_exhausted() const {
        const SearchLimits &limits = cfg_.limits;
        if (limits.max_expansions && outcome_.stats.expansions >= *limits.max_expansions)
            return true;
        if (limits.max_nodes_in_memory && arena_.size() >= *limits.max_nodes_in_memory)
            return true;
        if (limits.max_wall_ms && elapsed_ms() >= *limits.max_wall_ms)
            return true;
        return false;
    }

    SearchOutcome finish() {
        stats().wall_ms = reported_ms();
        return std::move(outcome_);
    }

    HeuristicValue estimate(const StateKey &state) {
        ++stats().heuristic_calls;
        return h_.estimate(state);
    }

    void push(NodeId id, const HeuristicValue &value) {
        std::optional<Priority> priority = evaluate(arena_[id], cfg_.evaluator, value);
        if (priority)
            open_.push({*priority, id});
    }

    // Bound, goal and duplicate tests; true iff the node is to be expanded.
    bool admit(NodeId id) {
        const SearchNode &node = arena_[id];
        Incumbent &inc = outcome_.incumbent;
        if (bound_test(node, prune_h_.estimate(node.state), inc)) {
            ++stats().bound_prunes;
            return false;
        }
        ++stats().goal_tests;
        if (problem_.is_goal(node.state)) {
            if (node.g_cost < inc.bound_cost)
                report(id);
            return false;
        }
        switch (duplicate_test(node, closed_)) {
        case DuplicateVerdict::Fresh:
            return true;
        case DuplicateVerdict::Prune:
            ++stats().duplicates_pruned;
            return false;
        case DuplicateVerdict::Reopen:
            ++stats().reopenings;
            return true;
        }
        return false;
    }

    void report(NodeId id) {
        const SearchNode &node = arena_[id];
        Incumbent &inc = outcome_.incumbent;
        SolutionEvent event;
        event.cost = node.g_cost;
        event.size = node.g_size;
        event.expansions_at_event = stats().expansions;
        event.wall_ms_at_event = reported_ms();
        event.plan = reconstruct_plan(arena_, id);
        inc.plan = event.plan;
        inc.bound_cost = node.g_cost;
        if (!stats().discovery_expansions) {
            stats().discovery_expansions = event.expansions_at_event;
            stats().discovery_ms = event.wall_ms_at_event;
        }
        outcome_.events.push_back(event);
        if (listener_)
            listener_(outcome_.events.back());
    }

    void process(NodeId id, bool allow_lookahead) {
        if (!admit(id))
            return;
        const SearchNode node = arena_[id];
        ++stats().expansions;
        std::vector<OutEdge> edges = problem_.expand(node.state);

        const SearchNode *parent = node.is_root() ? nullptr : &arena_[node.parent];
        if (!allow_lookahead ||
            !plateau_detect(node, parent, cfg_.evaluator, plateau_increment_)) {
            for (const OutEdge &edge : edges) {
                NodeId child = arena_.extend(id, edge);
                ++stats().generations;
                push(child, estimate(edge.target));
            }
            return;
        }

        ++stats().lookahead_invocations;
        LookaheadChoice choice = useful_lookahead(node.state, edges, h_, *without_);
        stats().heuristic_calls += 2 * edges.size();
        std::vector<NodeId> children;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            NodeId child = arena_.extend(id, edges[i]);
            ++stats().generations;
            children.push_back(child);
            push(child, choice.table[i].child);
        }
        if (choice.chosen && !budget_exhausted())
            process(children[*choice.chosen], false);
    }

    const SearchProblem &problem_;
    SearchConfig cfg_;
    Heuristic &h_;
    Heuristic &prune_h_;
    OperatorExcludingHeuristic *without_;
    const SolutionListener &listener_;
    std::chrono::steady_clock::time_point start_;
    Rational plateau_increment_{0};

    NodeArena arena_;
    ClosedMap closed_;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<>> open_;
    SearchOutcome outcome_;
};

} // namespace

SearchOutcome best_first_bnb(const SearchProblem &problem, const SearchConfig &cfg,
                             Heuristic &h, Heuristic &prune_h,
                             OperatorExcludingHeuristic *without,
                             const SolutionListener &listener) {
    return BranchAndBound(problem, cfg, h, prune_h, without, listener).run();
}

} // namespace surrogate
