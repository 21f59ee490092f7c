#include "doctest.h"

#include "oracles.h"
#include "random_tasks.h"

#include "surrogate/oracle.h"
#include "surrogate/relaxed_plan.h"
#include "surrogate/search_engine.h"
#include "surrogate/traps.h"
#include "surrogate/travel.h"

using namespace surrogate;

namespace {

// Small explicit graph over integer states.
class ExplicitGraph : public SearchProblem {
public:
    struct Arc {
        std::uint64_t from;
        std::uint64_t to;
        Cost cost;
    };

    ExplicitGraph(std::vector<Arc> arcs, std::uint64_t goal) : arcs_(std::move(arcs)), goal_(goal) {}

    StateKey initial_state() const override { return StateKey(0); }
    bool is_goal(const StateKey &s) const override { return s.word(0) == goal_; }
    std::vector<OutEdge> expand(const StateKey &s) const override {
        std::vector<OutEdge> out;
        for (std::size_t i = 0; i < arcs_.size(); ++i)
            if (arcs_[i].from == s.word(0))
                out.push_back({static_cast<ActionId>(i), StateKey(arcs_[i].to), arcs_[i].cost});
        return out;
    }
    std::optional<CostBounds> cost_bounds() const override {
        CostBounds b{kInfiniteCost, 0};
        for (const Arc &a : arcs_) {
            b.min_edge_cost = std::min(b.min_edge_cost, a.cost);
            b.max_edge_cost = std::max(b.max_edge_cost, a.cost);
        }
        return b;
    }
    std::string describe() const override { return "explicit"; }

private:
    std::vector<Arc> arcs_;
    std::uint64_t goal_;
};

SearchConfig config(EvaluatorKind kind, TieBreak tb = TieBreak::None) {
    SearchConfig cfg;
    cfg.evaluator.kind = kind;
    cfg.evaluator.tiebreak = tb;
    cfg.record_wall_clock = false;
    return cfg;
}

SearchOutcome run_zero(const SearchProblem &problem, const SearchConfig &cfg) {
    ZeroHeuristic h, prune;
    return best_first_bnb(problem, cfg, h, prune);
}

SearchNode node_at(Cost g_cost, Cost g_size, StateKey state = StateKey(0)) {
    SearchNode n;
    n.state = state;
    n.g_cost = g_cost;
    n.g_size = g_size;
    return n;
}

ActionId action_named(const GroundedTask &task, const std::string &name) {
    for (ActionId a = 0; a < task.num_actions(); ++a)
        if (task.actions[a].name == name)
            return a;
    FAIL("no action " << name);
    return kNoAction;
}

void check_anytime(const SearchOutcome &out) {
    for (std::size_t i = 1; i < out.events.size(); ++i) {
        CHECK(out.events[i].cost < out.events[i - 1].cost);
        CHECK(out.events[i].expansions_at_event >= out.events[i - 1].expansions_at_event);
    }
    if (!out.events.empty()) {
        REQUIRE(out.incumbent.plan);
        CHECK(out.events.back().cost == out.incumbent.bound_cost);
        CHECK(out.incumbent.plan->total_cost == out.incumbent.bound_cost);
        CHECK(out.stats.discovery_expansions == out.events.front().expansions_at_event);
    } else {
        CHECK_FALSE(out.incumbent.plan);
        CHECK(out.incumbent.bound_cost == kInfiniteCost);
    }
    CHECK(out.stats.generations >= out.stats.expansions);
    if (out.stats.discovery_expansions && out.stats.proof_expansions)
        CHECK(*out.stats.discovery_expansions <= *out.stats.proof_expansions);
}

} // namespace

TEST_CASE("bound_test") {
    Incumbent none;
    CHECK_FALSE(bound_test(node_at(1000, 1), {0, 0}, none));
    CHECK_FALSE(bound_test(node_at(1000, 1), HeuristicValue::infinite(), none));
    Incumbent nine;
    nine.bound_cost = 9;
    CHECK(bound_test(node_at(9, 2), {0, 0}, nine));
    CHECK_FALSE(bound_test(node_at(5, 2), {3, 1}, nine));
    CHECK(bound_test(node_at(5, 2), {4, 1}, nine));
    CHECK(bound_test(node_at(0, 0), HeuristicValue::infinite(), nine));
}

TEST_CASE("duplicate_test") {
    ClosedMap closed;
    CHECK(duplicate_test(node_at(5, 5, StateKey(1)), closed) == DuplicateVerdict::Fresh);
    CHECK(duplicate_test(node_at(5, 5, StateKey(1)), closed) == DuplicateVerdict::Prune);
    CHECK(duplicate_test(node_at(6, 7, StateKey(1)), closed) == DuplicateVerdict::Prune);
    CHECK(duplicate_test(node_at(3, 9, StateKey(1)), closed) == DuplicateVerdict::Reopen);
    CHECK(closed.find(StateKey(1))->best_g_cost == 3);
    CHECK(closed.find(StateKey(1))->best_g_size == 5);
    CHECK(duplicate_test(node_at(4, 4, StateKey(1)), closed) == DuplicateVerdict::Reopen);
    CHECK(closed.find(StateKey(1))->best_g_cost == 3);
    CHECK(closed.find(StateKey(1))->best_g_size == 4);
    CHECK(closed.size() == 1);
    CHECK(closed.find(StateKey(2)) == nullptr);
}

TEST_CASE("diamond reopening reaches the oracle optimum") {
    // 0 -> 1 -> 2 costs {1, 1}, 0 -> 2 costs 3, then 2 -> 3 is the goal edge.
    ExplicitGraph diamond({{0, 1, 1}, {1, 2, 1}, {0, 2, 3}, {2, 3, 1}}, 3);
    SearchOutcome out = run_zero(diamond, config(EvaluatorKind::Size));
    CHECK(out.stats.reopenings >= 1);
    CHECK(out.status == SearchStatus::ProvedOptimal);
    REQUIRE(out.events.size() == 2);
    CHECK(out.events[0].cost == 4);
    CHECK(out.events[1].cost == 3);
    auto oracle = testing_support::optimum(diamond);
    REQUIRE(oracle);
    CHECK(out.incumbent.bound_cost == oracle->cost);
    CHECK(dijkstra_oracle(diamond, 100).goal_optimum()->cost == 3);
}

TEST_CASE("cycle trap k=4, goal -2") {
    CycleTrap trap = cycle_trap({4, 0, 14});

    SearchOutcome size = run_zero(trap, config(EvaluatorKind::Size));
    CHECK(size.status == SearchStatus::ProvedOptimal);
    REQUIRE(size.incumbent.plan);
    CHECK(size.incumbent.plan->actions ==
          std::vector<ActionId>{CycleTrap::kDecrement, CycleTrap::kDecrement});
    CHECK(size.incumbent.bound_cost == 9);
    check_anytime(size);

    std::vector<SolutionEvent> heard;
    ZeroHeuristic h, prune;
    SearchOutcome cost = best_first_bnb(trap, config(EvaluatorKind::Cost), h, prune, nullptr,
                                        [&](const SolutionEvent &e) { heard.push_back(e); });
    CHECK(cost.status == SearchStatus::ProvedOptimal);
    CHECK(cost.incumbent.bound_cost == 9);
    CHECK(*cost.stats.discovery_expansions >= 9);
    REQUIRE(cost.events.size() == 1);
    CHECK(cost.events[0].cost == 9);
    CHECK(cost.events[0].size == 2);
    REQUIRE(heard.size() == 1);
    CHECK(heard[0].cost == 9);
    check_anytime(cost);
}

TEST_CASE("unsolvable task ends without a solution") {
    GroundedTask task;
    task.name = "stuck";
    task.facts = {"p", "q", "g"};
    task.init = {0};
    task.goal = {2};
    task.actions.push_back({"make_q", 1, {0}, {1}, {0}});
    task.actions.push_back({"make_p", 1, {1}, {0}, {1}});
    GroundedProblem problem = ground_problem(std::make_shared<const GroundedTask>(task));
    SearchOutcome out = run_zero(problem, config(EvaluatorKind::Cost));
    CHECK(out.status == SearchStatus::ExhaustedNoSolution);
    CHECK_FALSE(out.incumbent.plan);
    CHECK(out.events.empty());
    CHECK_FALSE(out.stats.discovery_expansions);
    CHECK_FALSE(out.stats.proof_expansions);
}

TEST_CASE("plateau_detect") {
    EvaluatorConfig size;
    size.kind = EvaluatorKind::Size;
    SearchNode parent = node_at(5, 2);
    SearchNode flat = node_at(6, 2);
    flat.parent = 0;
    SearchNode up = node_at(6, 3);
    up.parent = 0;
    CHECK_FALSE(plateau_detect(parent, nullptr, size, Rational(0)));
    CHECK(plateau_detect(flat, &parent, size, Rational(0)));
    CHECK_FALSE(plateau_detect(up, &parent, size, Rational(0)));

    EvaluatorConfig cost;
    SearchNode eps = node_at(6, 3);
    eps.parent = 0;
    SearchNode big = node_at(7005, 3);
    big.parent = 0;
    CHECK(plateau_detect(eps, &parent, cost, Rational(1)));
    CHECK_FALSE(plateau_detect(big, &parent, cost, Rational(1)));
    CHECK_FALSE(plateau_detect(eps, &parent, cost, Rational(0)));
}

TEST_CASE("usefulness values") {
    using K = Usefulness::Kind;
    CHECK(Usefulness::of({10, 3}, {4, 2}) == Usefulness{K::Finite, 6});
    CHECK(Usefulness::of(HeuristicValue::infinite(), {4, 2}).kind == K::PositiveInfinite);
    CHECK(Usefulness::of({10, 3}, HeuristicValue::infinite()).kind == K::NegativeInfinite);
    CHECK(Usefulness::of(HeuristicValue::infinite(), HeuristicValue::infinite()).kind ==
          K::NegativeInfinite);
    CHECK(Usefulness{K::PositiveInfinite, 0}.positive());
    CHECK(Usefulness{K::Finite, 1}.positive());
    CHECK_FALSE(Usefulness{K::Finite, 0}.positive());
    CHECK(Usefulness{K::NegativeInfinite, 0} < Usefulness{K::Finite, -100});
    CHECK(Usefulness{K::Finite, 100} < Usefulness{K::PositiveInfinite, 0});
}

TEST_CASE("usefulness is infinite exactly for sole achievers") {
    // p holds; g is the goal. reach_g is the only achiever of g, side adds
    // an irrelevant fact, alt_a and alt_b are interchangeable achievers of h.
    GroundedTask task;
    task.name = "crafted";
    task.facts = {"p", "g", "q", "h"};
    task.init = {0};
    task.goal = {1, 3};
    task.actions.push_back({"reach_g", 1, {0}, {1}, {}});
    task.actions.push_back({"side", 1, {0}, {2}, {}});
    task.actions.push_back({"alt_a", 2, {0}, {3}, {}});
    task.actions.push_back({"alt_b", 2, {0}, {3}, {}});
    auto shared = std::make_shared<const GroundedTask>(task);
    GroundedProblem problem = ground_problem(shared);
    RelaxedPlanHeuristic h(shared, HeuristicKind::RpCost);
    StateKey init = problem.initial_state();
    LookaheadChoice choice = useful_lookahead(init, problem.expand(init), h, h);

    REQUIRE(choice.table.size() == 4);
    for (const UsefulnessEntry &entry : choice.table) {
        const bool sole = entry.action == 0;
        CHECK((entry.usefulness.kind == Usefulness::Kind::PositiveInfinite) == sole);
    }
    REQUIRE(choice.chosen);
    CHECK(choice.table[*choice.chosen].action == 0);
    // side makes no progress; removing a redundant achiever changes nothing.
    CHECK(choice.table[1].usefulness == Usefulness{Usefulness::Kind::Finite, 0});
    CHECK(choice.table[2].usefulness == Usefulness{Usefulness::Kind::Finite, 2});
    CHECK(choice.table[2].without == h.estimate(init));
    CHECK(h.excluding_computations() == 4);
}

TEST_CASE("rendezvous usefulness: boarding beats flying back") {
    TravelConfig cfg;
    cfg.passenger_start = {0, 0};
    cfg.plane_start = {1};
    auto task = std::make_shared<const GroundedTask>(rendezvous_task(cfg));
    GroundedProblem problem = ground_problem(task);
    StateKey s = problem.initial_state();
    s = problem.apply(s, action_named(*task, "fly_plane0_corner1_corner0"));
    s = problem.apply(s, action_named(*task, "board_p0_plane0_corner0"));

    RelaxedPlanHeuristic h(task, HeuristicKind::RpCost);
    LookaheadChoice choice = useful_lookahead(s, problem.expand(s), h, h);
    const ActionId board = action_named(*task, "board_p1_plane0_corner0");
    const ActionId back = action_named(*task, "fly_plane0_corner0_corner1");
    const UsefulnessEntry *board_entry = nullptr, *back_entry = nullptr;
    for (const UsefulnessEntry &e : choice.table) {
        if (e.action == board)
            board_entry = &e;
        if (e.action == back)
            back_entry = &e;
    }
    REQUIRE(board_entry);
    REQUIRE(back_entry);
    CHECK_FALSE(back_entry->usefulness.positive());
    CHECK(back_entry->usefulness < board_entry->usefulness);
    REQUIRE(choice.chosen);
    CHECK(choice.table[*choice.chosen].action == board);
}

TEST_CASE("limits end the run with a budget status") {
    CycleTrap trap = cycle_trap({10, 0, 1022});
    SearchConfig cfg = config(EvaluatorKind::Cost);
    cfg.limits.max_expansions = 10;
    SearchOutcome out = run_zero(trap, cfg);
    CHECK(out.status == SearchStatus::BudgetExhausted);
    CHECK(out.stats.expansions == 10);
    CHECK_FALSE(out.stats.proof_expansions);

    cfg.limits = {};
    cfg.limits.max_nodes_in_memory = 50;
    out = run_zero(trap, cfg);
    CHECK(out.status == SearchStatus::BudgetExhausted);

    cfg.limits = {};
    cfg.limits.max_expansions = 0;
    CHECK_THROWS_AS(run_zero(trap, cfg), std::invalid_argument);
}

TEST_CASE("configuration errors") {
    CycleTrap trap = cycle_trap({4, 0, 14});
    SearchConfig hybrid = config(EvaluatorKind::Hybrid);
    hybrid.evaluator.max_cost = 4;
    CHECK_THROWS_AS(run_zero(trap, hybrid), std::invalid_argument);
    hybrid.evaluator.max_cost = 8;
    CHECK(run_zero(trap, hybrid).incumbent.bound_cost == 9);

    SearchConfig look = config(EvaluatorKind::Size);
    look.lookahead = true;
    CHECK_THROWS_AS(run_zero(trap, look), std::invalid_argument);
    CHECK(parse_search_status(to_string(SearchStatus::BudgetExhausted)) ==
          SearchStatus::BudgetExhausted);
}

TEST_CASE("runs are deterministic and regression-locked") {
    CycleTrap trap = cycle_trap({10, 0, 1022});
    SearchOutcome c1 = run_zero(trap, config(EvaluatorKind::Cost));
    SearchOutcome c2 = run_zero(trap, config(EvaluatorKind::Cost));
    SearchOutcome s1 = run_zero(trap, config(EvaluatorKind::Size));
    CHECK(c1.stats == c2.stats);
    CHECK(c1.incumbent.bound_cost == 513);
    CHECK(s1.incumbent.bound_cost == 513);
    // Size finds the short wrap path almost at once, cost needs 514 dequeues;
    // both must then exhaust every state cheaper than the incumbent.
    CHECK(*c1.stats.discovery_expansions == 514);
    CHECK(*s1.stats.discovery_expansions == 4);
    CHECK(c1.stats.expansions == 514);
    CHECK(s1.stats.expansions == 514);

    TravelConfig tc;
    tc.passengers = 3;
    auto task = std::make_shared<const GroundedTask>(rendezvous_task(tc));
    GroundedProblem problem = ground_problem(task);
    SearchConfig cfg = config(EvaluatorKind::Cost);
    cfg.lookahead = true;
    cfg.limits.max_expansions = 3000;
    auto once = [&] {
        RelaxedPlanHeuristic h(task, HeuristicKind::RpCost);
        ZeroHeuristic prune;
        return best_first_bnb(problem, cfg, h, prune, &h);
    };
    SearchOutcome l1 = once();
    SearchOutcome l2 = once();
    CHECK(l1.stats == l2.stats);
    CHECK(l1.stats.lookahead_invocations > 0);
    REQUIRE(l1.events.size() == l2.events.size());
    for (std::size_t i = 0; i < l1.events.size(); ++i)
        CHECK(l1.events[i].plan == l2.events[i].plan);
}

TEST_CASE("property: cost-ordered discovery counts states cheaper than the optimum") {
    for (int k = 3; k <= 10; ++k) {
        const std::uint64_t n = std::uint64_t{1} << k;
        for (std::uint64_t goal : {std::uint64_t{1}, n / 3, n / 2, n - 2, n - 1}) {
            CycleTrap trap = cycle_trap({k, 0, goal});
            auto labels = testing_support::label_correcting(trap);
            const Cost opt = labels.at(StateKey(goal)).cost;
            std::uint64_t cheaper = 0, tied = 0;
            for (const auto &[s, l] : labels) {
                if (l.cost < opt)
                    ++cheaper;
                else if (l.cost == opt && !trap.is_goal(s))
                    ++tied;
            }
            SearchOutcome out = run_zero(trap, config(EvaluatorKind::Cost));
            CAPTURE(k);
            CAPTURE(goal);
            CHECK(*out.stats.discovery_expansions >= cheaper);
            CHECK(*out.stats.discovery_expansions <= cheaper + tied + out.stats.reopenings);
            CHECK(out.incumbent.bound_cost == opt);
        }
    }
}

TEST_CASE("property: anytime monotonicity and oracle agreement on random tasks") {
    const EvaluatorKind kinds[] = {EvaluatorKind::Cost, EvaluatorKind::Size,
                                   EvaluatorKind::CsSize, EvaluatorKind::Hybrid,
                                   EvaluatorKind::WeightedCost};
    const HeuristicKind heuristics[] = {HeuristicKind::Zero, HeuristicKind::HaddCost,
                                        HeuristicKind::RpCost, HeuristicKind::RpSizeCheap,
                                        HeuristicKind::RpSizeShort};
    for (unsigned seed = 100; seed < 130; ++seed) {
        auto task = std::make_shared<const GroundedTask>(testing_support::random_task(seed));
        GroundedProblem problem = ground_problem(task);
        auto oracle = testing_support::optimum(problem);
        for (EvaluatorKind kind : kinds) {
            for (HeuristicKind hk : heuristics) {
                SearchConfig cfg = config(kind);
                cfg.evaluator.max_cost = problem.cost_bounds()->max_edge_cost;
                cfg.evaluator.weight = 3;
                ZeroHeuristic zero, prune;
                std::unique_ptr<RelaxedPlanHeuristic> rp;
                Heuristic *h = &zero;
                if (hk != HeuristicKind::Zero) {
                    rp = std::make_unique<RelaxedPlanHeuristic>(task, hk);
                    h = rp.get();
                }
                SearchOutcome out = best_first_bnb(problem, cfg, *h, prune);
                CAPTURE(seed);
                CAPTURE(to_string(kind));
                CAPTURE(to_string(hk));
                check_anytime(out);
                if (oracle) {
                    CHECK(out.status == SearchStatus::ProvedOptimal);
                    CHECK(out.incumbent.bound_cost == oracle->cost);
                    REQUIRE(out.incumbent.plan);
                    CHECK(validate_plan(*task, out.incumbent.plan->actions));
                } else {
                    CHECK(out.status == SearchStatus::ExhaustedNoSolution);
                }
            }
        }
    }
}

TEST_CASE("property: admissible pruning keeps the optimum and saves expansions") {
    for (int k = 3; k <= 9; ++k) {
        for (std::uint64_t goal = 1; goal < (std::uint64_t{1} << k); goal += 3) {
            CycleTrapConfig tc{k, 0, goal};
            CycleTrap trap = cycle_trap(tc);
            for (EvaluatorKind kind : {EvaluatorKind::Cost, EvaluatorKind::Size}) {
                SearchOutcome plain = run_zero(trap, config(kind));
                ZeroHeuristic h;
                ExactCycleHeuristic exact(tc);
                SearchOutcome pruned = best_first_bnb(trap, config(kind), h, exact);
                CHECK(plain.incumbent.bound_cost == pruned.incumbent.bound_cost);
                CHECK(pruned.stats.expansions <= plain.stats.expansions);
            }
        }
    }
    for (int high : {2, 4}) {
        BranchingTrapConfig bc{2, 2, high, 1, 1, 2, 6};
        BranchingTrap tree = branching_trap(bc);
        for (EvaluatorKind kind : {EvaluatorKind::Cost, EvaluatorKind::Size}) {
            SearchOutcome plain = run_zero(tree, config(kind));
            ZeroHeuristic h;
            ExactBranchingHeuristic exact(bc);
            SearchOutcome pruned = best_first_bnb(tree, config(kind), h, exact);
            CHECK(plain.incumbent.bound_cost == pruned.incumbent.bound_cost);
            CHECK(pruned.stats.expansions <= plain.stats.expansions);
        }
    }
}

TEST_CASE("property: lookahead keeps completeness and optimality") {
    for (unsigned seed = 200; seed < 230; ++seed) {
        auto task = std::make_shared<const GroundedTask>(testing_support::random_task(seed));
        GroundedProblem problem = ground_problem(task);
        auto oracle = testing_support::optimum(problem);
        for (EvaluatorKind kind : {EvaluatorKind::Cost, EvaluatorKind::CsSize}) {
            SearchConfig cfg = config(kind);
            cfg.lookahead = true;
            cfg.plateau_tau = Rational(1);
            RelaxedPlanHeuristic h(task, HeuristicKind::RpCost);
            ZeroHeuristic prune;
            SearchOutcome out = best_first_bnb(problem, cfg, h, prune, &h);
            CAPTURE(seed);
            check_anytime(out);
            if (oracle)
                CHECK(out.incumbent.bound_cost == oracle->cost);
            else
                CHECK(out.status == SearchStatus::ExhaustedNoSolution);
        }
    }
}
