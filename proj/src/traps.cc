#include "surrogate/traps.h"

#include <stdexcept>

namespace surrogate {

// ---------------------------------------------------------------- cycle trap

Cost CycleTrapConfig::wrap_cost() const {
    return expensive_cost > 0 ? expensive_cost : Cost{1} << (k - 1);
}

void CycleTrapConfig::validate() const {
    if (k < 2 || k > 40)
        throw std::invalid_argument("cycle trap: k must lie in [2, 40]");
    if (expensive_cost < 0)
        throw std::invalid_argument("cycle trap: expensive cost must be >= 1");
    if (goal_residue >= modulus())
        throw std::invalid_argument("cycle trap: goal residue must be < 2^k");
}

CycleTrap::CycleTrap(CycleTrapConfig cfg) : cfg_(cfg) {
    cfg_.validate();
}

bool CycleTrap::is_goal(const StateKey &state) const {
    return state.word(0) == cfg_.goal_residue;
}

std::vector<OutEdge> CycleTrap::expand(const StateKey &state) const {
    const std::uint64_t n = cfg_.modulus();
    const std::uint64_t r = state.word(0);
    const std::uint64_t up = (r + 1) % n;
    const std::uint64_t down = (r + n - 1) % n;
    // The only wrapping edges are n-1 -> 0 (increment) and 0 -> n-1 (decrement).
    Cost up_cost = (r == n - 1) ? cfg_.wrap_cost() : 1;
    Cost down_cost = (r == 0) ? cfg_.wrap_cost() : 1;
    return {{kIncrement, StateKey(up), up_cost}, {kDecrement, StateKey(down), down_cost}};
}

std::optional<CostBounds> CycleTrap::cost_bounds() const {
    Cost wrap = cfg_.wrap_cost();
    return CostBounds{std::min<Cost>(1, wrap), std::max<Cost>(1, wrap)};
}

std::string CycleTrap::action_name(ActionId action) const {
    return action == kIncrement ? "inc" : "dec";
}

std::string CycleTrap::describe() const {
    return "cycle(k=" + std::to_string(cfg_.k) + ",goal=" +
           std::to_string(cfg_.goal_residue) + ",wrap=" +
           std::to_string(cfg_.wrap_cost()) + ")";
}

CycleTrap cycle_trap(const CycleTrapConfig &cfg) {
    return CycleTrap(cfg);
}

CycleOptima cycle_trap_optima(const CycleTrapConfig &cfg, std::uint64_t goal) {
    cfg.validate();
    const std::uint64_t n = cfg.modulus();
    if (goal >= n)
        throw std::invalid_argument("cycle trap: goal residue must be < 2^k");
    if (goal == 0)
        return {{0, 0}, {0, 0}};
    CycleOptima optima;
    optima.clockwise = {static_cast<Cost>(goal), static_cast<Cost>(goal)};
    const Cost steps = static_cast<Cost>(n - goal);
    optima.counterclockwise = {steps - 1 + cfg.wrap_cost(), steps};
    return optima;
}

HeuristicValue ExactCycleHeuristic::estimate(const StateKey &state) {
    const std::uint64_t n = cfg_.modulus();
    const std::uint64_t r = state.word(0);
    const std::uint64_t g = cfg_.goal_residue;
    if (r == g)
        return {0, 0};
    const Cost extra = cfg_.wrap_cost() - 1;
    const Cost up_steps = static_cast<Cost>((g + n - r) % n);
    const Cost up_cost = up_steps + (r > g ? extra : 0);
    const Cost down_steps = static_cast<Cost>((r + n - g) % n);
    const Cost down_cost = down_steps + (r < g ? extra : 0);
    if (up_cost < down_cost || (up_cost == down_cost && up_steps <= down_steps))
        return {up_cost, up_steps};
    return {down_cost, down_steps};
}

// ------------------------------------------------------------ branching trap

namespace {
constexpr int kLabelsPerWord = 8;

std::uint64_t pack_header(std::uint64_t depth, std::uint64_t highs, std::uint64_t lows) {
    return depth | (highs << 20) | (lows << 40);
}
} // namespace

void BranchingTrapConfig::validate() const {
    if (x < 1 || y < 1 || x + y > 254)
        throw std::invalid_argument("branching trap: need x, y >= 1 and x + y <= 254");
    if (low_cost < 1 || high_cost <= low_cost)
        throw std::invalid_argument("branching trap: need high_cost > low_cost >= 1");
    if (goal_high < 0 || goal_low < 0)
        throw std::invalid_argument("branching trap: goal counts must be >= 0");
    if (depth_cap < goal_high + goal_low || depth_cap > (1 << 19))
        throw std::invalid_argument("branching trap: need goal_high + goal_low <= depth_cap");
}

BranchingTrap::BranchingTrap(BranchingTrapConfig cfg) : cfg_(cfg) {
    cfg_.validate();
}

int BranchingTrap::depth(const StateKey &state) {
    return static_cast<int>(state.word(0) & 0xFFFFF);
}

int BranchingTrap::high_count(const StateKey &state) {
    return static_cast<int>((state.word(0) >> 20) & 0xFFFFF);
}

int BranchingTrap::low_count(const StateKey &state) {
    return static_cast<int>((state.word(0) >> 40) & 0xFFFFF);
}

StateKey BranchingTrap::initial_state() const {
    return StateKey(pack_header(0, 0, 0));
}

bool BranchingTrap::is_goal(const StateKey &state) const {
    return high_count(state) == cfg_.goal_high && low_count(state) == cfg_.goal_low;
}

std::vector<OutEdge> BranchingTrap::expand(const StateKey &state) const {
    std::vector<OutEdge> edges;
    const int d = depth(state);
    if (d >= cfg_.depth_cap)
        return edges;
    const int highs = high_count(state);
    const int lows = low_count(state);
    const int labels = cfg_.x + cfg_.y;
    edges.reserve(labels);
    for (ActionId label = 0; label < labels; ++label) {
        const bool high = label < cfg_.x;
        StateKey::Words words = state.words();
        words[0] = pack_header(d + 1, highs + (high ? 1 : 0), lows + (high ? 0 : 1));
        const std::size_t slot = 1 + d / kLabelsPerWord;
        if (slot >= words.size())
            words.push_back(0);
        words[slot] |= static_cast<std::uint64_t>(label + 1) << (8 * (d % kLabelsPerWord));
        edges.push_back({label, StateKey(std::move(words)),
                         high ? cfg_.high_cost : cfg_.low_cost});
    }
    return edges;
}

std::optional<CostBounds> BranchingTrap::cost_bounds() const {
    return CostBounds{cfg_.low_cost, cfg_.high_cost};
}

std::string BranchingTrap::action_name(ActionId action) const {
    if (action < cfg_.x)
        return "H" + std::to_string(action + 1);
    return "L" + std::to_string(action - cfg_.x + 1);
}

std::string BranchingTrap::describe() const {
    return "btree(x=" + std::to_string(cfg_.x) + ",y=" + std::to_string(cfg_.y) +
           ",high=" + std::to_string(cfg_.high_cost) + ",low=" +
           std::to_string(cfg_.low_cost) + ",H=" + std::to_string(cfg_.goal_high) +
           ",L=" + std::to_string(cfg_.goal_low) + ",cap=" +
           std::to_string(cfg_.depth_cap) + ")";
}

BranchingTrap branching_trap(const BranchingTrapConfig &cfg) {
    return BranchingTrap(cfg);
}

Rational equal_mix_depth(const Rational &normalized_cost, const Rational &epsilon) {
    return Rational(2) * normalized_cost / (Rational(1) + epsilon);
}

HeuristicValue ExactBranchingHeuristic::estimate(const StateKey &state) {
    const int highs_left = cfg_.goal_high - BranchingTrap::high_count(state);
    const int lows_left = cfg_.goal_low - BranchingTrap::low_count(state);
    if (highs_left < 0 || lows_left < 0 ||
        BranchingTrap::depth(state) + highs_left + lows_left > cfg_.depth_cap)
        return HeuristicValue::infinite();
    return {highs_left * cfg_.high_cost + lows_left * cfg_.low_cost,
            static_cast<Cost>(highs_left + lows_left)};
}

} // namespace surrogate
