#include "surrogate/graph_core.h"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <charconv>
#include <sstream>

namespace surrogate {

std::size_t StateKey::hash() const {
    return boost::hash_range(words_.begin(), words_.end());
}

std::string StateKey::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (i)
            out << ':';
        out << std::hex << words_[i];
    }
    return out.str();
}

std::strong_ordering operator<=>(const StateKey &a, const StateKey &b) {
    return std::lexicographical_compare_three_way(
        a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end());
}

std::string SearchProblem::action_name(ActionId action) const {
    return "a" + std::to_string(action);
}

SearchNode make_root(StateKey state, std::uint64_t seq) {
    SearchNode root;
    root.state = std::move(state);
    root.seq = seq;
    return root;
}

SearchNode extend_node(const SearchNode &n, NodeId n_id, const OutEdge &e,
                       std::uint64_t seq) {
    SearchNode child;
    child.state = e.target;
    child.incoming_action = e.action;
    child.parent = n_id;
    child.g_cost = n.g_cost + e.cost;
    child.g_size = n.g_size + 1;
    child.seq = seq;
    return child;
}

NodeId NodeArena::add_root(StateKey state) {
    nodes_.push_back(make_root(std::move(state), next_seq_++));
    return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId NodeArena::extend(NodeId parent, const OutEdge &edge) {
    // Copy first: push_back may reallocate under the reference.
    SearchNode child = extend_node(nodes_[parent], parent, edge, next_seq_++);
    nodes_.push_back(std::move(child));
    return static_cast<NodeId>(nodes_.size() - 1);
}

Plan reconstruct_plan(const NodeArena &arena, NodeId id) {
    Plan plan;
    plan.total_cost = arena[id].g_cost;
    plan.length = arena[id].g_size;
    for (NodeId cur = id; !arena[cur].is_root(); cur = arena[cur].parent)
        plan.actions.push_back(arena[cur].incoming_action);
    std::reverse(plan.actions.begin(), plan.actions.end());
    return plan;
}

Rational normalize_cost(Cost cost, Cost max_cost) {
    if (max_cost <= 0)
        throw std::domain_error("normalize_cost: max_cost must be positive");
    if (cost < 1 || cost > max_cost)
        throw std::domain_error("normalize_cost: cost must lie in [1, max_cost]");
    return Rational(cost, max_cost);
}

Rational epsilon_of(const SearchProblem &problem) {
    std::optional<CostBounds> bounds = problem.cost_bounds();
    if (!bounds)
        throw UnknownCostBounds("domain cannot report its cost range: " +
                                problem.describe());
    return normalize_cost(bounds->min_edge_cost, bounds->max_edge_cost);
}

std::string format_rational(const Rational &value) {
    if (value.denominator() == 1)
        return std::to_string(value.numerator());
    return std::to_string(value.numerator()) + "/" +
           std::to_string(value.denominator());
}

namespace {
std::int64_t parse_int(std::string_view text, const std::string &whole) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument("not a rational number: '" + whole + "'");
    return value;
}
} // namespace

Rational parse_rational(const std::string &text) {
    std::string_view view(text);
    std::size_t slash = view.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(view, text));
    std::int64_t den = parse_int(view.substr(slash + 1), text);
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(parse_int(view.substr(0, slash), text), den);
}

} // namespace surrogate
