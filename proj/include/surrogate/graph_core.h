#ifndef SURROGATE_GRAPH_CORE_H
#define SURROGATE_GRAPH_CORE_H

#include <boost/container/small_vector.hpp>
#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace surrogate {

using Cost = std::int64_t;
using Rational = boost::rational<std::int64_t>;
using ActionId = std::int32_t;
using NodeId = std::uint32_t;

inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max();
inline constexpr ActionId kNoAction = -1;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/*
  Opaque vertex identifier. Domains pack their own encoding into a short
  word sequence; equality of the words is equality of the domain states.
*/
class StateKey {
public:
    using Words = boost::container::small_vector<std::uint64_t, 2>;

    StateKey() = default;
    explicit StateKey(std::uint64_t word) : words_{word} {}
    explicit StateKey(Words words) : words_(std::move(words)) {}

    const Words &words() const { return words_; }
    std::uint64_t word(std::size_t i) const { return words_[i]; }
    std::size_t size() const { return words_.size(); }

    std::size_t hash() const;
    std::string to_string() const;

    friend bool operator==(const StateKey &, const StateKey &) = default;
    friend std::strong_ordering operator<=>(const StateKey &a, const StateKey &b);

private:
    Words words_;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey &key) const { return key.hash(); }
};

struct OutEdge {
    ActionId action = kNoAction;
    StateKey target;
    Cost cost = 1;
};

struct CostBounds {
    Cost min_edge_cost = 1;
    Cost max_edge_cost = 1;
};

class UnknownCostBounds : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/*
  Implicit graph: an initial vertex, a goal predicate and a child
  generator. expand() must be deterministic and return only the edges
  leaving the given vertex.
*/
class SearchProblem {
public:
    virtual ~SearchProblem() = default;

    virtual StateKey initial_state() const = 0;
    virtual bool is_goal(const StateKey &state) const = 0;
    virtual std::vector<OutEdge> expand(const StateKey &state) const = 0;
    virtual std::optional<CostBounds> cost_bounds() const = 0;

    virtual std::string action_name(ActionId action) const;
    virtual std::string describe() const = 0;
};

struct SearchNode {
    StateKey state;
    ActionId incoming_action = kNoAction;
    NodeId parent = kNoNode;
    Cost g_cost = 0;
    Cost g_size = 0;
    std::uint64_t seq = 0;

    bool is_root() const { return parent == kNoNode; }
};

struct Plan {
    std::vector<ActionId> actions;
    Cost total_cost = 0;
    Cost length = 0;

    friend bool operator==(const Plan &, const Plan &) = default;
};

SearchNode make_root(StateKey state, std::uint64_t seq = 0);

// n' = n a: the path n extended by edge e.
SearchNode extend_node(const SearchNode &n, NodeId n_id, const OutEdge &e,
                       std::uint64_t seq);

/*
  Append-only storage for the search nodes of one run. Nodes refer to their
  parents by index, so a node is the linked list of edges back to the root.
*/
class NodeArena {
public:
    NodeId add_root(StateKey state);
    NodeId extend(NodeId parent, const OutEdge &edge);

    const SearchNode &operator[](NodeId id) const { return nodes_[id]; }
    std::size_t size() const { return nodes_.size(); }

private:
    std::vector<SearchNode> nodes_;
    std::uint64_t next_seq_ = 0;
};

Plan reconstruct_plan(const NodeArena &arena, NodeId id);

Rational normalize_cost(Cost cost, Cost max_cost);
Rational epsilon_of(const SearchProblem &problem);

std::string format_rational(const Rational &value);
Rational parse_rational(const std::string &text);

} // namespace surrogate

template<>
struct std::hash<surrogate::StateKey> {
    std::size_t operator()(const surrogate::StateKey &key) const { return key.hash(); }
};

#endif
