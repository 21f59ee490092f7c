#ifndef SURROGATE_EVALUATORS_H
#define SURROGATE_EVALUATORS_H

#include "graph_core.h"
#include "heuristic.h"

#include <optional>
#include <string>

namespace surrogate {

enum class EvaluatorKind { Cost, Size, CsSize, Hybrid, WeightedCost };
enum class TieBreak { None, OnCost, OnSize };

std::string to_string(EvaluatorKind kind);
std::string to_string(TieBreak tiebreak);
EvaluatorKind parse_evaluator_kind(const std::string &text);
TieBreak parse_tiebreak(const std::string &text);

struct EvaluatorConfig {
    EvaluatorKind kind = EvaluatorKind::Cost;
    TieBreak tiebreak = TieBreak::None;
    // f = g_c + weight * h_c; WeightedCost only.
    Rational weight{1};
    // Normalization constant of the hybrid's cost term.
    Cost max_cost = 1;

    // Throws std::invalid_argument on weight < 1 or max_cost < 1.
    void validate() const;
};

/*
  Open-list key. Ordered lexicographically by (primary, tiebreak, seq), so
  equal f values are broken by the configured tie-break and then FIFO.
*/
struct Priority {
    Rational primary;
    Rational tiebreak;
    std::uint64_t seq = 0;

    friend bool operator<(const Priority &a, const Priority &b) {
        if (a.primary != b.primary)
            return a.primary < b.primary;
        if (a.tiebreak != b.tiebreak)
            return a.tiebreak < b.tiebreak;
        return a.seq < b.seq;
    }
    friend bool operator==(const Priority &, const Priority &) = default;
};

// f_c = g_c + h_c
Rational f_cost(const SearchNode &n, const HeuristicValue &h);
// f_s = g_s + h_s
Rational f_size(const SearchNode &n, const HeuristicValue &h);
// f̂_s = g_s + ĥ_s; same arithmetic as f_size, the heuristic bound differs.
Rational f_cs_size(const SearchNode &n, const HeuristicValue &h);
// [g_s + h_s] + [g_c + h_c] / max_cost
Rational f_hybrid(const SearchNode &n, const HeuristicValue &h, Cost max_cost);
// g_c + w * h_c
Rational f_weighted_cost(const SearchNode &n, const HeuristicValue &h,
                         const Rational &weight);

Rational tiebreak_key(const SearchNode &n, const EvaluatorConfig &cfg,
                      const HeuristicValue &h);

// Returns nullopt for dead ends (infinite h); those are never enqueued.
std::optional<Priority> evaluate(const SearchNode &n, const EvaluatorConfig &cfg,
                                 const HeuristicValue &h);

// The g part of the configured evaluator, used for plateau detection.
Rational g_component(const SearchNode &n, const EvaluatorConfig &cfg);

} // namespace surrogate

#endif
