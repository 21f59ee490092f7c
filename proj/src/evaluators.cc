#include "surrogate/evaluators.h"

#include <stdexcept>

namespace surrogate {

std::string to_string(EvaluatorKind kind) {
    switch (kind) {
    case EvaluatorKind::Cost: return "cost";
    case EvaluatorKind::Size: return "size";
    case EvaluatorKind::CsSize: return "cs-size";
    case EvaluatorKind::Hybrid: return "hybrid";
    case EvaluatorKind::WeightedCost: return "wcost";
    }
    return "?";
}

std::string to_string(TieBreak tiebreak) {
    switch (tiebreak) {
    case TieBreak::None: return "none";
    case TieBreak::OnCost: return "cost";
    case TieBreak::OnSize: return "size";
    }
    return "?";
}

EvaluatorKind parse_evaluator_kind(const std::string &text) {
    if (text == "cost") return EvaluatorKind::Cost;
    if (text == "size") return EvaluatorKind::Size;
    if (text == "cs-size") return EvaluatorKind::CsSize;
    if (text == "hybrid") return EvaluatorKind::Hybrid;
    if (text == "wcost") return EvaluatorKind::WeightedCost;
    throw std::invalid_argument("unknown evaluator '" + text + "'");
}

TieBreak parse_tiebreak(const std::string &text) {
    if (text == "none") return TieBreak::None;
    if (text == "cost") return TieBreak::OnCost;
    if (text == "size") return TieBreak::OnSize;
    throw std::invalid_argument("unknown tie-break '" + text + "'");
}

void EvaluatorConfig::validate() const {
    if (weight < Rational(1))
        throw std::invalid_argument("heuristic weight must be >= 1");
    if (max_cost < 1)
        throw std::invalid_argument("hybrid max_cost must be >= 1");
}

Rational f_cost(const SearchNode &n, const HeuristicValue &h) {
    return Rational(n.g_cost + h.cost_to_go);
}

Rational f_size(const SearchNode &n, const HeuristicValue &h) {
    return Rational(n.g_size + h.size_to_go);
}

Rational f_cs_size(const SearchNode &n, const HeuristicValue &h) {
    return Rational(n.g_size + h.size_to_go);
}

Rational f_hybrid(const SearchNode &n, const HeuristicValue &h, Cost max_cost) {
    return Rational(n.g_size + h.size_to_go) +
           Rational(n.g_cost + h.cost_to_go, max_cost);
}

Rational f_weighted_cost(const SearchNode &n, const HeuristicValue &h,
                         const Rational &weight) {
    return Rational(n.g_cost) + weight * h.cost_to_go;
}

Rational tiebreak_key(const SearchNode &n, const EvaluatorConfig &cfg,
                      const HeuristicValue &h) {
    switch (cfg.tiebreak) {
    case TieBreak::None: return Rational(0);
    case TieBreak::OnCost: return f_cost(n, h);
    case TieBreak::OnSize: return f_size(n, h);
    }
    return Rational(0);
}

std::optional<Priority> evaluate(const SearchNode &n, const EvaluatorConfig &cfg,
                                 const HeuristicValue &h) {
    if (h.is_infinite())
        return std::nullopt;
    Priority priority;
    priority.seq = n.seq;
    priority.tiebreak = tiebreak_key(n, cfg, h);
    switch (cfg.kind) {
    case EvaluatorKind::Cost: priority.primary = f_cost(n, h); break;
    case EvaluatorKind::Size: priority.primary = f_size(n, h); break;
    case EvaluatorKind::CsSize: priority.primary = f_cs_size(n, h); break;
    case EvaluatorKind::Hybrid: priority.primary = f_hybrid(n, h, cfg.max_cost); break;
    case EvaluatorKind::WeightedCost:
        priority.primary = f_weighted_cost(n, h, cfg.weight);
        break;
    }
    return priority;
}

Rational g_component(const SearchNode &n, const EvaluatorConfig &cfg) {
    switch (cfg.kind) {
    case EvaluatorKind::Cost:
    case EvaluatorKind::WeightedCost:
        return Rational(n.g_cost);
    case EvaluatorKind::Size:
    case EvaluatorKind::CsSize:
        return Rational(n.g_size);
    case EvaluatorKind::Hybrid:
        return Rational(n.g_size) + Rational(n.g_cost, cfg.max_cost);
    }
    return Rational(0);
}

} // namespace surrogate
