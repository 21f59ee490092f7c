#include "surrogate/heuristic.h"

#include <stdexcept>

namespace surrogate {

HeuristicValue MemoizedHeuristic::estimate(const StateKey &state) {
    auto it = memo_.find(state);
    if (it != memo_.end())
        return it->second;
    ++computations_;
    HeuristicValue value = compute(state);
    memo_.emplace(state, value);
    return value;
}

std::string to_string(HeuristicKind kind) {
    switch (kind) {
    case HeuristicKind::Zero: return "zero";
    case HeuristicKind::Exact: return "exact";
    case HeuristicKind::HaddCost: return "hadd";
    case HeuristicKind::RpCost: return "rp-cost";
    case HeuristicKind::RpSizeCheap: return "rp-size-cheap";
    case HeuristicKind::RpSizeShort: return "rp-size-short";
    }
    return "?";
}

HeuristicKind parse_heuristic_kind(const std::string &text) {
    if (text == "zero") return HeuristicKind::Zero;
    if (text == "exact") return HeuristicKind::Exact;
    if (text == "hadd") return HeuristicKind::HaddCost;
    if (text == "rp-cost") return HeuristicKind::RpCost;
    if (text == "rp-size-cheap") return HeuristicKind::RpSizeCheap;
    if (text == "rp-size-short") return HeuristicKind::RpSizeShort;
    throw std::invalid_argument("unknown heuristic '" + text + "'");
}

} // namespace surrogate
