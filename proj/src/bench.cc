#include "surrogate/bench.h"

#include "surrogate/relaxed_plan.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace surrogate {

std::string to_string(DomainKind kind) {
    switch (kind) {
    case DomainKind::Cycle: return "cycle";
    case DomainKind::Btree: return "btree";
    case DomainKind::Rendezvous: return "rendezvous";
    case DomainKind::Chain: return "chain";
    case DomainKind::Taskfile: return "taskfile";
    }
    return "?";
}

DomainKind parse_domain_kind(const std::string &text) {
    if (text == "cycle") return DomainKind::Cycle;
    if (text == "btree") return DomainKind::Btree;
    if (text == "rendezvous") return DomainKind::Rendezvous;
    if (text == "chain") return DomainKind::Chain;
    if (text == "taskfile") return DomainKind::Taskfile;
    throw std::invalid_argument("unknown domain '" + text + "'");
}

namespace {

std::uint64_t cycle_residue(const DomainSpec &domain) {
    const auto n = static_cast<std::int64_t>(domain.cycle.modulus());
    return static_cast<std::uint64_t>(((domain.cycle_goal % n) + n) % n);
}

CycleTrapConfig resolved_cycle(const DomainSpec &domain) {
    domain.cycle.validate();
    CycleTrapConfig cfg = domain.cycle;
    cfg.goal_residue = cycle_residue(domain);
    return cfg;
}

TravelConfig resolved_travel(const DomainSpec &domain) {
    TravelConfig cfg = domain.travel;
    if (domain.kind == DomainKind::Chain) {
        cfg.variant = TravelVariant::ChainSwap;
        cfg.planes = domain.planes.value_or(2);
    } else {
        cfg.variant = TravelVariant::Rendezvous;
        cfg.planes = domain.planes.value_or(1);
    }
    return cfg;
}

std::string join_ints(const std::vector<int> &values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? "," : "") + std::to_string(values[i]);
    return out;
}

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(std::stoi(item));
    return out;
}

std::int64_t parse_integer(const std::string &key, const std::string &value) {
    std::size_t used = 0;
    std::int64_t result = 0;
    try {
        result = std::stoll(value, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != value.size())
        throw std::invalid_argument("setting '" + key + "' expects an integer, got '" +
                                    value + "'");
    return result;
}

std::uint64_t parse_positive(const std::string &key, const std::string &value) {
    std::int64_t v = parse_integer(key, value);
    if (v < 1)
        throw std::invalid_argument("setting '" + key + "' must be >= 1");
    return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string &key, const std::string &value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on")
        return true;
    if (value == "0" || value == "false" || value == "no" || value == "off")
        return false;
    throw std::invalid_argument("setting '" + key + "' expects a boolean, got '" + value +
                                "'");
}

using Setter = std::function<void(RunSpec &, const std::string &, const std::string &)>;

const std::vector<std::pair<std::string, Setter>> &setters() {
    static const std::vector<std::pair<std::string, Setter>> table = {
        {"domain", [](RunSpec &s, auto &, auto &v) { s.domain.kind = parse_domain_kind(v); }},
        {"k", [](RunSpec &s, auto &k, auto &v) { s.domain.cycle.k = static_cast<int>(parse_integer(k, v)); }},
        {"goal", [](RunSpec &s, auto &k, auto &v) { s.domain.cycle_goal = parse_integer(k, v); }},
        {"expensive-cost", [](RunSpec &s, auto &k, auto &v) { s.domain.cycle.expensive_cost = parse_integer(k, v); }},
        {"x", [](RunSpec &s, auto &k, auto &v) { s.domain.btree.x = static_cast<int>(parse_integer(k, v)); }},
        {"y", [](RunSpec &s, auto &k, auto &v) { s.domain.btree.y = static_cast<int>(parse_integer(k, v)); }},
        {"high-cost", [](RunSpec &s, auto &k, auto &v) { s.domain.btree.high_cost = parse_integer(k, v); }},
        {"low-cost", [](RunSpec &s, auto &k, auto &v) { s.domain.btree.low_cost = parse_integer(k, v); }},
        {"goal-high", [](RunSpec &s, auto &k, auto &v) { s.domain.btree.goal_high = static_cast<int>(parse_integer(k, v)); }},
        {"goal-low", [](RunSpec &s, auto &k, auto &v) { s.domain.btree.goal_low = static_cast<int>(parse_integer(k, v)); }},
        {"depth-cap", [](RunSpec &s, auto &k, auto &v) { s.domain.btree.depth_cap = static_cast<int>(parse_integer(k, v)); }},
        {"passengers", [](RunSpec &s, auto &k, auto &v) { s.domain.travel.passengers = static_cast<int>(parse_integer(k, v)); }},
        {"planes", [](RunSpec &s, auto &k, auto &v) { s.domain.planes = static_cast<int>(parse_integer(k, v)); }},
        {"chain-length", [](RunSpec &s, auto &k, auto &v) { s.domain.travel.chain_length = static_cast<int>(parse_integer(k, v)); }},
        {"passenger-start", [](RunSpec &s, auto &, auto &v) { s.domain.travel.passenger_start = parse_int_list(v); }},
        {"plane-start", [](RunSpec &s, auto &, auto &v) { s.domain.travel.plane_start = parse_int_list(v); }},
        {"diagonal-cost", [](RunSpec &s, auto &k, auto &v) { s.domain.travel.diagonal_cost = parse_integer(k, v); }},
        {"exterior-cost", [](RunSpec &s, auto &k, auto &v) { s.domain.travel.exterior_cost = parse_integer(k, v); }},
        {"fly-cost", [](RunSpec &s, auto &k, auto &v) { s.domain.travel.fly_cost = parse_integer(k, v); }},
        {"board-cost", [](RunSpec &s, auto &k, auto &v) { s.domain.travel.board_cost = parse_integer(k, v); }},
        {"debark-cost", [](RunSpec &s, auto &k, auto &v) { s.domain.travel.debark_cost = parse_integer(k, v); }},
        {"file", [](RunSpec &s, auto &, auto &v) { s.domain.file = v; }},
        {"eval", [](RunSpec &s, auto &, auto &v) { s.evaluator.kind = parse_evaluator_kind(v); }},
        {"weight", [](RunSpec &s, auto &, auto &v) { s.evaluator.weight = parse_rational(v); }},
        {"tiebreak", [](RunSpec &s, auto &, auto &v) { s.evaluator.tiebreak = parse_tiebreak(v); }},
        {"max-cost", [](RunSpec &s, auto &k, auto &v) { s.max_cost = static_cast<Cost>(parse_positive(k, v)); }},
        {"heur", [](RunSpec &s, auto &, auto &v) { s.heuristic = parse_heuristic_kind(v); }},
        {"prune-heur", [](RunSpec &s, auto &, auto &v) { s.prune_heuristic = parse_heuristic_kind(v); }},
        {"lookahead", [](RunSpec &s, auto &k, auto &v) { s.lookahead = parse_bool(k, v); }},
        {"plateau-tau", [](RunSpec &s, auto &, auto &v) { s.plateau_tau = parse_rational(v); }},
        {"max-expansions", [](RunSpec &s, auto &k, auto &v) { s.limits.max_expansions = parse_positive(k, v); }},
        {"max-seconds", [](RunSpec &s, auto &k, auto &v) {
             double seconds = 0;
             try {
                 seconds = std::stod(v);
             } catch (const std::exception &) {
                 throw std::invalid_argument("setting '" + k + "' expects a number");
             }
             if (!(seconds > 0))
                 throw std::invalid_argument("setting '" + k + "' must be positive");
             s.limits.max_wall_ms = static_cast<std::uint64_t>(std::ceil(seconds * 1000));
         }},
        {"max-nodes", [](RunSpec &s, auto &k, auto &v) { s.limits.max_nodes_in_memory = parse_positive(k, v); }},
        {"oracle", [](RunSpec &s, auto &k, auto &v) { s.with_oracle = parse_bool(k, v); }},
        {"oracle-cap", [](RunSpec &s, auto &k, auto &v) { s.oracle_cap = parse_positive(k, v); }},
        {"wall-clock", [](RunSpec &s, auto &k, auto &v) { s.record_wall_clock = parse_bool(k, v); }},
    };
    return table;
}

} // namespace

std::string DomainSpec::params() const {
    std::ostringstream out;
    switch (kind) {
    case DomainKind::Cycle: {
        CycleTrapConfig cfg = cycle;
        out << "k=" << cfg.k << ";goal=" << cycle_residue(*this)
            << ";wrap=" << cfg.wrap_cost();
        break;
    }
    case DomainKind::Btree:
        out << "x=" << btree.x << ";y=" << btree.y << ";high=" << btree.high_cost
            << ";low=" << btree.low_cost << ";goal_high=" << btree.goal_high
            << ";goal_low=" << btree.goal_low << ";depth_cap=" << btree.depth_cap;
        break;
    case DomainKind::Rendezvous:
    case DomainKind::Chain: {
        TravelConfig cfg = resolved_travel(*this);
        if (kind == DomainKind::Chain)
            out << "m=" << cfg.chain_length << ";";
        out << "passengers=" << cfg.passengers << ";planes=" << cfg.planes;
        if (!cfg.passenger_start.empty())
            out << ";passenger_start=" << join_ints(cfg.passenger_start);
        if (!cfg.plane_start.empty())
            out << ";plane_start=" << join_ints(cfg.plane_start);
        if (kind == DomainKind::Chain) {
            if (cfg.fly_cost != TravelConfig{}.fly_cost)
                out << ";fly=" << cfg.fly_cost;
        } else if (cfg.diagonal_cost != TravelConfig{}.diagonal_cost ||
                   cfg.exterior_cost != TravelConfig{}.exterior_cost) {
            out << ";diagonal=" << cfg.diagonal_cost << ";exterior=" << cfg.exterior_cost;
        }
        if (cfg.board_cost != 1 || cfg.debark_cost != 1)
            out << ";board=" << cfg.board_cost << ";debark=" << cfg.debark_cost;
        break;
    }
    case DomainKind::Taskfile:
        out << "file=" << file;
        break;
    }
    return out.str();
}

std::string RunSpec::variant() const {
    std::string label = to_string(evaluator.kind);
    if (evaluator.kind == EvaluatorKind::WeightedCost)
        label += "(w=" + format_rational(evaluator.weight) + ")";
    if (evaluator.tiebreak != TieBreak::None)
        label += "+tb-" + to_string(evaluator.tiebreak);
    label += "/" + to_string(heuristic);
    if (prune_heuristic != HeuristicKind::Zero)
        label += "/prune-" + to_string(prune_heuristic);
    if (lookahead) {
        label += "/lookahead";
        if (plateau_tau)
            label += "(tau=" + format_rational(*plateau_tau) + ")";
    }
    return label;
}

void apply_setting(RunSpec &spec, const std::string &key, const std::string &value) {
    for (const auto &[name, setter] : setters()) {
        if (name == key) {
            try {
                setter(spec, key, value);
            } catch (const std::invalid_argument &e) {
                std::string what = e.what();
                if (what.find(key) == std::string::npos)
                    what = "setting '" + key + "': " + what;
                throw std::invalid_argument(what);
            } catch (const std::out_of_range &) {
                throw std::invalid_argument("setting '" + key + "': value out of range");
            }
            return;
        }
    }
    throw std::invalid_argument("unknown setting '" + key + "'");
}

std::vector<std::string> setting_keys() {
    std::vector<std::string> keys;
    for (const auto &entry : setters())
        keys.push_back(entry.first);
    return keys;
}

Instance build_instance(const DomainSpec &domain) {
    Instance instance;
    switch (domain.kind) {
    case DomainKind::Cycle:
        instance.problem = std::make_shared<CycleTrap>(resolved_cycle(domain));
        break;
    case DomainKind::Btree:
        instance.problem = std::make_shared<BranchingTrap>(domain.btree);
        break;
    case DomainKind::Rendezvous:
    case DomainKind::Chain: {
        TravelConfig cfg = resolved_travel(domain);
        instance.task = std::make_shared<const GroundedTask>(
            domain.kind == DomainKind::Chain ? chain_swap_task(cfg) : rendezvous_task(cfg));
        instance.problem = std::make_shared<GroundedProblem>(instance.task);
        break;
    }
    case DomainKind::Taskfile:
        if (domain.file.empty())
            throw std::invalid_argument("domain taskfile needs a file");
        instance.task = std::make_shared<const GroundedTask>(load_task_file(domain.file));
        instance.problem = std::make_shared<GroundedProblem>(instance.task);
        break;
    }
    return instance;
}

HeuristicBundle make_heuristic(HeuristicKind kind, const DomainSpec &domain,
                               const Instance &instance) {
    HeuristicBundle bundle;
    switch (kind) {
    case HeuristicKind::Zero:
        bundle.heuristic = std::make_unique<ZeroHeuristic>();
        break;
    case HeuristicKind::Exact:
        if (domain.kind == DomainKind::Cycle)
            bundle.heuristic = std::make_unique<ExactCycleHeuristic>(resolved_cycle(domain));
        else if (domain.kind == DomainKind::Btree)
            bundle.heuristic = std::make_unique<ExactBranchingHeuristic>(domain.btree);
        else
            throw std::invalid_argument("heuristic 'exact' is only available for the "
                                        "cycle and btree domains");
        break;
    case HeuristicKind::HaddCost:
    case HeuristicKind::RpCost:
    case HeuristicKind::RpSizeCheap:
    case HeuristicKind::RpSizeShort: {
        if (!instance.task)
            throw std::invalid_argument("heuristic '" + to_string(kind) +
                                        "' needs a grounded task domain");
        auto rp = std::make_unique<RelaxedPlanHeuristic>(instance.task, kind);
        bundle.excluding = rp.get();
        bundle.heuristic = std::move(rp);
        break;
    }
    }
    return bundle;
}

namespace {

struct Prepared {
    Instance instance;
    HeuristicBundle h;
    HeuristicBundle prune_h;
    SearchConfig cfg;
};

Prepared prepare(const RunSpec &spec) {
    Prepared p;
    p.instance = build_instance(spec.domain);
    if (spec.prune_heuristic != HeuristicKind::Zero && spec.prune_heuristic != HeuristicKind::Exact)
        throw std::invalid_argument("prune heuristic must be admissible: 'zero' or 'exact'");
    p.h = make_heuristic(spec.heuristic, spec.domain, p.instance);
    p.prune_h = make_heuristic(spec.prune_heuristic, spec.domain, p.instance);
    if (spec.lookahead && !p.h.excluding)
        throw std::invalid_argument(
            "lookahead needs a relaxed-plan heuristic on a grounded task domain");
    p.cfg.evaluator = spec.evaluator;
    std::optional<CostBounds> bounds = p.instance.problem->cost_bounds();
    p.cfg.evaluator.max_cost = spec.max_cost.value_or(bounds ? bounds->max_edge_cost : 1);
    p.cfg.evaluator.validate();
    p.cfg.limits = spec.limits;
    p.cfg.limits.validate();
    p.cfg.lookahead = spec.lookahead;
    p.cfg.plateau_tau = spec.plateau_tau;
    p.cfg.record_wall_clock = spec.record_wall_clock;
    if (spec.evaluator.kind == EvaluatorKind::Hybrid && bounds &&
        p.cfg.evaluator.max_cost < bounds->max_edge_cost)
        throw std::invalid_argument("max-cost must be >= the instance's maximum edge cost " +
                                    std::to_string(bounds->max_edge_cost));
    return p;
}

std::string oracle_key(const RunSpec &spec) {
    return spec.domain.problem_id() + "#cap=" + std::to_string(spec.oracle_cap);
}

} // namespace

void check_spec(const RunSpec &spec) {
    prepare(spec);
}

std::optional<Cost> oracle_optimum(const DomainSpec &domain, std::uint64_t cap) {
    Instance instance = build_instance(domain);
    try {
        OracleTable table = dijkstra_oracle(*instance.problem, cap);
        if (table.goal_optimum())
            return table.goal_optimum()->cost;
        return std::nullopt;
    } catch (const OracleCapExceeded &) {
        return std::nullopt;
    }
}

RunRecord execute_run(const RunSpec &spec, const OracleCache &oracles) {
    RunRecord record;
    record.spec = spec;
    try {
        Prepared p = prepare(spec);
        record.max_cost = p.cfg.evaluator.max_cost;
        record.outcome = best_first_bnb(*p.instance.problem, p.cfg, *p.h.heuristic,
                                        *p.prune_h.heuristic, p.h.excluding);
        if (spec.with_oracle) {
            auto it = oracles.find(oracle_key(spec));
            record.oracle_cost = it != oracles.end()
                                     ? it->second
                                     : oracle_optimum(spec.domain, spec.oracle_cap);
        }
    } catch (const std::exception &e) {
        record.error = e.what();
    }
    return record;
}

namespace {

// One representative spec per distinct oracle problem, in first-seen order.
std::vector<const RunSpec *> oracle_problems(const std::vector<RunSpec> &specs) {
    std::set<std::string> seen;
    std::vector<const RunSpec *> out;
    for (const RunSpec &spec : specs) {
        if (!spec.with_oracle)
            continue;
        std::string key;
        try {
            key = oracle_key(spec);
        } catch (const std::exception &) {
            continue;
        }
        if (seen.insert(key).second)
            out.push_back(&spec);
    }
    return out;
}

std::optional<Cost> safe_oracle(const RunSpec &spec) {
    try {
        return oracle_optimum(spec.domain, spec.oracle_cap);
    } catch (const std::exception &) {
        return std::nullopt;
    }
}

} // namespace

std::vector<RunRecord> run_matrix(const std::vector<RunSpec> &specs, int jobs) {
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    std::vector<const RunSpec *> problems = oracle_problems(specs);
    std::vector<std::optional<Cost>> optima(problems.size());
    const auto num_problems = static_cast<std::int64_t>(problems.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < num_problems; ++i)
        optima[i] = safe_oracle(*problems[i]);

    OracleCache cache;
    for (std::size_t i = 0; i < problems.size(); ++i)
        cache[oracle_key(*problems[i])] = optima[i];

    std::vector<RunRecord> records(specs.size());
    const auto num_specs = static_cast<std::int64_t>(specs.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < num_specs; ++i)
        records[i] = execute_run(specs[i], cache);
    return records;
}

std::vector<RunRecord> run_matrix_serial(const std::vector<RunSpec> &specs) {
    OracleCache cache;
    for (const RunSpec *spec : oracle_problems(specs))
        cache[oracle_key(*spec)] = safe_oracle(*spec);
    std::vector<RunRecord> records;
    records.reserve(specs.size());
    for (const RunSpec &spec : specs)
        records.push_back(execute_run(spec, cache));
    return records;
}

std::vector<std::string> oracle_disagreements(const std::vector<RunRecord> &records) {
    std::vector<std::string> problems;
    for (const RunRecord &record : records) {
        if (!record.error.empty() || !record.oracle_cost ||
            record.outcome.status != SearchStatus::ProvedOptimal)
            continue;
        const Cost cost = record.outcome.incumbent.bound_cost;
        if (cost != *record.oracle_cost)
            problems.push_back("run '" + record.spec.run_id + "' proved cost " +
                               std::to_string(cost) + " but the oracle optimum is " +
                               std::to_string(*record.oracle_cost));
    }
    return problems;
}

} // namespace surrogate
