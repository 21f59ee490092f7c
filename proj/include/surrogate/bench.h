#ifndef SURROGATE_BENCH_H
#define SURROGATE_BENCH_H

#include "evaluators.h"
#include "grounded_task.h"
#include "heuristic.h"
#include "oracle.h"
#include "search_engine.h"
#include "traps.h"
#include "travel.h"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace surrogate {

enum class DomainKind { Cycle, Btree, Rendezvous, Chain, Taskfile };

std::string to_string(DomainKind kind);
DomainKind parse_domain_kind(const std::string &text);

struct DomainSpec {
    DomainKind kind = DomainKind::Cycle;
    CycleTrapConfig cycle;
    // Goal residue as given; negative values count back from 2^k.
    std::int64_t cycle_goal = 0;
    BranchingTrapConfig btree;
    TravelConfig travel;
    // Unset means the per-domain default (1 for rendezvous, 2 for chain).
    std::optional<int> planes;
    std::string file;

    // Canonical "key=value;..." description, stable across runs.
    std::string params() const;
    // Problem identity used for grouping in reports.
    std::string problem_id() const { return to_string(kind) + ":" + params(); }
};

struct RunSpec {
    std::string run_id;
    DomainSpec domain;
    EvaluatorConfig evaluator;
    // Hybrid normalization constant; unset means the instance's max edge cost.
    std::optional<Cost> max_cost;
    HeuristicKind heuristic = HeuristicKind::Zero;
    HeuristicKind prune_heuristic = HeuristicKind::Zero;
    SearchLimits limits;
    bool lookahead = false;
    std::optional<Rational> plateau_tau;
    bool record_wall_clock = true;
    bool with_oracle = true;
    std::uint64_t oracle_cap = 100000;

    // Label shared by runs of the same configuration on different problems.
    std::string variant() const;
};

/*
  Applies one key=value setting in the CLI vocabulary (flag names without
  leading dashes). Throws std::invalid_argument on unknown keys or values.
*/
void apply_setting(RunSpec &spec, const std::string &key, const std::string &value);
std::vector<std::string> setting_keys();

// Domain instance with the grounded task kept when there is one.
struct Instance {
    std::shared_ptr<const SearchProblem> problem;
    std::shared_ptr<const GroundedTask> task;
};

Instance build_instance(const DomainSpec &domain);

struct HeuristicBundle {
    std::unique_ptr<Heuristic> heuristic;
    // Same object as heuristic when it can exclude operators; else null.
    OperatorExcludingHeuristic *excluding = nullptr;
};

// Throws std::invalid_argument for combinations the domain does not support.
HeuristicBundle make_heuristic(HeuristicKind kind, const DomainSpec &domain,
                               const Instance &instance);

struct RunRecord {
    RunSpec spec;
    Cost max_cost = 1;
    SearchOutcome outcome;
    std::optional<Cost> oracle_cost;
    // Non-empty iff the run failed; outcome is then meaningless.
    std::string error;

    bool solved() const { return error.empty() && outcome.incumbent.plan.has_value(); }
};

// Throws on configuration errors (std::invalid_argument, TaskError).
void check_spec(const RunSpec &spec);

// Optimal cost per problem; nullopt when over the cap or unsolvable.
using OracleCache = std::map<std::string, std::optional<Cost>>;
std::optional<Cost> oracle_optimum(const DomainSpec &domain, std::uint64_t cap);

// Executes one run; errors are captured in the record.
RunRecord execute_run(const RunSpec &spec, const OracleCache &oracles = {});

// Parallel over runs with OpenMP; output order equals spec order.
std::vector<RunRecord> run_matrix(const std::vector<RunSpec> &specs, int jobs = 0);
// Serial reference with identical results.
std::vector<RunRecord> run_matrix_serial(const std::vector<RunSpec> &specs);

// Violations of the oracle agreement invariant, one message each.
std::vector<std::string> oracle_disagreements(const std::vector<RunRecord> &records);

} // namespace surrogate

#endif
