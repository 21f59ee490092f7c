#ifndef SURROGATE_SCORING_H
#define SURROGATE_SCORING_H

#include "report.h"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace surrogate {

enum class ReferenceKind { Oracle, BestOfRuns };

std::string to_string(ReferenceKind kind);
ReferenceKind parse_reference_kind(const std::string &text);

struct RunScore {
    std::string problem_id;
    std::string run_id;
    std::string variant;
    double quality = 0; // IPC 2008 rule: reference / achieved, 0 if unsolved
    bool solved = false;
};

struct VariantScore {
    std::string variant;
    double score = 0;
    int coverage = 0;
    double percent = 0;
    int rank = 0;
};

struct ProblemRanking {
    std::string problem_id;
    std::optional<Cost> reference;
    std::vector<VariantScore> variants;
};

struct ScoreReport {
    ReferenceKind reference = ReferenceKind::Oracle;
    int problem_count = 0;
    std::vector<RunScore> runs;
    std::vector<VariantScore> variants; // in first-appearance order
    std::vector<ProblemRanking> problems;
};

/*
  ORACLE uses the oracle optimum where one was recorded and falls back to
  the best cost among the runs otherwise; BEST_OF_RUNS always uses the
  latter.
*/
std::optional<Cost> reference_cost(const std::vector<RunSummary> &runs,
                                   const std::string &problem_id, ReferenceKind kind);

ScoreReport ipc_score(const std::vector<RunSummary> &runs, ReferenceKind kind);

// Descending order; equal scores share the lower rank and the next distinct
// score takes the next integer.
std::vector<int> dense_ranks(const std::vector<double> &scores);

std::string scores_csv(const ScoreReport &report);
std::string scores_markdown(const ScoreReport &report);

enum class CurveAxis { Expansions, Ms };

std::string to_string(CurveAxis axis);
CurveAxis parse_curve_axis(const std::string &text);

struct Crossover {
    std::string variant_a;
    std::string variant_b;
    std::uint64_t instant = 0;
    std::string leader; // the variant ahead from this instant on
};

struct AnytimeCurve {
    CurveAxis axis = CurveAxis::Expansions;
    std::vector<std::uint64_t> instants;
    std::vector<std::string> variants;
    // scores[v][i]: summed quality of variant v at instants[i]
    std::vector<std::vector<double>> scores;
    // Per-run quality series, same order as the input runs.
    std::vector<std::vector<double>> run_quality;
    std::vector<Crossover> crossovers;
};

// Throws std::invalid_argument unless instants are strictly ascending.
AnytimeCurve anytime_curve(const std::vector<RunSummary> &runs,
                           const std::vector<std::uint64_t> &instants, CurveAxis axis,
                           ReferenceKind kind = ReferenceKind::Oracle);

std::string curve_csv(const AnytimeCurve &curve);
std::string crossovers_csv(const AnytimeCurve &curve);

std::vector<std::uint64_t> parse_instants(const std::string &text);

} // namespace surrogate

#endif
