#ifndef SURROGATE_REPORT_H
#define SURROGATE_REPORT_H

#include "bench.h"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace surrogate {

struct EventRow {
    std::uint64_t index = 0;
    std::uint64_t expansions = 0;
    std::uint64_t ms = 0;
    Cost cost = 0;
    Cost size = 0;

    friend bool operator==(const EventRow &, const EventRow &) = default;
};

/*
  Flat view of a run as it appears in runs.csv and events.csv. Scoring and
  curves work on this so they can run on records read back from disk.
*/
struct RunSummary {
    std::string run_id;
    std::string domain;
    std::string params;
    std::string eval;
    std::string tiebreak;
    std::string heur;
    std::string prune_heur;
    bool lookahead = false;
    std::string variant;
    std::string weight;
    Cost max_cost = 1;
    std::string plateau_tau;
    SearchStats stats;
    std::optional<Cost> first_cost;
    std::optional<Cost> first_size;
    std::optional<Cost> best_cost;
    std::optional<Cost> best_size;
    std::string status; // a SearchStatus name, or "error"
    std::optional<Cost> oracle_cost;
    std::string error;
    std::vector<EventRow> events;

    std::string problem_id() const { return domain + ":" + params; }
    bool solved() const { return best_cost.has_value(); }

    friend bool operator==(const RunSummary &, const RunSummary &) = default;
};

RunSummary summarize(const RunRecord &record);
std::vector<RunSummary> summarize(const std::vector<RunRecord> &records);

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// CSV helpers; fields holding separators or quotes are quoted.
std::string csv_line(const std::vector<std::string> &fields);
std::vector<std::vector<std::string>> parse_csv(const std::string &text);

std::string runs_csv(const std::vector<RunSummary> &runs);
std::string events_csv(const std::vector<RunSummary> &runs);
// Reads runs.csv text and attaches events.csv rows by run id.
std::vector<RunSummary> parse_runs(const std::string &runs_text, const std::string &events_text);

// Writes runs.csv and events.csv into dir, creating it if needed.
void write_run_directory(const std::string &dir, const std::vector<RunSummary> &runs);
/*
  Each path is a directory holding runs.csv (and optionally events.csv) or
  a runs.csv file whose sibling events.csv is read when present.
*/
std::vector<RunSummary> load_runs(const std::vector<std::string> &paths);

void write_text_file(const std::string &path, const std::string &content);
std::string read_text_file(const std::string &path);

} // namespace surrogate

#endif
