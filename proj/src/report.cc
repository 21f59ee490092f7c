#include "surrogate/report.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace surrogate {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kRunColumns = {
    "run_id", "domain", "params", "eval", "tiebreak", "heur", "prune_heur", "lookahead",
    "expansions", "generations", "reopenings", "duplicates_pruned", "bound_prunes",
    "heuristic_calls", "discovery_expansions", "discovery_ms", "first_cost", "first_size",
    "best_cost", "best_size", "status", "oracle_cost", "wall_ms", "proof_expansions",
    "goal_tests", "lookahead_invocations", "variant", "weight", "max_cost", "plateau_tau",
    "error"};

const std::vector<std::string> kEventColumns = {"run_id", "event_index", "expansions_at_event",
                                                "ms_at_event", "cost", "size"};

template<typename T>
std::string opt(const std::optional<T> &value) {
    return value ? std::to_string(*value) : std::string();
}

std::optional<std::int64_t> parse_opt(const std::string &text, const std::string &column) {
    if (text.empty())
        return std::nullopt;
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != text.size() || used == 0)
        throw ReportError("column '" + column + "': malformed integer '" + text + "'");
    return value;
}

std::int64_t parse_req(const std::string &text, const std::string &column) {
    std::optional<std::int64_t> value = parse_opt(text, column);
    if (!value)
        throw ReportError("column '" + column + "' is empty");
    return *value;
}

std::map<std::string, std::size_t> header_index(const std::vector<std::string> &header,
                                                const std::vector<std::string> &required,
                                                const std::string &what) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < header.size(); ++i)
        index[header[i]] = i;
    for (const std::string &column : required)
        if (!index.count(column))
            throw ReportError(what + ": missing column '" + column + "'");
    return index;
}

} // namespace

RunSummary summarize(const RunRecord &record) {
    const RunSpec &spec = record.spec;
    RunSummary s;
    s.run_id = spec.run_id;
    s.domain = to_string(spec.domain.kind);
    try {
        s.params = spec.domain.params();
    } catch (const std::exception &) {
        s.params = "invalid";
    }
    s.eval = to_string(spec.evaluator.kind);
    s.tiebreak = to_string(spec.evaluator.tiebreak);
    s.heur = to_string(spec.heuristic);
    s.prune_heur = to_string(spec.prune_heuristic);
    s.lookahead = spec.lookahead;
    s.variant = spec.variant();
    s.weight = format_rational(spec.evaluator.weight);
    s.max_cost = record.max_cost;
    s.plateau_tau = spec.plateau_tau ? format_rational(*spec.plateau_tau) : "";
    s.oracle_cost = record.oracle_cost;
    if (!record.error.empty()) {
        s.status = "error";
        s.error = record.error;
        return s;
    }
    const SearchOutcome &outcome = record.outcome;
    s.stats = outcome.stats;
    s.status = to_string(outcome.status);
    if (!outcome.events.empty()) {
        s.first_cost = outcome.events.front().cost;
        s.first_size = outcome.events.front().size;
    }
    if (outcome.incumbent.plan) {
        s.best_cost = outcome.incumbent.plan->total_cost;
        s.best_size = outcome.incumbent.plan->length;
    }
    for (std::size_t i = 0; i < outcome.events.size(); ++i) {
        const SolutionEvent &e = outcome.events[i];
        s.events.push_back({i, e.expansions_at_event, e.wall_ms_at_event, e.cost, e.size});
    }
    return s;
}

std::vector<RunSummary> summarize(const std::vector<RunRecord> &records) {
    std::vector<RunSummary> out;
    out.reserve(records.size());
    for (const RunRecord &record : records)
        out.push_back(summarize(record));
    return out;
}

std::string csv_line(const std::vector<std::string> &fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            line += ',';
        const std::string &field = fields[i];
        if (field.find_first_of(",\"\n\r") == std::string::npos) {
            line += field;
            continue;
        }
        line += '"';
        for (char c : field) {
            if (c == '"')
                line += '"';
            line += c;
        }
        line += '"';
    }
    line += '\n';
    return line;
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else if (c != '\r') {
            field += c;
            any = true;
        }
    }
    if (quoted)
        throw ReportError("unterminated quoted CSV field");
    if (any) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string runs_csv(const std::vector<RunSummary> &runs) {
    std::string out = csv_line(kRunColumns);
    for (const RunSummary &r : runs) {
        const SearchStats &st = r.stats;
        out += csv_line({r.run_id, r.domain, r.params, r.eval, r.tiebreak, r.heur,
                         r.prune_heur, r.lookahead ? "1" : "0", std::to_string(st.expansions),
                         std::to_string(st.generations), std::to_string(st.reopenings),
                         std::to_string(st.duplicates_pruned), std::to_string(st.bound_prunes),
                         std::to_string(st.heuristic_calls), opt(st.discovery_expansions),
                         opt(st.discovery_ms), opt(r.first_cost), opt(r.first_size),
                         opt(r.best_cost), opt(r.best_size), r.status, opt(r.oracle_cost),
                         std::to_string(st.wall_ms), opt(st.proof_expansions),
                         std::to_string(st.goal_tests),
                         std::to_string(st.lookahead_invocations), r.variant, r.weight,
                         std::to_string(r.max_cost), r.plateau_tau, r.error});
    }
    return out;
}

std::string events_csv(const std::vector<RunSummary> &runs) {
    std::string out = csv_line(kEventColumns);
    for (const RunSummary &r : runs)
        for (const EventRow &e : r.events)
            out += csv_line({r.run_id, std::to_string(e.index), std::to_string(e.expansions),
                             std::to_string(e.ms), std::to_string(e.cost),
                             std::to_string(e.size)});
    return out;
}

std::vector<RunSummary> parse_runs(const std::string &runs_text, const std::string &events_text) {
    std::vector<std::vector<std::string>> rows = parse_csv(runs_text);
    if (rows.empty())
        throw ReportError("runs.csv: empty file");
    auto col = header_index(rows[0], kRunColumns, "runs.csv");
    std::vector<RunSummary> runs;
    std::map<std::string, std::size_t> by_id;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::vector<std::string> &row = rows[i];
        if (row.size() != rows[0].size())
            throw ReportError("runs.csv row " + std::to_string(i + 1) + ": expected " +
                              std::to_string(rows[0].size()) + " fields, got " +
                              std::to_string(row.size()));
        auto get = [&](const std::string &name) -> const std::string & { return row[col[name]]; };
        auto num = [&](const std::string &name) {
            return static_cast<std::uint64_t>(parse_req(get(name), name));
        };
        auto unum = [&](const std::string &name) -> std::optional<std::uint64_t> {
            auto v = parse_opt(get(name), name);
            if (!v)
                return std::nullopt;
            return static_cast<std::uint64_t>(*v);
        };
        RunSummary r;
        r.run_id = get("run_id");
        r.domain = get("domain");
        r.params = get("params");
        r.eval = get("eval");
        r.tiebreak = get("tiebreak");
        r.heur = get("heur");
        r.prune_heur = get("prune_heur");
        r.lookahead = get("lookahead") == "1";
        r.variant = get("variant");
        r.weight = get("weight");
        r.max_cost = parse_req(get("max_cost"), "max_cost");
        r.plateau_tau = get("plateau_tau");
        r.stats.expansions = num("expansions");
        r.stats.generations = num("generations");
        r.stats.reopenings = num("reopenings");
        r.stats.duplicates_pruned = num("duplicates_pruned");
        r.stats.bound_prunes = num("bound_prunes");
        r.stats.heuristic_calls = num("heuristic_calls");
        r.stats.discovery_expansions = unum("discovery_expansions");
        r.stats.discovery_ms = unum("discovery_ms");
        r.stats.wall_ms = num("wall_ms");
        r.stats.proof_expansions = unum("proof_expansions");
        r.stats.goal_tests = num("goal_tests");
        r.stats.lookahead_invocations = num("lookahead_invocations");
        r.first_cost = parse_opt(get("first_cost"), "first_cost");
        r.first_size = parse_opt(get("first_size"), "first_size");
        r.best_cost = parse_opt(get("best_cost"), "best_cost");
        r.best_size = parse_opt(get("best_size"), "best_size");
        r.status = get("status");
        r.oracle_cost = parse_opt(get("oracle_cost"), "oracle_cost");
        r.error = get("error");
        if (!by_id.emplace(r.run_id, runs.size()).second)
            throw ReportError("runs.csv: duplicate run id '" + r.run_id + "'");
        runs.push_back(std::move(r));
    }
    if (events_text.empty())
        return runs;
    std::vector<std::vector<std::string>> events = parse_csv(events_text);
    if (events.empty())
        return runs;
    auto ecol = header_index(events[0], kEventColumns, "events.csv");
    for (std::size_t i = 1; i < events.size(); ++i) {
        const std::vector<std::string> &row = events[i];
        if (row.size() != events[0].size())
            throw ReportError("events.csv row " + std::to_string(i + 1) +
                              ": wrong number of fields");
        auto it = by_id.find(row[ecol["run_id"]]);
        if (it == by_id.end())
            throw ReportError("events.csv: unknown run id '" + row[ecol["run_id"]] + "'");
        EventRow e;
        e.index = static_cast<std::uint64_t>(parse_req(row[ecol["event_index"]], "event_index"));
        e.expansions = static_cast<std::uint64_t>(
            parse_req(row[ecol["expansions_at_event"]], "expansions_at_event"));
        e.ms = static_cast<std::uint64_t>(parse_req(row[ecol["ms_at_event"]], "ms_at_event"));
        e.cost = parse_req(row[ecol["cost"]], "cost");
        e.size = parse_req(row[ecol["size"]], "size");
        runs[it->second].events.push_back(e);
    }
    return runs;
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ReportError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw ReportError("error while writing '" + path + "'");
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ReportError("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_run_directory(const std::string &dir, const std::vector<RunSummary> &runs) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw ReportError("cannot create directory '" + dir + "': " + ec.message());
    write_text_file((fs::path(dir) / "runs.csv").string(), runs_csv(runs));
    write_text_file((fs::path(dir) / "events.csv").string(), events_csv(runs));
}

std::vector<RunSummary> load_runs(const std::vector<std::string> &paths) {
    std::vector<RunSummary> all;
    for (const std::string &path : paths) {
        fs::path runs_path = fs::is_directory(path) ? fs::path(path) / "runs.csv" : fs::path(path);
        fs::path events_path = runs_path.parent_path() / "events.csv";
        std::string events_text =
            fs::exists(events_path) ? read_text_file(events_path.string()) : std::string();
        std::vector<RunSummary> runs;
        try {
            runs = parse_runs(read_text_file(runs_path.string()), events_text);
        } catch (const ReportError &e) {
            throw ReportError(runs_path.string() + ": " + e.what());
        }
        for (RunSummary &r : runs)
            all.push_back(std::move(r));
    }
    return all;
}

} // namespace surrogate
