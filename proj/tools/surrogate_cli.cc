#include "surrogate/bench.h"
#include "surrogate/matrix_config.h"
#include "surrogate/oracle.h"
#include "surrogate/report.h"
#include "surrogate/scoring.h"

#include "CLI11.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace surrogate;

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kCapExceeded = 3, kInvariantViolation = 4 };

// Flags handled separately from the generic key=value vocabulary.
const std::vector<std::string> kSwitchKeys = {"lookahead", "wall-clock", "oracle"};

struct SpecOptions {
    std::map<std::string, std::string> values;
    bool lookahead = false;
    bool no_wall_clock = false;
    bool no_oracle = false;
    std::string id = "run";

    void attach(CLI::App *cmd, bool search_options) {
        for (const std::string &key : setting_keys()) {
            if (std::find(kSwitchKeys.begin(), kSwitchKeys.end(), key) != kSwitchKeys.end())
                continue;
            cmd->add_option("--" + key, values[key]);
        }
        if (search_options) {
            cmd->add_option("--id", id, "Run id written to the CSV files");
            cmd->add_flag("--lookahead", lookahead, "Enable usefulness lookahead on plateaus");
            cmd->add_flag("--no-wall-clock", no_wall_clock,
                          "Report every millisecond value as 0 (byte-stable output)");
            cmd->add_flag("--no-oracle", no_oracle, "Skip the Dijkstra oracle");
        }
    }

    RunSpec build() const {
        RunSpec spec;
        spec.run_id = id;
        for (const auto &[key, value] : values)
            if (!value.empty())
                apply_setting(spec, key, value);
        spec.lookahead = lookahead;
        spec.record_wall_clock = !no_wall_clock;
        spec.with_oracle = !no_oracle;
        return spec;
    }
};

int report_invariants(const std::vector<RunRecord> &records) {
    std::vector<std::string> problems = oracle_disagreements(records);
    for (const std::string &p : problems)
        std::cerr << "invariant violation: " << p << "\n";
    return problems.empty() ? kOk : kInvariantViolation;
}

void print_record(const RunRecord &record) {
    const RunSummary s = summarize(record);
    std::cout << s.run_id << ": " << s.status;
    if (!s.error.empty()) {
        std::cout << " (" << s.error << ")\n";
        return;
    }
    if (s.best_cost)
        std::cout << " cost=" << *s.best_cost << " size=" << *s.best_size;
    std::cout << " expansions=" << s.stats.expansions;
    if (s.stats.discovery_expansions)
        std::cout << " discovery=" << *s.stats.discovery_expansions;
    if (s.oracle_cost)
        std::cout << " oracle=" << *s.oracle_cost;
    std::cout << "\n";
}

int cmd_run(const SpecOptions &options, const std::string &out) {
    RunSpec spec = options.build();
    check_spec(spec);
    std::vector<RunRecord> records = run_matrix_serial({spec});
    print_record(records[0]);
    if (!records[0].error.empty()) {
        std::cerr << "error: " << records[0].error << "\n";
        return kInvariantViolation;
    }
    write_run_directory(out, summarize(records));
    return report_invariants(records);
}

int cmd_matrix(const std::string &config, const std::string &out, int jobs, bool serial) {
    std::vector<RunSpec> specs = load_matrix_config(config);
    for (const RunSpec &spec : specs) {
        try {
            check_spec(spec);
        } catch (const std::exception &e) {
            throw ConfigError("run '" + spec.run_id + "': " + e.what());
        }
    }
    std::vector<RunRecord> records = serial ? run_matrix_serial(specs) : run_matrix(specs, jobs);
    for (const RunRecord &record : records)
        print_record(record);
    write_run_directory(out, summarize(records));
    return report_invariants(records);
}

int cmd_oracle(const SpecOptions &options, std::uint64_t cap, const std::string &out) {
    RunSpec spec = options.build();
    Instance instance = build_instance(spec.domain);
    OracleTable table;
    try {
        table = dijkstra_oracle(*instance.problem, cap);
    } catch (const OracleCapExceeded &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCapExceeded;
    }
    std::string csv = csv_line({"state", "cost", "size", "is_goal"});
    for (const auto &[state, entry] : table.sorted())
        csv += csv_line({state.to_string(), std::to_string(entry.cost),
                         std::to_string(entry.size),
                         instance.problem->is_goal(state) ? "1" : "0"});
    write_text_file(out, csv);
    std::cout << "states=" << table.size();
    if (table.goal_optimum())
        std::cout << " optimum_cost=" << table.goal_optimum()->cost
                  << " optimum_size=" << table.goal_optimum()->size;
    else
        std::cout << " unsolvable";
    std::cout << "\n";
    return kOk;
}

int cmd_score(const std::vector<std::string> &records, const std::string &reference,
              const std::string &out, const std::string &markdown) {
    ScoreReport report = ipc_score(load_runs(records), parse_reference_kind(reference));
    write_text_file(out, scores_csv(report));
    if (!markdown.empty())
        write_text_file(markdown, scores_markdown(report));
    for (const VariantScore &v : report.variants)
        std::cout << v.variant << ": score=" << v.score << " coverage=" << v.coverage
                  << " rank=" << v.rank << "\n";
    return kOk;
}

int cmd_curve(const std::vector<std::string> &records, const std::string &axis,
              const std::string &instants, const std::string &reference,
              const std::string &out, const std::string &crossovers) {
    AnytimeCurve curve = anytime_curve(load_runs(records), parse_instants(instants),
                                       parse_curve_axis(axis), parse_reference_kind(reference));
    write_text_file(out, curve_csv(curve));
    if (!crossovers.empty())
        write_text_file(crossovers, crossovers_csv(curve));
    for (const Crossover &c : curve.crossovers)
        std::cout << "crossover " << c.variant_a << " vs " << c.variant_b << " at "
                  << c.instant << ": " << c.leader << " leads\n";
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Anytime best-first branch and bound with surrogate evaluators"};
    app.require_subcommand(1);

    SpecOptions run_options;
    std::string run_out;
    CLI::App *run = app.add_subcommand("run", "Execute one search run");
    run_options.attach(run, true);
    run->add_option("--out", run_out, "Output directory for runs.csv and events.csv")
        ->required();

    std::string matrix_config, matrix_out;
    int jobs = 0;
    bool serial = false;
    CLI::App *matrix = app.add_subcommand("matrix", "Execute a matrix of runs");
    matrix->add_option("--config", matrix_config)->required();
    matrix->add_option("--out", matrix_out, "Output directory")->required();
    matrix->add_option("--jobs", jobs, "Worker threads (default: all cores)");
    matrix->add_flag("--serial", serial, "Use the serial reference executor");

    SpecOptions oracle_options;
    std::uint64_t state_cap = 100000;
    std::string oracle_out;
    CLI::App *oracle = app.add_subcommand("oracle", "Enumerate optimal costs by Dijkstra");
    oracle_options.attach(oracle, false);
    oracle->add_option("--state-cap", state_cap);
    oracle->add_option("--out", oracle_out)->required();

    std::vector<std::string> score_records;
    std::string reference = "oracle", score_out, markdown;
    CLI::App *score = app.add_subcommand("score", "IPC 2008 quality scores");
    score->add_option("--records", score_records)->required();
    score->add_option("--reference", reference)->check(CLI::IsMember({"oracle", "best"}));
    score->add_option("--out", score_out)->required();
    score->add_option("--markdown", markdown);

    std::vector<std::string> curve_records;
    std::string axis = "expansions", instants, curve_reference = "oracle", curve_out,
                crossovers;
    CLI::App *curve = app.add_subcommand("curve", "Anytime quality curves");
    curve->add_option("--records", curve_records)->required();
    curve->add_option("--axis", axis)->check(CLI::IsMember({"expansions", "ms"}));
    curve->add_option("--instants", instants, "Comma-separated ascending list")->required();
    curve->add_option("--reference", curve_reference)->check(CLI::IsMember({"oracle", "best"}));
    curve->add_option("--out", curve_out)->required();
    curve->add_option("--crossovers", crossovers, "Also write crossover instants here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run)
            return cmd_run(run_options, run_out);
        if (*matrix)
            return cmd_matrix(matrix_config, matrix_out, jobs, serial);
        if (*oracle)
            return cmd_oracle(oracle_options, state_cap, oracle_out);
        if (*score)
            return cmd_score(score_records, reference, score_out, markdown);
        if (*curve)
            return cmd_curve(curve_records, axis, instants, curve_reference, curve_out,
                             crossovers);
    } catch (const OracleCapExceeded &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
    return kOk;
}
