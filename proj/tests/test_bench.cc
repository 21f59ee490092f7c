#include "doctest.h"

#include "surrogate/bench.h"
#include "surrogate/matrix_config.h"
#include "surrogate/report.h"
#include "surrogate/scoring.h"

#include <filesystem>

using namespace surrogate;

namespace {

RunSpec cycle_spec(const std::string &id, const std::string &eval, int k, const std::string &goal) {
    RunSpec spec;
    spec.run_id = id;
    apply_setting(spec, "domain", "cycle");
    apply_setting(spec, "k", std::to_string(k));
    apply_setting(spec, "goal", goal);
    apply_setting(spec, "eval", eval);
    spec.record_wall_clock = false;
    return spec;
}

RunSummary summary(const std::string &run, const std::string &variant, const std::string &params,
                   std::optional<Cost> best, std::optional<Cost> oracle = std::nullopt) {
    RunSummary s;
    s.run_id = run;
    s.domain = "cycle";
    s.params = params;
    s.variant = variant;
    s.best_cost = best;
    s.oracle_cost = oracle;
    if (best)
        s.events.push_back({0, 10, 0, *best, 1});
    return s;
}

std::filesystem::path scratch_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("surrogate_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("settings build run specs") {
    RunSpec spec = cycle_spec("a", "size", 14, "-2");
    CHECK(spec.domain.kind == DomainKind::Cycle);
    CHECK(spec.domain.params() == "k=14;goal=16382;wrap=8192");
    CHECK(spec.domain.problem_id() == "cycle:k=14;goal=16382;wrap=8192");
    CHECK(spec.variant() == "size/zero");

    apply_setting(spec, "eval", "wcost");
    apply_setting(spec, "weight", "3/2");
    apply_setting(spec, "tiebreak", "cost");
    apply_setting(spec, "heur", "exact");
    apply_setting(spec, "prune-heur", "exact");
    CHECK(spec.variant() == "wcost(w=3/2)+tb-cost/exact/prune-exact");

    CHECK_THROWS_AS(apply_setting(spec, "colour", "red"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(spec, "k", "many"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(spec, "eval", "astar"), std::invalid_argument);
    CHECK(std::find(setting_keys().begin(), setting_keys().end(), "max-expansions") !=
          setting_keys().end());

    RunSpec travel;
    apply_setting(travel, "domain", "rendezvous");
    apply_setting(travel, "passengers", "2");
    apply_setting(travel, "passenger-start", "0,0");
    CHECK(travel.domain.params() == "passengers=2;planes=1;passenger_start=0,0");
    apply_setting(travel, "domain", "chain");
    apply_setting(travel, "chain-length", "3");
    apply_setting(travel, "passenger-start", "");
    CHECK(travel.domain.params().starts_with("m=3;passengers=2;planes=2"));
}

TEST_CASE("spec checks") {
    RunSpec spec = cycle_spec("a", "cost", 4, "14");
    CHECK_NOTHROW(check_spec(spec));
    spec.prune_heuristic = HeuristicKind::RpCost;
    CHECK_THROWS(check_spec(spec));
    spec.prune_heuristic = HeuristicKind::Zero;
    spec.heuristic = HeuristicKind::RpCost;
    CHECK_THROWS(check_spec(spec));
    spec.heuristic = HeuristicKind::Zero;
    spec.lookahead = true;
    CHECK_THROWS(check_spec(spec));

    RunSpec travel;
    apply_setting(travel, "domain", "rendezvous");
    apply_setting(travel, "heur", "exact");
    CHECK_THROWS(check_spec(travel));
    apply_setting(travel, "heur", "rp-cost");
    apply_setting(travel, "lookahead", "true");
    CHECK_NOTHROW(check_spec(travel));
}

TEST_CASE("execute_run and oracle agreement") {
    RunRecord record = execute_run(cycle_spec("a", "size", 4, "-2"));
    CHECK(record.error.empty());
    CHECK(record.solved());
    CHECK(record.oracle_cost == 9);
    CHECK(record.outcome.incumbent.bound_cost == 9);
    CHECK(record.max_cost == 8);
    CHECK(oracle_disagreements({record}).empty());

    RunRecord wrong = record;
    wrong.oracle_cost = 5;
    CHECK(oracle_disagreements({wrong}).size() == 1);

    RunSpec broken = cycle_spec("b", "cost", 4, "3");
    broken.domain.kind = DomainKind::Taskfile;
    broken.domain.file = "/nonexistent/task.txt";
    RunRecord failed = execute_run(broken);
    CHECK_FALSE(failed.error.empty());
    CHECK_FALSE(failed.solved());

    RunSpec capped = cycle_spec("c", "cost", 12, "5");
    capped.oracle_cap = 100;
    CHECK_FALSE(execute_run(capped).oracle_cost);
}

TEST_CASE("run_matrix keeps spec order and equals the serial executor") {
    CHECK(run_matrix({}).empty());
    std::vector<RunSpec> specs;
    for (const char *eval : {"cost", "size", "cs-size", "hybrid"})
        for (const char *goal : {"-2", "100", "2048"})
            specs.push_back(cycle_spec(std::string(eval) + goal, eval, 12, goal));
    specs.push_back(specs.front());
    std::vector<RunRecord> parallel = run_matrix(specs, 4);
    std::vector<RunRecord> serial = run_matrix_serial(specs);
    REQUIRE(parallel.size() == specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        CHECK(parallel[i].spec.run_id == specs[i].run_id);
        CHECK(parallel[i].outcome.stats == serial[i].outcome.stats);
        CHECK(parallel[i].oracle_cost == serial[i].oracle_cost);
    }
    CHECK(parallel.front().outcome.stats == parallel.back().outcome.stats);
    CHECK(runs_csv(summarize(parallel)) == runs_csv(summarize(serial)));
    CHECK(events_csv(summarize(parallel)) == events_csv(summarize(serial)));

    // Cost and size agree on the final cost when both prove optimality.
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(parallel[i].outcome.status == SearchStatus::ProvedOptimal);
        CHECK(parallel[i + 3].outcome.status == SearchStatus::ProvedOptimal);
        CHECK(parallel[i].outcome.incumbent.bound_cost ==
              parallel[i + 3].outcome.incumbent.bound_cost);
    }
    CHECK(*parallel[3].outcome.stats.discovery_expansions <
          *parallel[0].outcome.stats.discovery_expansions);
}

TEST_CASE("csv helpers") {
    CHECK(csv_line({"a", "b,c", "d\"e"}) == "a,\"b,c\",\"d\"\"e\"\n");
    auto rows = parse_csv("a,\"b,c\",\"d\"\"e\"\nx,,z\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"a", "b,c", "d\"e"});
    CHECK(rows[1] == std::vector<std::string>{"x", "", "z"});
}

TEST_CASE("runs.csv schema, determinism and round trip") {
    CHECK(runs_csv({}).starts_with(
        "run_id,domain,params,eval,tiebreak,heur,prune_heur,lookahead,expansions,generations,"
        "reopenings,duplicates_pruned,bound_prunes,heuristic_calls,discovery_expansions,"
        "discovery_ms,first_cost,first_size,best_cost,best_size,status,oracle_cost,wall_ms"));
    const std::string header_only = runs_csv({});
    CHECK(std::count(header_only.begin(), header_only.end(), '\n') == 1);
    CHECK(events_csv({}) == "run_id,event_index,expansions_at_event,ms_at_event,cost,size\n");

    std::vector<RunSpec> specs = {cycle_spec("x", "cost", 6, "-2"),
                                  cycle_spec("y", "size", 6, "-2")};
    std::vector<RunSummary> runs = summarize(run_matrix_serial(specs));
    const std::string text = runs_csv(runs);
    CHECK(text == runs_csv(summarize(run_matrix_serial(specs))));
    std::vector<RunSummary> back = parse_runs(text, events_csv(runs));
    REQUIRE(back.size() == runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i)
        CHECK(back[i] == runs[i]);

    auto dir = scratch_dir("runs");
    write_run_directory(dir.string(), runs);
    CHECK(load_runs({dir.string()}) == runs);
    CHECK(load_runs({(dir / "runs.csv").string()}) == runs);
    CHECK_THROWS(load_runs({(dir / "missing").string()}));
    CHECK_THROWS_AS(parse_runs("not,a,header\n", ""), ReportError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("IPC 2008 quality scores") {
    std::vector<RunSummary> runs = {
        summary("a1", "A", "p=1", 10, 10), summary("b1", "B", "p=1", 20, 10),
        summary("c1", "C", "p=1", std::nullopt, 10), summary("a2", "A", "p=2", 8),
        summary("b2", "B", "p=2", 4), summary("c2", "C", "p=2", 4)};
    ScoreReport report = ipc_score(runs, ReferenceKind::Oracle);
    REQUIRE(report.runs.size() == 6);
    CHECK(report.runs[0].quality == doctest::Approx(1.0));
    CHECK(report.runs[1].quality == doctest::Approx(0.5));
    CHECK(report.runs[2].quality == 0.0);
    CHECK_FALSE(report.runs[2].solved);
    // No oracle for p=2: the best run is the reference.
    CHECK(report.runs[3].quality == doctest::Approx(0.5));
    CHECK(report.runs[4].quality == doctest::Approx(1.0));
    CHECK(report.problem_count == 2);
    CHECK(report.variants[0].score == doctest::Approx(1.5));
    CHECK(report.variants[1].score == doctest::Approx(1.5));
    CHECK(report.variants[2].score == doctest::Approx(1.0));
    CHECK(report.variants[2].coverage == 1);
    CHECK(report.variants[0].percent == doctest::Approx(75.0));
    CHECK(report.variants[0].rank == 1);
    CHECK(report.variants[1].rank == 1);
    CHECK(report.variants[2].rank == 2);
    for (const VariantScore &v : report.variants)
        CHECK(v.score <= report.problem_count);

    CHECK(reference_cost(runs, "cycle:p=1", ReferenceKind::Oracle) == 10);
    CHECK(reference_cost(runs, "cycle:p=1", ReferenceKind::BestOfRuns) == 10);
    CHECK(reference_cost(runs, "cycle:p=2", ReferenceKind::Oracle) == 4);

    const std::string csv = scores_csv(report);
    CHECK(csv.starts_with("problem_id,run_id,quality_ipc2008_oracle,coverage_flag\n"));
    CHECK(csv.find("cycle:p=1,b1,0.500000,1\n") != std::string::npos);
    CHECK(csv.find("AGGREGATE,C,1.000000,1\n") != std::string::npos);
    CHECK(csv == scores_csv(ipc_score(runs, ReferenceKind::Oracle)));
    CHECK(scores_markdown(report).find("| A | 1.500000 | 75.000000% | 2 | 1 |") !=
          std::string::npos);

    ScoreReport empty = ipc_score({}, ReferenceKind::BestOfRuns);
    CHECK(scores_csv(empty) == "problem_id,run_id,quality_ipc2008_best,coverage_flag\n");
}

TEST_CASE("property: adding a run never lowers another's oracle-referenced quality") {
    std::vector<RunSummary> runs = {summary("a", "A", "p", 12, 10),
                                    summary("b", "B", "p", 15, 10)};
    ScoreReport before = ipc_score(runs, ReferenceKind::Oracle);
    runs.push_back(summary("c", "C", "p", 10, 10));
    ScoreReport after = ipc_score(runs, ReferenceKind::Oracle);
    CHECK(after.runs[0].quality >= before.runs[0].quality);
    CHECK(after.runs[1].quality >= before.runs[1].quality);
}

TEST_CASE("dense ranks share the lower rank") {
    CHECK(dense_ranks({0.9, 0.8, 0.8, 0.7, 0.7}) == std::vector<int>{1, 2, 2, 3, 3});
    CHECK(dense_ranks({4.0, 3.0, 2.0, 1.0, 1.0}) == std::vector<int>{1, 2, 3, 4, 4});
    CHECK(dense_ranks({1.0, 3.0, 3.0 + 1e-12}) == std::vector<int>{2, 1, 1});
    CHECK(dense_ranks({}).empty());
}

TEST_CASE("anytime curves") {
    RunSummary a = summary("a", "A", "p", 10, 10);
    a.events = {{0, 5, 1, 20, 1}, {1, 50, 9, 10, 2}};
    RunSummary b = summary("b", "B", "p", 12, 10);
    b.events = {{0, 20, 2, 12, 3}};
    AnytimeCurve curve = anytime_curve({a, b}, {1, 10, 30, 100}, CurveAxis::Expansions);
    REQUIRE(curve.variants == std::vector<std::string>{"A", "B"});
    CHECK(curve.scores[0][0] == 0.0);
    CHECK(curve.scores[0][1] == doctest::Approx(0.5));
    CHECK(curve.scores[1][1] == 0.0);
    CHECK(curve.scores[1][2] == doctest::Approx(10.0 / 12.0));
    CHECK(curve.scores[0][3] == doctest::Approx(1.0));
    REQUIRE(curve.crossovers.size() == 2);
    CHECK(curve.crossovers[0].instant == 30);
    CHECK(curve.crossovers[0].leader == "B");
    CHECK(curve.crossovers[1].instant == 100);
    CHECK(curve.crossovers[1].leader == "A");
    for (const auto &series : curve.run_quality)
        for (std::size_t i = 1; i < series.size(); ++i)
            CHECK(series[i] >= series[i - 1]);

    AnytimeCurve by_ms = anytime_curve({a, b}, {1, 2, 9}, CurveAxis::Ms);
    CHECK(by_ms.scores[0][0] == doctest::Approx(0.5));
    CHECK(by_ms.scores[1][1] == doctest::Approx(10.0 / 12.0));

    CHECK(curve_csv(curve).starts_with("expansions,variant,score\n1,A,0.000000\n"));
    CHECK(crossovers_csv(curve).find("A,B,30,B\n") != std::string::npos);
    CHECK_THROWS_AS(anytime_curve({a}, {5, 5}, CurveAxis::Expansions), std::invalid_argument);
    CHECK(parse_instants("1,10,100") == std::vector<std::uint64_t>{1, 10, 100});
    CHECK_THROWS_AS(parse_instants("1,x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_instants(""), std::invalid_argument);
}

TEST_CASE("matrix configuration") {
    const std::string text =
        "# sweep\n"
        "defaults domain=cycle k=6 wall-clock=false\n"
        "  max-expansions=1000\n"
        "run first eval=size goal=-2\n"
        "run\n"
        "  eval=cost goal=-2 # trailing comment\n"
        "defaults k=5\n"
        "run third eval=cost goal=3\n";
    std::vector<RunSpec> specs = parse_matrix_config(text);
    REQUIRE(specs.size() == 3);
    CHECK(specs[0].run_id == "first");
    CHECK(specs[1].run_id == "run2");
    CHECK(specs[2].run_id == "third");
    CHECK(specs[0].evaluator.kind == EvaluatorKind::Size);
    CHECK(specs[1].evaluator.kind == EvaluatorKind::Cost);
    CHECK(specs[0].domain.cycle.k == 6);
    CHECK(specs[2].domain.cycle.k == 5);
    CHECK(specs[1].limits.max_expansions == 1000u);
    CHECK_FALSE(specs[0].record_wall_clock);

    auto error_of = [](const std::string &bad) -> std::string {
        try {
            parse_matrix_config(bad);
        } catch (const ConfigError &e) {
            return e.what();
        }
        return "";
    };
    CHECK(error_of("run a domain=cycle\nrun a domain=cycle\n").starts_with("line 2: "));
    CHECK(error_of("run a colour=red\n").starts_with("line 1: "));
    CHECK(error_of("k=4\n").starts_with("line 1: "));
    CHECK(error_of("run a eval\n").starts_with("line 1: "));
    CHECK_THROWS_AS(load_matrix_config("/nonexistent/matrix.cfg"), ConfigError);
}
